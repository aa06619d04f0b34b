#pragma once

// Rouquier complexes for 2- and 3-strand braids, the Hochschild bicomplex,
// and reduced triply graded link homology Poincare series. The complex is
// never minimized: each crossing contributes its two-term complex and the
// homology is computed termwise (Hochschild first, then the Rouquier
// direction) per internal degree.

#include <set>

#include "dsb/ext.hpp"

namespace dsb {

struct BraidWord {
  int strands = 2;
  std::vector<int> gens;  // +-1, +-2

  static BraidWord parse(int strands, const std::string& s) {
    BraidWord b;
    b.strands = strands;
    std::istringstream is(s);
    int g;
    while (is >> g) b.gens.push_back(g);
    for (int v : b.gens) {
      int a = v < 0 ? -v : v;
      if (a < 1 || a >= strands)
        throw std::invalid_argument("braid: generator index out of range");
    }
    return b;
  }
  int writhe() const {
    int w = 0;
    for (int g : gens) w += g > 0 ? 1 : -1;
    return w;
  }
};

// counit at word position p: BS(w) -> BS(w minus p)(1), raw degree +1
inline BimodElem counit_at_slot(const BimodElem& x, size_t p) {
  const Realization& R = *x.realization();
  const Word& w = x.word();
  Word nw = w;
  nw.erase(nw.begin() + long(p));
  BimodElem out(&R, nw);
  for (auto& [mask, coeff] : x.coords()) {
    std::vector<Poly> factors(w.size() + 1, Poly(R.scalars().one()));
    for (size_t q = 0; q < w.size(); q++)
      if (mask >> q & 1) factors[q] = R.alpha(w[q]);
    factors[w.size()] = coeff;
    factors[p + 1] = factors[p] * factors[p + 1];
    factors.erase(factors.begin() + long(p));
    out = out + force_tensor(R, nw, factors);
  }
  return out;
}

// unit at word position p: BS(w) -> BS(w plus letter c at p)(-1)
inline BimodElem unit_at_slot(const BimodElem& x, size_t p, Color c) {
  const Realization& R = *x.realization();
  const Word& w = x.word();
  Word nw = w;
  nw.insert(nw.begin() + long(p), c);
  Poly rho = R.rho(c), crho = R.reflect(c, rho);
  BimodElem out(&R, nw);
  for (auto& [mask, coeff] : x.coords()) {
    std::vector<Poly> factors(w.size() + 1, Poly(R.scalars().one()));
    for (size_t q = 0; q < w.size(); q++)
      if (mask >> q & 1) factors[q] = R.alpha(w[q]);
    factors[w.size()] = coeff;
    // insert (rho (x) 1 - 1 (x) c(rho)) at position p
    {
      std::vector<Poly> f1 = factors;
      f1[p] = f1[p] * rho;
      f1.insert(f1.begin() + long(p) + 1, Poly(R.scalars().one()));
      out = out + force_tensor(R, nw, f1);
    }
    {
      std::vector<Poly> f2 = factors;
      f2.insert(f2.begin() + long(p) + 1, crho);
      out = out - force_tensor(R, nw, f2);
    }
  }
  return out;
}

struct RouquierComplex {
  const Realization* R = nullptr;
  struct Term {
    Word w;
    int shift = 0;  // internal shift: display = raw - shift
    int j = 0;      // homological degree
  };
  struct Edge {
    size_t from = 0, to = 0;
    std::function<BimodElem(const BimodElem&)> map;  // raw degree +1
  };
  std::vector<Term> terms;
  std::vector<Edge> edges;

  int jmin() const {
    int m = 0;
    for (auto& t : terms) m = std::min(m, t.j);
    return m;
  }
  int jmax() const {
    int m = 0;
    for (auto& t : terms) m = std::max(m, t.j);
    return m;
  }

  static RouquierComplex identity(const Realization& R) {
    RouquierComplex C;
    C.R = &R;
    C.terms.push_back({{}, 0, 0});
    return C;
  }

  static RouquierComplex of_braid(const Realization& R, const BraidWord& b) {
    RouquierComplex C;
    C.R = &R;
    size_t k = b.gens.size();
    if (k > 20) throw std::invalid_argument("braid too long");
    std::vector<size_t> index(size_t(1) << k);
    for (uint32_t bits = 0; bits < (uint32_t(1) << k); bits++) {
      Term t;
      for (size_t i = 0; i < k; i++) {
        bool removed = bits >> i & 1;
        Color c = (std::abs(b.gens[i]) == 1) ? S : T;
        bool pos = b.gens[i] > 0;
        if (!removed) t.w.push_back(c);
        if (removed) {
          t.shift += pos ? 1 : -1;
          t.j += pos ? 1 : -1;
        }
      }
      index[bits] = C.terms.size();
      C.terms.push_back(std::move(t));
    }
    for (uint32_t bits = 0; bits < (uint32_t(1) << k); bits++) {
      for (size_t i = 0; i < k; i++) {
        bool pos = b.gens[i] > 0;
        Color c = (std::abs(b.gens[i]) == 1) ? S : T;
        // positive: B -> R(1) at bit 0 -> 1; negative: R(-1) -> B at
        // bit 1 -> 0; both raise j by one
        uint32_t from_bits, to_bits;
        if (pos) {
          if (bits >> i & 1) continue;
          from_bits = bits;
          to_bits = bits | (uint32_t(1) << i);
        } else {
          if (!(bits >> i & 1)) continue;
          from_bits = bits;
          to_bits = bits & ~(uint32_t(1) << i);
        }
        // word slot of braid position i in the source term
        size_t p = 0;
        for (size_t q = 0; q < i; q++)
          if (!(from_bits >> q & 1)) p++;
        int sign = __builtin_popcount(from_bits & ((uint32_t(1) << i) - 1));
        // homological-degree parity of the factors left of i
        int par = 0;
        for (size_t q = 0; q < i; q++)
          if (from_bits >> q & 1) par ^= 1;
        (void)sign;
        bool neg = par;
        Edge e;
        e.from = index[from_bits];
        e.to = index[to_bits];
        if (pos) {
          e.map = [p, neg](const BimodElem& x) {
            BimodElem y = counit_at_slot(x, p);
            return neg ? -y : y;
          };
        } else {
          e.map = [p, c, neg](const BimodElem& x) {
            BimodElem y = unit_at_slot(x, p, c);
            return neg ? -y : y;
          };
        }
        C.edges.push_back(std::move(e));
      }
    }
    C.check_d2();
    return C;
  }

  // the minimized two-term-squared complex B_s(-1) --d_s--> B_s(1) --eps--> R(2)
  static RouquierComplex fs_squared_minimized(const Realization& R) {
    RouquierComplex C;
    C.R = &R;
    Word ws = parse_word("s");
    C.terms.push_back({ws, -1, 0});
    C.terms.push_back({ws, 1, 1});
    C.terms.push_back({{}, 2, 2});
    Poly al = R.alpha(S);
    // d_s = (alpha (x) 1 - 1 (x) alpha)/2 as a ring element of B_s
    BimodElem ds(&R, ws);
    ds.add(1, Poly(R.scalars().rat(1, 2)));
    ds.add(0, al * R.scalars().rat(-1, 2));
    C.edges.push_back({0, 1, [ds](const BimodElem& x) { return bs_mul(ds, x); }});
    C.edges.push_back({1, 2, [](const BimodElem& x) {
                         return counit_at_slot(x, 0);
                       }});
    C.check_d2();
    return C;
  }

  void check_d2() const {
    for (size_t t = 0; t < terms.size(); t++) {
      for (uint32_t e = 0; e < (uint32_t(1) << terms[t].w.size()); e++) {
        BimodElem b = basis_elem(*R, terms[t].w, e, Poly(R->scalars().one()));
        std::map<size_t, BimodElem> first;
        for (auto& ed : edges) {
          if (ed.from != t) continue;
          BimodElem img = ed.map(b);
          auto it = first.find(ed.to);
          if (it == first.end())
            first.emplace(ed.to, img);
          else
            it->second = it->second + img;
        }
        std::map<size_t, BimodElem> second;
        for (auto& [mid, val] : first)
          for (auto& ed : edges) {
            if (ed.from != mid) continue;
            BimodElem img = ed.map(val);
            auto it = second.find(ed.to);
            if (it == second.end())
              second.emplace(ed.to, img);
            else
              it->second = it->second + img;
          }
        for (auto& [to, val] : second)
          if (!val.is_zero()) throw std::logic_error("rouquier: d^2 != 0");
      }
    }
  }
};

// Poincare data of reduced triply graded homology.
struct TriSeries {
  int rank = 1;
  std::map<std::pair<int, int>, HilbertData> terms;  // (a, j) -> dims

  long dim(int a, int j, int d) const {
    auto it = terms.find({a, j});
    return it == terms.end() ? 0 : it->second.dim(d);
  }
  bool equal_on(const TriSeries& o, int lo, int hi) const {
    std::set<std::pair<int, int>> keys;
    for (auto& [k, v] : terms) keys.insert(k);
    for (auto& [k, v] : o.terms) keys.insert(k);
    for (auto& k : keys)
      for (int d = lo; d <= hi; d++)
        if (dim(k.first, k.second, d) != o.dim(k.first, k.second, d))
          return false;
    return true;
  }
  TriSeries product(const TriSeries& o, int lo, int hi) const {
    TriSeries r;
    r.rank = rank + o.rank;
    for (auto& [ka, ha] : terms)
      for (auto& [kb, hb] : o.terms) {
        HilbertData h;
        h.lo = lo;
        h.hi = hi;
        for (int d = lo; d <= hi; d++) {
          long n = 0;
          for (auto& [da, va] : ha.dims) {
            long vb = hb.dim(d - da);
            n += va * vb;
          }
          h.set(d, n);
        }
        auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
        auto it = r.terms.find(key);
        if (it == r.terms.end())
          r.terms.emplace(key, h);
        else
          it->second = it->second.plus(h);
      }
    return r;
  }
  // substitution A = alpha^2 Q^2 / T, T = -1, alpha = a^-1, Q = q:
  // coefficient of a^-2u q^{2u+d} picks up (-1)^{j+u}
  std::map<std::pair<int, int>, long> substituted(int lo, int hi) const {
    std::map<std::pair<int, int>, long> out;
    for (auto& [k, h] : terms) {
      auto [a, j] = k;
      for (auto& [d, v] : h.dims) {
        int apow = -2 * a;
        int qpow = 2 * a + d;
        long sign = ((j + a) % 2 == 0) ? 1 : -1;
        if (qpow < lo || qpow > hi) continue;
        out[{apow, qpow}] += sign * v;
        if (out[{apow, qpow}] == 0) out.erase({apow, qpow});
      }
    }
    return out;
  }
  std::string pretty() const {
    std::ostringstream os;
    bool first_a = true;
    std::map<int, std::map<int, HilbertData>> by_a;
    for (auto& [k, h] : terms)
      if (!h.dims.empty()) by_a[k.first][k.second] = h;
    for (auto& [a, js] : by_a) {
      if (!first_a) os << " + ";
      first_a = false;
      if (a == 1) os << "A*";
      if (a >= 2) os << "A^" << a << "*";
      os << "(";
      bool first_j = true;
      for (auto& [j, h] : js) {
        auto cert = free_generators(h, rank);
        if (!first_j) os << " + ";
        first_j = false;
        if (j != 0) os << "T^" << j << "*";
        if (cert.generators && !cert.generators->empty()) {
          os << "(";
          bool f = true;
          for (int g : *cert.generators) {
            if (!f) os << "+";
            f = false;
            os << "Q^" << g;
          }
          os << ")/(1-Q^2)";
          if (rank == 2) os << "^2";
        } else {
          // torsion: print the dims polynomial
          os << "[";
          bool f = true;
          for (auto& [d, v] : h.dims) {
            if (!f) os << "+";
            f = false;
            if (v != 1) os << v << "*";
            os << "Q^" << d;
          }
          os << "]";
        }
      }
      os << ")";
    }
    std::string s = os.str();
    return s.empty() ? "0" : s;
  }
};

class HomflyEngine {
 public:
  explicit HomflyEngine(const Realization& R, int jobs = 1)
      : R_(&R), jobs_(jobs) {}

  static Realization realization_for(int strands) {
    if (strands == 2) return Realization(Realm::infinite(3), 1);
    if (strands == 3) return Realization(Realm::finite(3), 2);
    throw std::invalid_argument("strands must be 2 or 3");
  }

  TriSeries hhh(const RouquierComplex& C, int D) const {
    int rk = R_->rank();
    TriSeries out;
    out.rank = rk;
    // display degrees are even; window from the lowest module degree
    int lo = 0;
    for (auto& t : C.terms)
      lo = std::min(lo, -int(t.w.size()) - t.shift - 0);
    lo -= 2;
    int hi = D - 4;
    int jmin = C.jmin(), jmax = C.jmax();
    // vertical operator images per term and variable
    std::vector<std::array<OpImages, 2>> ops(C.terms.size());
    for (size_t t = 0; t < C.terms.size(); t++) {
      ops[t][0] = OpImages::diff(*R_, C.terms[t].w, R_->alpha(S));
      if (rk == 2) ops[t][1] = OpImages::diff(*R_, C.terms[t].w, R_->alpha(T));
    }
    struct Slice {
      std::vector<SumModule> cols;                 // per a-level
      std::vector<std::vector<size_t>> term_of;     // part -> term index
    };
    // build per-(j) the SumModules for each a with parts tagged by term
    int njs = jmax - jmin + 1;
    std::vector<Slice> col(njs);
    for (int j = jmin; j <= jmax; j++) {
      Slice& sl = col[j - jmin];
      sl.cols.resize(rk + 1);
      sl.term_of.resize(rk + 1);
      for (int a = 0; a <= rk; a++) {
        sl.cols[a].R = R_;
        int copies = (rk == 2 && a == 1) ? 2 : 1;
        for (size_t t = 0; t < C.terms.size(); t++) {
          if (C.terms[t].j != j) continue;
          for (int cp = 0; cp < copies; cp++) {
            sl.cols[a].parts.push_back(
                {C.terms[t].w, C.terms[t].shift + 2 * a});
            sl.term_of[a].push_back(t);
          }
        }
      }
    }
    const Scalars& k = R_->scalars();
    for (int a = 0; a <= rk; a++)
      for (int j = jmin; j <= jmax; j++) {
        HilbertData h;
        h.lo = lo;
        h.hi = hi;
        out.terms[{a, j}] = h;
      }
    for (int d = lo; d <= hi; d++) {
      // per column and a: bases
      std::vector<std::vector<std::vector<SumModule::BasisItem>>> bases(njs);
      for (int jj = 0; jj < njs; jj++) {
        bases[jj].resize(rk + 1);
        for (int a = 0; a <= rk; a++) bases[jj][a] = col[jj].cols[a].basis(d);
      }
      // vertical ranks and kernels per (j, a)
      auto vertical_cols = [&](int jj, int a) {
        // map from level a to a+1
        const Slice& sl = col[jj];
        auto& sb = bases[jj][a];
        auto& tb = bases[jj][a + 1];
        std::map<std::tuple<size_t, uint32_t, Mon>, int> tindex;
        for (size_t i = 0; i < tb.size(); i++)
          tindex[{tb[i].part, tb[i].mask, tb[i].mon}] = int(i);
        std::vector<SparseCol> cols_(sb.size());
        for (size_t jcol = 0; jcol < sb.size(); jcol++) {
          auto& bi = sb[jcol];
          size_t term = sl.term_of[a][bi.part];
          Poly mono = Poly::mono(bi.mon, k.one());
          // target parts for this source part
          // rank1: part p -> part p (a: 0->1). rank2: a=0: parts 2p, 2p+1;
          // a=1: part p even copy -> x2^e, odd -> -x1^e into single part.
          auto add_img = [&](size_t tpart, const BimodElem& img, bool negate) {
            BimodElem v = img.right_mul(mono);
            if (negate) v = -v;
            for (auto& [mask, poly] : v.coords())
              for (auto& [mn, c] : poly.terms()) {
                auto it = tindex.find({tpart, mask, mn});
                if (it == tindex.end())
                  throw std::logic_error("hhh: vertical image escapes slice");
                cols_[jcol].entries.emplace_back(it->second, c);
              }
          };
          if (rk == 1) {
            add_img(bi.part, ops[term][0].img[bi.mask], false);
          } else if (a == 0) {
            add_img(2 * bi.part, ops[term][0].img[bi.mask], false);
            add_img(2 * bi.part + 1, ops[term][1].img[bi.mask], false);
          } else {
            // (u1, u2) -> x1^e u2 - x2^e u1
            bool second_copy = bi.part % 2 == 1;
            size_t tpart = bi.part / 2;
            if (second_copy)
              add_img(tpart, ops[term][0].img[bi.mask], false);
            else
              add_img(tpart, ops[term][1].img[bi.mask], true);
          }
        }
        return cols_;
      };
      // horizontal map on level a between columns jj and jj+1, applied to a
      // set of vectors in slice coordinates
      auto horizontal_apply = [&](int jj, int a,
                                  const std::vector<std::vector<std::pair<int, Fq>>>&
                                      vecs) {
        auto& sb = bases[jj][a];
        auto& tb = bases[jj + 1][a];
        std::map<std::tuple<size_t, uint32_t, Mon>, int> tindex;
        for (size_t i = 0; i < tb.size(); i++)
          tindex[{tb[i].part, tb[i].mask, tb[i].mon}] = int(i);
        int copies = (rk == 2 && a == 1) ? 2 : 1;
        std::vector<SparseCol> out_(vecs.size());
        for (size_t vi = 0; vi < vecs.size(); vi++) {
          for (auto& [idx, c] : vecs[vi]) {
            auto& bi = sb[size_t(idx)];
            size_t sterm = col[jj].term_of[a][bi.part];
            int copy = int(bi.part) % copies;
            BimodElem x =
                basis_elem(*R_, C.terms[sterm].w, bi.mask,
                           Poly::mono(bi.mon, c));
            for (auto& ed : C.edges) {
              if (ed.from != sterm) continue;
              BimodElem y = ed.map(x);
              if (y.is_zero()) continue;
              // find target part: the copy-th part of term ed.to
              size_t tpart = SIZE_MAX;
              int seen = 0;
              for (size_t p = 0; p < col[jj + 1].term_of[a].size(); p++) {
                if (col[jj + 1].term_of[a][p] == ed.to) {
                  if (seen == copy) {
                    tpart = p;
                    break;
                  }
                  seen++;
                }
              }
              for (auto& [mask, poly] : y.coords())
                for (auto& [mn, cc] : poly.terms()) {
                  auto it = tindex.find({tpart, mask, mn});
                  if (it == tindex.end())
                    throw std::logic_error("hhh: horizontal image escapes");
                  out_[vi].entries.emplace_back(it->second, cc);
                }
            }
          }
        }
        return out_;
      };

      // ranks of vertical maps per (j, a)
      std::vector<std::vector<long>> vrank(njs, std::vector<long>(rk + 1, 0));
      for (int jj = 0; jj < njs; jj++)
        for (int a = 0; a < rk; a++) {
          if (bases[jj][a].empty() || bases[jj][a + 1].empty()) continue;
          vrank[jj][a] = long(
              sparse_rank(vertical_cols(jj, a), int(bases[jj][a + 1].size())));
        }
      // H^a dims per column
      std::vector<std::vector<long>> hdim(njs, std::vector<long>(rk + 1, 0));
      for (int jj = 0; jj < njs; jj++)
        for (int a = 0; a <= rk; a++) {
          long v = long(bases[jj][a].size());
          if (a < rk) v -= vrank[jj][a];
          if (a > 0) v -= vrank[jj][a - 1];
          hdim[jj][a] = v;
        }
      // induced horizontal ranks on H^a where both sides are nonzero
      std::vector<std::vector<long>> irank(njs, std::vector<long>(rk + 1, 0));
      for (int jj = 0; jj + 1 < njs; jj++)
        for (int a = 0; a <= rk; a++) {
          if (hdim[jj][a] == 0 || hdim[jj + 1][a] == 0) continue;
          // kernel of the vertical map at (jj, a) as explicit vectors
          std::vector<std::vector<std::pair<int, Fq>>> kv;
          if (a < rk && !bases[jj][a + 1].empty()) {
            kv = sparse_kernel(vertical_cols(jj, a),
                               int(bases[jj][a + 1].size()));
          } else {
            // whole slice is the kernel
            for (size_t i = 0; i < bases[jj][a].size(); i++)
              kv.push_back({{int(i), k.one()}});
          }
          auto himg = horizontal_apply(jj, a, kv);
          // image of the previous vertical map U_{jj+1} (level a-1 -> a)
          std::vector<SparseCol> ucols;
          if (a > 0 && !bases[jj + 1][a - 1].empty())
            ucols = vertical_cols(jj + 1, a - 1);
          long urank = ucols.empty()
                           ? 0
                           : long(sparse_rank(ucols, int(bases[jj + 1][a].size())));
          std::vector<SparseCol> all = ucols;
          for (auto& hc : himg) all.push_back(hc);
          long total = long(sparse_rank(all, int(bases[jj + 1][a].size())));
          irank[jj][a] = total - urank;
        }
      for (int jj = 0; jj < njs; jj++)
        for (int a = 0; a <= rk; a++) {
          long v = hdim[jj][a] - irank[jj][a] - (jj > 0 ? irank[jj - 1][a] : 0);
          out.terms[{a, jj + jmin}].set(d, v);
        }
    }
    // drop empty series
    for (auto it = out.terms.begin(); it != out.terms.end();)
      it = it->second.dims.empty() ? out.terms.erase(it) : std::next(it);
    return out;
  }

  TriSeries hhh_braid(const BraidWord& b, int D) const {
    RouquierComplex C = RouquierComplex::of_braid(*R_, b);
    return hhh(C, D);
  }

 private:
  const Realization* R_;
  int jobs_;
};

// TriSeries(composite) = TriSeries(b1) * TriSeries(b2) as truncated series.
// The factors are computed with widened windows so the convolution is
// reliable on [lo, hi].
inline bool connect_sum_check(const BraidWord& b1, const BraidWord& b2,
                              const BraidWord& composite, int D) {
  auto Rc = HomflyEngine::realization_for(composite.strands);
  HomflyEngine Hc(Rc);
  TriSeries big = Hc.hhh_braid(composite, D);
  auto R1 = HomflyEngine::realization_for(b1.strands);
  auto R2 = HomflyEngine::realization_for(b2.strands);
  HomflyEngine H1(R1), H2(R2);
  TriSeries f1 = H1.hhh_braid(b1, D + 8);
  TriSeries f2 = H2.hhh_braid(b2, D + 8);
  int lo = -2 * int(composite.gens.size()) - 2, hi = D - 4;
  TriSeries prod = f1.product(f2, lo, hi);
  return big.equal_on(prod, lo, hi);
}

}  // namespace dsb
