#pragma once

// Degreewise-exact linear algebra over the coefficient field: matrix rank,
// kernels and solving, Hilbert data of graded modules and cohomology of
// complexes, and the Hilbert-series freeness certificate.

#include <functional>
#include <optional>
#include <unordered_map>

#include "dsb/bimod.hpp"

#ifdef DSB_JSON
#include <json.hpp>
#endif

namespace dsb {

// ----- dense exact matrices ------------------------------------------------

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t r, size_t c, const Fq& zero)
      : rows_(r), cols_(c), zero_(zero), a_(r * c, zero) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Fq& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Fq& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  // Row-reduce in place; returns pivot columns.
  std::vector<size_t> rref() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; c++) {
      size_t p = r;
      while (p < rows_ && at(p, c).is_zero()) p++;
      if (p == rows_) continue;
      if (p != r)
        for (size_t j = 0; j < cols_; j++) std::swap(at(p, j), at(r, j));
      Fq inv = at(r, c).inv();
      for (size_t j = c; j < cols_; j++) at(r, j) = at(r, j) * inv;
      for (size_t i = 0; i < rows_; i++) {
        if (i == r || at(i, c).is_zero()) continue;
        Fq f = at(i, c);
        for (size_t j = c; j < cols_; j++) at(i, j) = at(i, j) - f * at(r, j);
      }
      pivots.push_back(c);
      r++;
    }
    return pivots;
  }

  size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  // Basis of the right kernel, one column per free column.
  std::vector<std::vector<Fq>> kernel_basis() const {
    Matrix m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Fq>> out;
    for (size_t c = 0; c < cols_; c++) {
      if (is_pivot[c]) continue;
      std::vector<Fq> v(cols_, zero_);
      v[c] = Fq(zero_.realm(), 1);
      for (size_t r = 0; r < pivots.size(); r++)
        v[pivots[r]] = -m.at(r, c);
      out.push_back(std::move(v));
    }
    return out;
  }

  // Solve A x = b; nullopt when inconsistent.
  std::optional<std::vector<Fq>> solve(const std::vector<Fq>& b) const {
    Matrix m(rows_, cols_ + 1, zero_);
    for (size_t i = 0; i < rows_; i++) {
      for (size_t j = 0; j < cols_; j++) m.at(i, j) = at(i, j);
      m.at(i, cols_) = b[i];
    }
    auto pivots = m.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Fq> x(cols_, zero_);
    for (size_t r = 0; r < pivots.size(); r++) x[pivots[r]] = m.at(r, cols_);
    return x;
  }

 private:
  size_t rows_, cols_;
  Fq zero_;
  std::vector<Fq> a_;
};

// Sparse columns, rank only. Left-looking elimination with stored pivot rows.
struct SparseCol {
  std::vector<std::pair<int, Fq>> entries;  // (row, value), unsorted
};

// Right-looking sparse elimination with Markowitz pivoting: at each step
// pick the pivot minimizing (row_nnz - 1) * (col_nnz - 1) to limit fill-in.
inline size_t sparse_rank(const std::vector<SparseCol>& cols_in, int nrows) {
  size_t ncols = cols_in.size();
  std::vector<std::map<int, Fq>> cols(ncols);
  for (size_t j = 0; j < ncols; j++)
    for (auto& [r, v] : cols_in[j].entries) {
      if (v.is_zero()) continue;
      auto [it, fresh] = cols[j].emplace(r, v);
      if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) cols[j].erase(it);
      }
    }
  std::vector<int> row_nnz(nrows, 0);
  std::vector<bool> col_done(ncols, false), row_done(nrows, false);
  for (auto& c : cols)
    for (auto& [r, v] : c) row_nnz[r]++;
  size_t rank = 0;
  for (;;) {
    // pick pivot with the smallest Markowitz cost
    long best = -1;
    size_t bj = 0;
    int bi = -1;
    for (size_t j = 0; j < ncols; j++) {
      if (col_done[j] || cols[j].empty()) continue;
      long cn = long(cols[j].size());
      for (auto& [r, v] : cols[j]) {
        long cost = (cn - 1) * (row_nnz[r] - 1);
        if (best < 0 || cost < best) {
          best = cost;
          bj = j;
          bi = r;
          if (best == 0) break;
        }
      }
      if (best == 0) break;
    }
    if (bi < 0) break;
    rank++;
    col_done[bj] = true;
    row_done[bi] = true;
    std::map<int, Fq> piv = std::move(cols[bj]);
    cols[bj].clear();
    for (auto& [r, v] : piv) row_nnz[r]--;
    Fq inv = piv.at(bi).inv();
    for (size_t j = 0; j < ncols; j++) {
      if (col_done[j] || cols[j].empty()) continue;
      auto it = cols[j].find(bi);
      if (it == cols[j].end()) continue;
      Fq f = it->second * inv;
      cols[j].erase(it);
      row_nnz[bi]--;
      for (auto& [r, v] : piv) {
        if (r == bi) continue;
        auto [jt, fresh] = cols[j].emplace(r, -(f * v));
        if (fresh) {
          row_nnz[r]++;
        } else {
          jt->second -= f * v;
          if (jt->second.is_zero()) {
            cols[j].erase(jt);
            row_nnz[r]--;
          }
        }
      }
    }
  }
  return rank;
}

// Kernel of the column span: Markowitz elimination on columns augmented with
// identity tails; columns emptied of matrix rows yield kernel combinations.
inline std::vector<std::vector<std::pair<int, Fq>>> sparse_kernel(
    const std::vector<SparseCol>& cols_in, int nrows) {
  size_t ncols = cols_in.size();
  std::vector<std::map<int, Fq>> cols(ncols);
  for (size_t j = 0; j < ncols; j++) {
    for (auto& [r, v] : cols_in[j].entries) {
      if (v.is_zero()) continue;
      auto [it, fresh] = cols[j].emplace(r, v);
      if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) cols[j].erase(it);
      }
    }
    cols[j].emplace(nrows + int(j), Fq(nullptr, 0));  // realm filled below
  }
  // fix the tail unit entries with a realm-aware one
  const Realm* realm = nullptr;
  for (auto& c : cols_in)
    for (auto& [r, v] : c.entries)
      if (v.realm()) {
        realm = v.realm();
        break;
      }
  for (size_t j = 0; j < ncols; j++) cols[j][nrows + int(j)] = Fq(realm, 1);

  std::vector<int> row_nnz(nrows, 0);
  std::vector<bool> col_done(ncols, false);
  for (auto& c : cols)
    for (auto& [r, v] : c)
      if (r < nrows) row_nnz[r]++;
  for (;;) {
    long best = -1;
    size_t bj = 0;
    int bi = -1;
    for (size_t j = 0; j < ncols; j++) {
      if (col_done[j]) continue;
      long cn = 0;
      for (auto& [r, v] : cols[j])
        if (r < nrows) cn++;
      if (cn == 0) continue;
      for (auto& [r, v] : cols[j]) {
        if (r >= nrows) break;
        long cost = (cn - 1) * (row_nnz[r] - 1);
        if (best < 0 || cost < best) {
          best = cost;
          bj = j;
          bi = r;
          if (best == 0) break;
        }
      }
      if (best == 0) break;
    }
    if (bi < 0) break;
    col_done[bj] = true;
    std::map<int, Fq> piv = std::move(cols[bj]);
    cols[bj].clear();
    for (auto& [r, v] : piv)
      if (r < nrows) row_nnz[r]--;
    Fq inv = piv.at(bi).inv();
    for (size_t j = 0; j < ncols; j++) {
      if (col_done[j] || cols[j].empty()) continue;
      auto it = cols[j].find(bi);
      if (it == cols[j].end()) continue;
      Fq f = it->second * inv;
      cols[j].erase(it);
      row_nnz[bi]--;
      for (auto& [r, v] : piv) {
        if (r == bi) continue;
        auto [jt, fresh] = cols[j].emplace(r, -(f * v));
        if (fresh) {
          if (r < nrows) row_nnz[r]++;
        } else {
          jt->second -= f * v;
          if (jt->second.is_zero()) {
            cols[j].erase(jt);
            if (r < nrows) row_nnz[r]--;
          }
        }
      }
    }
  }
  std::vector<std::vector<std::pair<int, Fq>>> out;
  for (size_t j = 0; j < ncols; j++) {
    if (col_done[j] || cols[j].empty()) continue;
    std::vector<std::pair<int, Fq>> combo;
    for (auto& [r, v] : cols[j]) {
      if (r < nrows) throw std::logic_error("sparse_kernel: residue");
      combo.emplace_back(r - nrows, v);
    }
    out.push_back(std::move(combo));
  }
  return out;
}

// ----- Hilbert data ----------------------------------------------------------

struct HilbertData {
  int cutoff = 24;
  int lo = 0, hi = 0;           // degrees with exact dims; zero outside [lo,hi]
  std::map<int, long> dims;     // nonzero entries only

  long dim(int d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }
  void set(int d, long v) {
    if (v != 0) dims[d] = v;
  }
  bool operator==(const HilbertData& o) const { return dims == o.dims; }

  HilbertData shifted(int k) const {
    // M(k)_d = M_{d+k}
    HilbertData r;
    r.cutoff = cutoff;
    r.lo = lo - k;
    r.hi = hi - k;
    for (auto& [d, v] : dims) r.dims[d - k] = v;
    return r;
  }
  HilbertData plus(const HilbertData& o) const {
    HilbertData r = *this;
    r.lo = std::min(lo, o.lo);
    r.hi = std::min(hi, o.hi);
    for (auto& [d, v] : o.dims) {
      r.dims[d] += v;
      if (r.dims[d] == 0) r.dims.erase(d);
    }
    return r;
  }
  bool equal_on(const HilbertData& o, int a, int b) const {
    for (int d = a; d <= b; d++)
      if (dim(d) != o.dim(d)) return false;
    return true;
  }
  std::string str() const {
    std::string s = "{";
    bool f = true;
    for (auto& [d, v] : dims) {
      if (!f) s += ", ";
      f = false;
      s += std::to_string(d) + ": " + std::to_string(v);
    }
    return s + "}";
  }
};

// Multiply the series by (1-v^2)^rank inside the reliable window and read off
// generator degrees; FAIL (nullopt) when a negative coefficient shows the
// module is not free, with `inconclusive` when the window cannot certify.
struct FreeCert {
  std::optional<std::vector<int>> generators;  // nullopt = not free
  bool inconclusive = false;
  int window_hi = 0;
};

inline FreeCert free_generators(const HilbertData& h, int rank) {
  FreeCert out;
  out.window_hi = h.hi - 2 * rank;
  std::vector<int> gens;
  for (int d = h.lo; d <= out.window_hi; d++) {
    long c = 0;
    for (int j = 0; j <= rank; j++) {
      long binom = (rank == 2) ? (j == 1 ? -2 : 1) : (j == 1 ? -1 : 1);
      if (j > rank) break;
      c += binom * h.dim(d - 2 * j);
    }
    if (c < 0) {
      out.generators = std::nullopt;
      return out;
    }
    for (long i = 0; i < c; i++) gens.push_back(d);
  }
  // check the tail looks stable: the last coefficients should vanish so that
  // no generator is sitting at the window edge
  for (int d = out.window_hi - 1; d <= out.window_hi; d++) {
    long c = 0;
    for (int j = 0; j <= rank; j++) {
      long binom = (rank == 2) ? (j == 1 ? -2 : 1) : (j == 1 ? -1 : 1);
      c += binom * h.dim(d - 2 * j);
    }
    if (c != 0) out.inconclusive = true;
  }
  out.generators = gens;
  return out;
}

#ifdef DSB_JSON
inline nlohmann::ordered_json hilbert_json(const HilbertData& h,
                                           const FreeCert* cert = nullptr) {
  nlohmann::ordered_json j;
  j["cutoff"] = h.cutoff;
  nlohmann::ordered_json dims = nlohmann::ordered_json::object();
  for (auto& [d, v] : h.dims) dims[std::to_string(d)] = v;
  j["dims"] = dims;
  if (cert) {
    if (cert->generators)
      j["free_generators"] = *cert->generators;
    else
      j["free_generators"] = nullptr;
  }
  return j;
}
#endif

// ----- graded free modules & operator slices -------------------------------

// A finite direct sum of shifted copies of BS words over a fixed realization;
// R itself is the empty word. Slices are enumerated as (part, mask, monomial).
struct SumModule {
  struct Part {
    Word w;
    int shift = 0;  // the (k) in BS(w)(k); element degrees shift down by k
  };
  const Realization* R = nullptr;
  std::vector<Part> parts;

  int min_degree() const {
    int m = 0;
    bool first = true;
    for (auto& p : parts) {
      int d = -int(p.w.size()) - p.shift;
      if (first || d < m) m = d;
      first = false;
    }
    return first ? 0 : m;
  }

  struct BasisItem {
    size_t part;
    uint32_t mask;
    Mon mon;
  };

  // All basis vectors of internal degree d.
  std::vector<BasisItem> basis(int d) const {
    std::vector<BasisItem> out;
    int rk = R->rank();
    for (size_t pi = 0; pi < parts.size(); pi++) {
      auto& p = parts[pi];
      size_t n = p.w.size();
      for (uint32_t e = 0; e < (uint32_t(1) << n); e++) {
        int base = BimodElem::mask_degree(e, n) - p.shift;
        int rem = d - base;
        if (rem < 0 || rem % 2) continue;
        int k = rem / 2;
        if (rk == 1) {
          if (k <= 255) out.push_back({pi, e, Mon{uint8_t(k), 0}});
        } else {
          for (int a = 0; a <= k && a <= 255; a++)
            if (k - a <= 255)
              out.push_back({pi, e, Mon{uint8_t(a), uint8_t(k - a)}});
        }
      }
    }
    return out;
  }

  long dim(int d) const {
    long n = 0;
    int rk = R->rank();
    for (auto& p : parts) {
      size_t nw = p.w.size();
      for (uint32_t e = 0; e < (uint32_t(1) << nw); e++) {
        int base = BimodElem::mask_degree(e, nw) - p.shift;
        int rem = d - base;
        if (rem < 0 || rem % 2) continue;
        n += (rk == 1) ? 1 : (rem / 2 + 1);
      }
    }
    return n;
  }

  HilbertData hilbert(int lo, int hi) const {
    HilbertData h;
    h.lo = lo;
    h.hi = hi;
    for (int d = lo; d <= hi; d++) h.set(d, dim(d));
    return h;
  }
};

// A degree-homogeneous right-R-linear map between sum modules, backed by the
// symbolic images of every (part, mask) generator.
struct SumMap {
  const SumModule* src = nullptr;
  const SumModule* tgt = nullptr;
  int degree = 0;  // internal degree added to elements
  // images[part][mask] = list of (target part, element in BS(target word))
  std::vector<std::vector<std::vector<std::pair<size_t, BimodElem>>>> images;

  static SumMap build(
      const SumModule& src, const SumModule& tgt, int degree,
      const std::function<std::vector<std::pair<size_t, BimodElem>>(
          size_t part, uint32_t mask)>& gen_image) {
    SumMap m;
    m.src = &src;
    m.tgt = &tgt;
    m.degree = degree;
    m.images.resize(src.parts.size());
    for (size_t pi = 0; pi < src.parts.size(); pi++) {
      size_t n = src.parts[pi].w.size();
      m.images[pi].resize(size_t(1) << n);
      for (uint32_t e = 0; e < (uint32_t(1) << n); e++)
        m.images[pi][e] = gen_image(pi, e);
    }
    return m;
  }

  // Sparse columns of the slice sending degree d of src into degree
  // d + degree of tgt.
  std::vector<SparseCol> slice(
      int d, const std::vector<SumModule::BasisItem>& src_basis,
      const std::vector<SumModule::BasisItem>& tgt_basis) const {
    (void)d;
    // index target basis
    std::map<std::tuple<size_t, uint32_t, Mon>, int> tindex;
    for (size_t i = 0; i < tgt_basis.size(); i++)
      tindex[{tgt_basis[i].part, tgt_basis[i].mask, tgt_basis[i].mon}] =
          int(i);
    std::vector<SparseCol> cols(src_basis.size());
    for (size_t j = 0; j < src_basis.size(); j++) {
      auto& b = src_basis[j];
      Poly mono = Poly::mono(b.mon, src->R->scalars().one());
      for (auto& [tp, img] : images[b.part][b.mask]) {
        BimodElem v = img.right_mul(mono);
        for (auto& [mask, poly] : v.coords())
          for (auto& [mn, c] : poly.terms()) {
            auto it = tindex.find({tp, mask, mn});
            if (it == tindex.end())
              throw std::logic_error("slice: image outside target slice");
            cols[j].entries.emplace_back(it->second, c);
          }
      }
    }
    return cols;
  }

  Matrix dense_slice(int d, const std::vector<SumModule::BasisItem>& sb,
                     const std::vector<SumModule::BasisItem>& tb) const {
    auto cols = slice(d, sb, tb);
    Matrix m(tb.size(), sb.size(), src->R->scalars().zero());
    for (size_t j = 0; j < cols.size(); j++)
      for (auto& [r, v] : cols[j].entries) m.at(r, j) += v;
    return m;
  }
};

// Cohomology Hilbert data of a complex T0 -> T1 -> ... -> Tn of SumMaps, at
// position i, for internal degrees in [lo, hi].
struct ComplexHS {
  std::vector<const SumModule*> terms;
  std::vector<const SumMap*> maps;  // maps[i]: terms[i] -> terms[i+1]

  HilbertData cohomology(size_t pos, int lo, int hi) const {
    HilbertData h;
    h.lo = lo;
    h.hi = hi;
    for (int d = lo; d <= hi; d++) {
      long dim = terms[pos]->dim(d);
      if (dim == 0) continue;
      long rk_out = 0, rk_in = 0;
      if (pos < maps.size()) {
        auto sb = terms[pos]->basis(d);
        auto tb = terms[pos + 1]->basis(d + maps[pos]->degree);
        rk_out = long(sparse_rank(maps[pos]->slice(d, sb, tb), int(tb.size())));
      }
      if (pos > 0) {
        int dd = d - maps[pos - 1]->degree;
        auto sb = terms[pos - 1]->basis(dd);
        auto tb = terms[pos]->basis(d);
        rk_in =
            long(sparse_rank(maps[pos - 1]->slice(dd, sb, tb), int(tb.size())));
      }
      h.set(d, dim - rk_out - rk_in);
    }
    return h;
  }
};

}  // namespace dsb
