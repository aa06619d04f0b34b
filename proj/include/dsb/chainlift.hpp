#pragma once

// Partial chain lifts as lazy evaluators: each map stores closed formulas
// for the cohomological components it knows (the ones written down for the
// unit, counit, multiplication, comultiplication and unitor inverses), and
// any missing component is produced on demand, per concrete input, by
// solving d(X) = +-F(d(input)) in the relevant degree slice of the target.

#include <memory>

#include "dsb/koszul.hpp"

namespace dsb {

using ObjPtr = std::shared_ptr<const KoszulObj>;

inline ObjPtr make_obj(KoszulObj o) {
  return std::make_shared<const KoszulObj>(std::move(o));
}

struct MissingComponent : std::runtime_error {
  MissingComponent() : std::runtime_error("missing chain component") {}
};

class ChainMap {
 public:
  ObjPtr src, tgt;
  int coh = 0;
  int internal = 0;
  std::string name;
  // applied to a single term; must be linear in the coefficient
  std::function<TElem(const TKey&, const Fq&)> term_fn;

  TElem apply_raw(const TElem& x) const {
    TElem out(*tgt);
    for (auto& [k, c] : x.terms()) out = out + term_fn(k, c);
    return out;
  }

  // apply with on-demand solving of missing components
  TElem apply(const TElem& x) const {
    TElem out(*tgt);
    for (auto& [k, c] : x.terms()) {
      try {
        out = out + term_fn(k, c);
      } catch (const MissingComponent&) {
        out = out + solve_component(k).scaled(c);
      }
    }
    return out;
  }

  static std::vector<TKey> slice_basis(const KoszulObj& o, int level, int deg) {
    std::vector<TKey> out;
    if (level > 0) return out;
    size_t want = size_t(-level);
    uint32_t top = uint32_t(1) << o.ngens();
    for (uint32_t mask = 0; mask < top; mask++) {
      if (__builtin_popcount(mask) != int(want)) continue;
      int gdeg = 0;
      for (size_t g = 0; g < o.ngens(); g++)
        if (mask >> g & 1) gdeg += o.gen_degree(g);
      int rem = deg + o.letter_count() - gdeg;
      if (rem < 0 || rem % 2) continue;
      std::vector<Mon> mons(o.nfactors());
      enum_mons(o, mask, mons, 0, rem, out);
    }
    return out;
  }

 private:
  mutable std::map<TKey, TElem> solved_;

  // Solve d(X) = (-1)^coh F(d(term)) for the image of a single term.
  TElem solve_component(const TKey& key) const {
    auto it = solved_.find(key);
    if (it != solved_.end()) return it->second;
    const Scalars& k = src->R->scalars();
    TElem term(*src);
    term.add(key, k.one());
    TElem rhs = apply(koszul_d(term));
    if (coh % 2) rhs = rhs.scaled(-k.one());
    int out_level = term.level() + coh;
    int out_degree = term.degree() + internal;
    // enumerate the target slice at (out_level, out_degree)
    std::vector<TKey> basis = slice_basis(*tgt, out_level, out_degree);
    std::vector<TKey> tbasis = slice_basis(*tgt, out_level + 1, out_degree);
    std::map<TKey, size_t> tindex;
    for (size_t i = 0; i < tbasis.size(); i++) tindex[tbasis[i]] = i;
    Matrix A(tbasis.size(), basis.size(), k.zero());
    for (size_t j = 0; j < basis.size(); j++) {
      TElem e(*tgt);
      e.add(basis[j], k.one());
      TElem de = koszul_d(e);
      for (auto& [tk, c] : de.terms()) {
        auto f = tindex.find(tk);
        if (f == tindex.end())
          throw std::logic_error("solve_component: d leaves slice");
        A.at(f->second, j) += c;
      }
    }
    std::vector<Fq> b(tbasis.size(), k.zero());
    for (auto& [tk, c] : rhs.terms()) {
      auto f = tindex.find(tk);
      if (f == tindex.end())
        throw std::logic_error("solve_component: rhs leaves slice");
      b[f->second] = c;
    }
    auto sol = A.solve(b);
    if (!sol)
      throw std::runtime_error("solve_component: no chain extension (" + name +
                               ")");
    TElem out(*tgt);
    for (size_t j = 0; j < basis.size(); j++)
      if (!(*sol)[j].is_zero()) out.add(basis[j], (*sol)[j]);
    solved_[key] = out;
    return out;
  }

  static void enum_mons(const KoszulObj& o, uint32_t mask,
                        std::vector<Mon>& mons, size_t i, int rem,
                        std::vector<TKey>& out) {
    if (i + 1 == mons.size()) {
      for (int a = 0; 2 * a <= rem; a++) {
        mons[i] = Mon{uint8_t(a), uint8_t(rem / 2 - a)};
        out.push_back(TKey{mask, mons});
      }
      return;
    }
    for (int d = 0; d <= rem; d += 2)
      for (int a = 0; 2 * a <= d; a++) {
        mons[i] = Mon{uint8_t(a), uint8_t(d / 2 - a)};
        enum_mons(o, mask, mons, i + 1, rem - d, out);
      }
  }
};

// ----- generic combinators ----------------------------------------------------

inline ChainMap identity_map(ObjPtr o) {
  ChainMap f;
  f.src = f.tgt = o;
  f.name = "id";
  f.term_fn = [o](const TKey& k, const Fq& c) {
    TElem e(*o);
    e.add(k, c);
    return e;
  };
  return f;
}

inline ChainMap compose(const ChainMap& f, const ChainMap& g) {
  if (!(*g.tgt == *f.src))
    throw std::invalid_argument("compose: object mismatch (" + f.name + " o " +
                                g.name + ")");
  ChainMap h;
  h.src = g.src;
  h.tgt = f.tgt;
  h.coh = f.coh + g.coh;
  h.internal = f.internal + g.internal;
  h.name = f.name + "." + g.name;
  auto fp = std::make_shared<ChainMap>(f);
  auto gp = std::make_shared<ChainMap>(g);
  h.term_fn = [fp, gp](const TKey& k, const Fq& c) {
    TElem mid(*gp->tgt);
    mid.add(k, c);
    mid = gp->apply(mid);
    return fp->apply(mid);
  };
  return h;
}

inline ChainMap add_maps(const ChainMap& f, const ChainMap& g) {
  ChainMap h = f;
  auto fp = std::make_shared<ChainMap>(f);
  auto gp = std::make_shared<ChainMap>(g);
  h.name = "(" + f.name + "+" + g.name + ")";
  h.term_fn = [fp, gp](const TKey& k, const Fq& c) {
    TElem a(*fp->tgt);
    a.add(k, c);
    return fp->apply(a) + gp->apply(a);
  };
  return h;
}

inline ChainMap scale_map(const ChainMap& f, const Fq& q) {
  ChainMap h = f;
  auto fp = std::make_shared<ChainMap>(f);
  h.name = "c*" + f.name;
  h.term_fn = [fp, q](const TKey& k, const Fq& c) {
    TElem a(*fp->src);
    a.add(k, c);
    return fp->apply(a).scaled(q);
  };
  return h;
}

// left multiplication by a polynomial on the first tensor factor
inline ChainMap lmul_map(ObjPtr o, const Poly& p) {
  ChainMap f;
  f.src = f.tgt = o;
  f.internal = p.degree();
  f.name = "lmul";
  f.term_fn = [o, p](const TKey& k, const Fq& c) {
    TElem e(*o);
    e.add(k, c);
    return e.mul_at(0, p);
  };
  return f;
}

inline ObjPtr concat_obj(const KoszulObj& a, const KoszulObj& b) {
  KoszulObj o;
  o.R = a.R;
  o.units = a.units;
  o.units.insert(o.units.end(), b.units.begin(), b.units.end());
  return make_obj(std::move(o));
}

// (f (x) g) with the Koszul sign (-1)^{|g| |left part|}
inline ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  ChainMap h;
  h.src = concat_obj(*f.src, *g.src);
  h.tgt = concat_obj(*f.tgt, *g.tgt);
  h.coh = f.coh + g.coh;
  h.internal = f.internal + g.internal;
  h.name = "(" + f.name + "(x)" + g.name + ")";
  auto fp = std::make_shared<ChainMap>(f);
  auto gp = std::make_shared<ChainMap>(g);
  auto src = h.src;
  auto tgt = h.tgt;
  h.term_fn = [fp, gp, src, tgt](const TKey& k, const Fq& c) {
    size_t lg = fp->src->ngens();
    size_t lf = fp->src->nfactors();
    // split: glue factor goes left, right gets a unit there
    TKey lk, rk;
    lk.mask = k.mask & ((uint32_t(1) << lg) - 1);
    rk.mask = k.mask >> lg;
    lk.mons.assign(k.mons.begin(), k.mons.begin() + lf);
    rk.mons.assign(k.mons.begin() + lf - 1, k.mons.end());
    rk.mons[0] = Mon{};
    Fq cc = c;
    if ((gp->coh % 2) && (__builtin_popcount(lk.mask) % 2)) cc = -cc;
    TElem le(*fp->src), re(*gp->src);
    le.add(lk, cc);
    re.add(rk, fp->src->R->scalars().one());
    TElem lo = fp->apply(le), ro = gp->apply(re);
    // merge outputs
    TElem out(*tgt);
    size_t lg2 = fp->tgt->ngens();
    size_t lf2 = fp->tgt->nfactors();
    for (auto& [ka, ca] : lo.terms())
      for (auto& [kb, cb] : ro.terms()) {
        TKey nk;
        nk.mask = ka.mask | (kb.mask << lg2);
        nk.mons = ka.mons;
        nk.mons[lf2 - 1] = nk.mons[lf2 - 1] * kb.mons[0];
        nk.mons.insert(nk.mons.end(), kb.mons.begin() + 1, kb.mons.end());
        out.add(nk, ca * cb);
      }
    return out;
  };
  return h;
}

inline ChainMap tensor_chain(std::vector<ChainMap> fs) {
  ChainMap h = fs.at(0);
  for (size_t i = 1; i < fs.size(); i++) h = tensor_map(h, fs[i]);
  return h;
}

inline ChainMap compose_chain(std::vector<ChainMap> fs) {
  // fs listed bottom-up: fs[0] applied first
  ChainMap h = fs.at(0);
  for (size_t i = 1; i < fs.size(); i++) h = compose(fs[i], h);
  return h;
}

// ----- helpers for formulas ---------------------------------------------------

// add a term with the generator of a linear form at a unit: the form is
// decomposed over {rho_s, rho_t}; on a letter unit the own-rho component
// must vanish and the invariant generator is used.
inline void add_linear_gen(TElem& out, const KoszulObj& o, size_t unit,
                           const Poly& x, const TKey& base, const Fq& coeff) {
  const Realization& R = *o.R;
  auto [cs, ct] = rho_coords(R, x);
  auto put = [&](size_t pos, const Fq& c) {
    if (c.is_zero()) return;
    if (base.mask >> pos & 1)
      throw std::logic_error("add_linear_gen: generator already present");
    TKey k = base;
    k.mask |= uint32_t(1) << pos;
    out.add(k, coeff * c);
  };
  if (o.units[unit].empty) {
    put(2 * unit, cs);
    put(2 * unit + 1, ct);
    return;
  }
  Color c = o.units[unit].c;
  Fq own = c == S ? cs : ct;
  Fq inv = c == S ? ct : cs;
  if (!own.is_zero())
    throw std::logic_error("add_linear_gen: form not invariant for the unit");
  put(2 * unit + 1, inv);
}

// ----- the atomic lifts ---------------------------------------------------

// unit: K_0 -> K_c lifting eta_c(1) = rho_c (x) 1 - 1 (x) c(rho_c)
inline ChainMap unit_lift(const Realization& R, Color c) {
  ChainMap f;
  f.src = make_obj(KoszulObj::empty(R));
  f.tgt = make_obj(KoszulObj::letters(R, {c}));
  f.internal = 1;
  f.name = std::string("unit_") + color_char(c);
  Poly rho = R.rho(c), crho = R.reflect(c, rho);
  auto tgt = f.tgt;
  Fq a = R.a_st();
  f.term_fn = [&R, tgt, c, rho, crho, a](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    int pc = __builtin_popcount(k.mask);
    TKey base;
    base.mons = k.mons;
    if (pc == 0) {
      TElem e(*tgt);
      e.add(base, cf);
      return e.mul_at(0, rho) - e.mul_at(1, crho);
    }
    if (pc == 1) {
      bool is_rho_c = (c == S) ? (k.mask & 1) : (k.mask & 2);
      if (!is_rho_c) {
        // invariant generator passes through with the unit formula
        TKey kk = base;
        kk.mask = 2;  // pi generator of K_c
        TElem e(*tgt);
        e.add(kk, cf);
        return e.mul_at(0, rho) - e.mul_at(1, crho);
      }
      // rho_c generator: (rho_c + c rho_c) gen (x) rho_c (x) 1 - gamma gen
      TElem out2(*tgt);
      TKey kk = base;
      kk.mask = 2;
      TElem e(*tgt);
      e.add(kk, -(cf * a));  // rho_c + c(rho_c) = -a_st rho_{other}
      out2 = out2 + e.mul_at(0, rho);
      TKey kg = base;
      kg.mask = 1;  // gamma
      out2.add(kg, -cf);
      return out2;
    }
    throw MissingComponent();
  };
  return f;
}

// counit: K_c -> K_0 lifting eps_c(f (x) g) = fg
inline ChainMap counit_lift(const Realization& R, Color c) {
  ChainMap f;
  f.src = make_obj(KoszulObj::letters(R, {c}));
  f.tgt = make_obj(KoszulObj::empty(R));
  f.internal = 1;
  f.name = std::string("counit_") + color_char(c);
  Poly rho = R.rho(c), crho = R.reflect(c, rho);
  auto tgt = f.tgt;
  f.term_fn = [&R, tgt, c, rho, crho](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    int pc = __builtin_popcount(k.mask);
    TKey base;
    base.mons = k.mons;
    if (pc == 0) {
      out.add(base, cf);
      return out;
    }
    if (pc == 1) {
      if (k.mask == 2) {  // invariant generator rho_{other(c)}
        TKey kk = base;
        kk.mask = (other(c) == S) ? 1 : 2;
        out.add(kk, cf);
        return out;
      }
      // gamma: rho_c-gen (x) c(rho_c) (x) 1 + (c rho_c)-gen (x) 1 (x) rho_c
      TKey k1 = base;
      k1.mask = (c == S) ? 1 : 2;
      TElem e1(*tgt);
      e1.add(k1, cf);
      out = out + e1.mul_at(0, crho);
      TElem e2(*tgt);
      add_linear_gen(e2, *tgt, 0, crho, base, cf);
      out = out + e2.mul_at(1, rho);
      return out;
    }
    throw MissingComponent();
  };
  return f;
}

// multiplication: K_c (x) K_c -> K_c lifting f(x)h(x)g -> d_c(h) f (x) g
inline ChainMap mult_lift(const Realization& R, Color c) {
  ChainMap f;
  f.src = make_obj(KoszulObj::letters(R, {c, c}));
  f.tgt = make_obj(KoszulObj::letters(R, {c}));
  f.internal = -1;
  f.name = std::string("mult_") + color_char(c);
  auto tgt = f.tgt;
  f.term_fn = [&R, tgt, c](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    int pc = __builtin_popcount(k.mask);
    if (pc > 1) throw MissingComponent();
    uint32_t nmask;
    if (pc == 0) {
      nmask = 0;
    } else if (k.mask == 4 || k.mask == 8) {
      nmask = k.mask >> 2;  // second-unit generator keeps its role
    } else {
      return out;  // first-unit generators map to zero
    }
    Poly dh = R.demazure(c, Poly::mono(k.mons[1], cf));
    if (dh.is_zero()) return out;
    TKey nk;
    nk.mask = nmask;
    nk.mons = {k.mons[0], k.mons[2]};
    TElem e(*tgt);
    e.add(nk, R.scalars().one());
    return e.mul_at(0, dh);
  };
  return f;
}

// comultiplication: K_c -> K_c (x) K_c lifting f(x)g -> f(x)1(x)g
inline ChainMap comult_lift(const Realization& R, Color c) {
  ChainMap f;
  f.src = make_obj(KoszulObj::letters(R, {c}));
  f.tgt = make_obj(KoszulObj::letters(R, {c, c}));
  f.internal = -1;  // trivalent vertices drop the degree by one
  f.name = std::string("comult_") + color_char(c);
  auto tgt = f.tgt;
  f.term_fn = [tgt](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    int pc = __builtin_popcount(k.mask);
    if (pc > 1) throw MissingComponent();
    TKey nk;
    nk.mons = {k.mons[0], Mon{}, k.mons[1]};
    if (pc == 0) {
      out.add(nk, cf);
      return out;
    }
    TKey k1 = nk, k2 = nk;
    k1.mask = k.mask;       // generator on the first copy
    k2.mask = k.mask << 2;  // and on the second
    out.add(k1, cf);
    out.add(k2, cf);
    return out;
  };
  return f;
}

// inverse left unitor: K_c -> K_0 (x) K_c
inline ChainMap linv_lift(const Realization& R, Color c) {
  ChainMap f;
  f.src = make_obj(KoszulObj::letters(R, {c}));
  KoszulObj t;
  t.R = &R;
  t.units = {{true, S}, {false, c}};
  f.tgt = make_obj(std::move(t));
  f.internal = 0;
  f.name = std::string("linv_") + color_char(c);
  Poly rho = R.rho(c), crho = R.reflect(c, rho);
  auto tgt = f.tgt;
  f.term_fn = [&R, tgt, c, rho, crho](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    int pc = __builtin_popcount(k.mask);
    if (pc > 1) throw MissingComponent();
    TKey nk;
    nk.mons = {k.mons[0], Mon{}, k.mons[1]};
    if (pc == 0) {
      out.add(nk, cf);
      return out;
    }
    if (k.mask == 2) {  // invariant generator rho_{other c}
      TKey k1 = nk;
      k1.mask = (other(c) == S) ? 1 : 2;  // on the empty unit
      out.add(k1, cf);
      TKey k2 = nk;
      k2.mask = 8;  // pi of the letter unit
      out.add(k2, cf);
      return out;
    }
    // gamma: rho_c^{(1)} (x) c(rho_c) (x) 1 (x) 1
    //      + (c rho_c)^{(1)} (x) 1 (x) rho_c (x) 1 + gamma^{(2)} (x) 1...
    TKey k1 = nk;
    k1.mask = (c == S) ? 1 : 2;
    TElem e1(*tgt);
    e1.add(k1, cf);
    out = out + e1.mul_at(0, crho);
    TElem e2(*tgt);
    add_linear_gen(e2, *tgt, 0, crho, nk, cf);
    out = out + e2.mul_at(1, rho);
    TKey k3 = nk;
    k3.mask = 4;  // gamma of the letter unit
    out.add(k3, cf);
    return out;
  };
  return f;
}

// inverse right unitor: K_c -> K_c (x) K_0
inline ChainMap rinv_lift(const Realization& R, Color c) {
  ChainMap f;
  f.src = make_obj(KoszulObj::letters(R, {c}));
  KoszulObj t;
  t.R = &R;
  t.units = {{false, c}, {true, S}};
  f.tgt = make_obj(std::move(t));
  f.internal = 0;
  f.name = std::string("rinv_") + color_char(c);
  Poly rho = R.rho(c), crho = R.reflect(c, rho);
  auto tgt = f.tgt;
  f.term_fn = [&R, tgt, c, rho, crho](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    int pc = __builtin_popcount(k.mask);
    if (pc > 1) throw MissingComponent();
    TKey nk;
    nk.mons = {k.mons[0], Mon{}, k.mons[1]};
    if (pc == 0) {
      out.add(nk, cf);
      return out;
    }
    if (k.mask == 2) {
      TKey k1 = nk;
      k1.mask = 2;  // pi of the letter unit
      out.add(k1, cf);
      TKey k2 = nk;
      k2.mask = (other(c) == S) ? 4 : 8;  // on the trailing empty unit
      out.add(k2, cf);
      return out;
    }
    // gamma^{(1)} + (c rho_c)^{(2)} (x) 1 (x) rho_c (x) 1
    //            + rho_c^{(2)} (x) 1 (x) 1 (x) c(rho_c)
    TKey k1 = nk;
    k1.mask = 1;
    out.add(k1, cf);
    TElem e2(*tgt);
    add_linear_gen(e2, *tgt, 1, crho, nk, cf);
    out = out + e2.mul_at(1, rho);
    TKey k3 = nk;
    k3.mask = (c == S) ? 4 : 8;
    TElem e3(*tgt);
    e3.add(k3, cf);
    out = out + e3.mul_at(2, crho);
    return out;
  };
  return f;
}

// collapse an empty unit (the unitor itself, q_0 tensored into place)
inline ChainMap collapse_empty(ObjPtr src, size_t unit) {
  if (!src->units[unit].empty)
    throw std::invalid_argument("collapse_empty: unit is a letter");
  KoszulObj t;
  t.R = src->R;
  for (size_t i = 0; i < src->units.size(); i++)
    if (i != unit) t.units.push_back(src->units[i]);
  ChainMap f;
  f.src = src;
  f.tgt = make_obj(std::move(t));
  f.name = "collapse";
  auto tgt = f.tgt;
  f.term_fn = [src, tgt, unit](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    if (k.mask >> (2 * unit) & 3) return out;  // q_0 kills the exterior part
    TKey nk;
    uint32_t lowbits = (uint32_t(1) << (2 * unit)) - 1;
    nk.mask = (k.mask & lowbits) | ((k.mask >> 2) & ~lowbits);
    nk.mons = k.mons;
    nk.mons[unit] = nk.mons[unit] * nk.mons[unit + 1];
    nk.mons.erase(nk.mons.begin() + long(unit) + 1);
    out.add(nk, cf);
    return out;
  };
  return f;
}

// the Hochschild dot: contraction -gamma^v on a letter unit
inline ChainMap phi_contract(ObjPtr o, size_t unit) {
  if (o->units[unit].empty)
    throw std::invalid_argument("phi_contract: needs a letter unit");
  ChainMap f;
  f.src = f.tgt = o;
  f.coh = 1;
  f.internal = -4;
  f.name = "phi@" + std::to_string(unit);
  f.term_fn = [o, unit](const TKey& k, const Fq& cf) {
    TElem out(*o);
    size_t pos = 2 * unit;
    if (!(k.mask >> pos & 1)) return out;
    int below = __builtin_popcount(k.mask & ((uint32_t(1) << pos) - 1));
    TKey nk = k;
    nk.mask &= ~(uint32_t(1) << pos);
    out.add(nk, (below % 2 == 0) ? -cf : cf);
    return out;
  };
  return f;
}

// exterior box: contraction by xi in Lambda(V) on an empty unit; xi given
// over the wedge basis {1, a_s^v, a_t^v, a_s^v ^ a_t^v} as mask -> coeff,
// with iota_{v ^ w} = iota_v o iota_w.
using ExtV = std::map<uint8_t, Fq>;

inline ChainMap iota_contract(ObjPtr o, size_t unit, const ExtV& xi) {
  if (!o->units[unit].empty)
    throw std::invalid_argument("iota_contract: needs an empty unit");
  int deg = 0;
  for (auto& [m, c] : xi)
    deg = std::max(deg, __builtin_popcount(m));
  ChainMap f;
  f.src = f.tgt = o;
  f.coh = deg;
  f.internal = -2 * deg;
  f.name = "iota@" + std::to_string(unit);
  f.term_fn = [o, unit, xi](const TKey& k, const Fq& cf) {
    TElem out(*o);
    for (auto& [vm, vc] : xi) {
      // iota_{a_s^v} removes the e_s bit (pairing with rho_s = 1),
      // iota_{a_t^v} the e_t bit; composite s then t ordering
      TKey cur = k;
      Fq c = cf * vc;
      bool dead = false;
      // apply iota_t first, then iota_s (iota_{s^t} = iota_s o iota_t)
      for (int which : {1, 0}) {
        if (!(vm >> which & 1)) continue;
        size_t pos = 2 * unit + size_t(which);
        if (!(cur.mask >> pos & 1)) {
          dead = true;
          break;
        }
        int below = __builtin_popcount(cur.mask & ((uint32_t(1) << pos) - 1));
        if (below % 2) c = -c;
        cur.mask &= ~(uint32_t(1) << pos);
      }
      if (!dead) out.add(cur, c);
    }
    return out;
  };
  return f;
}

// eta^Ext: K_0 -> K_c, the contraction a_c^v followed by the inclusion
// Lambda((V*)^c) -> K_c
inline ChainMap eta_ext_lift(const Realization& R, Color c) {
  ChainMap f;
  f.src = make_obj(KoszulObj::empty(R));
  f.tgt = make_obj(KoszulObj::letters(R, {c}));
  f.coh = 1;
  f.internal = -3;
  f.name = std::string("etaExt_") + color_char(c);
  auto tgt = f.tgt;
  f.term_fn = [tgt, c](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    size_t pos = (c == S) ? 0 : 1;  // e_{rho_c} bit
    if (!(k.mask >> pos & 1)) return out;
    int below = __builtin_popcount(k.mask & ((uint32_t(1) << pos) - 1));
    uint32_t rest = k.mask & ~(uint32_t(1) << pos);
    TKey nk;
    nk.mons = k.mons;
    nk.mask = rest ? 2u : 0u;  // remaining e_{rho_other} becomes pi of K_c
    out.add(nk, (below % 2) ? -cf : cf);
    return out;
  };
  return f;
}

// the new generator's partial lift. At m=2 the vertical map vanishes, the
// cocycle equation becomes homogeneous and the canonical solution is v = 0;
// uniqueness is only demanded away from m=2.
inline ChainMap phi_new_lift(const ExtEngine& E, Color c, const Word& w) {
  const Realization& R = E.realization();
  bool unique = R.realm().m != 2;
  ExtClass cls = E.solve_phi(c, w, unique);
  ChainMap f;
  f.src = make_obj(KoszulObj::letters(R, {c}));
  f.tgt = make_obj(KoszulObj::letters(R, w));
  f.coh = 1;
  f.internal = -(int(w.size()) + 1);
  f.name = std::string("Phi_") + color_char(c) + "^" + word_str(w);
  auto tgt = f.tgt;
  TElem ul = koszul_lift01(*tgt, cls.u);
  TElem vl = koszul_lift01(*tgt, cls.v);
  size_t last = tgt->nfactors() - 1;
  f.term_fn = [tgt, ul, vl, last](const TKey& k, const Fq& cf) {
    TElem out(*tgt);
    int pc = __builtin_popcount(k.mask);
    if (pc == 0) return out;  // no positive levels in the target
    if (pc > 1) throw MissingComponent();
    const TElem& base = (k.mask == 2) ? ul : vl;
    Poly f0 = Poly::mono(k.mons[0], cf);
    Poly f1 = Poly::mono(k.mons[1], tgt->R->scalars().one());
    return base.mul_at(0, f0).mul_at(last, f1);
  };
  return f;
}

// the m=2 crossing K(c, c') -> K(c', c), 1(cc') -> 1(c'c)
inline ChainMap crossing2_lift(const Realization& R, Color c) {
  if (R.realm().m != 2)
    throw std::invalid_argument("crossing2: realm must have m=2");
  ChainMap f;
  Color d = other(c);
  f.src = make_obj(KoszulObj::letters(R, {c, d}));
  f.tgt = make_obj(KoszulObj::letters(R, {d, c}));
  f.name = "cross2";
  auto tgt = f.tgt;
  f.term_fn = [tgt, c](const TKey& k, const Fq& cf) {
    if (k.mask != 0) throw MissingComponent();
    // middle monomial: the c-part moves left? no: for source (c, c'),
    // powers of a_{c'} are c-invariant (m=2) and move left, powers of a_c
    // are c'-invariant and move right.
    Mon mid = k.mons[1];
    Mon left = (c == S) ? Mon{0, mid.b} : Mon{mid.a, 0};
    Mon right = (c == S) ? Mon{mid.a, 0} : Mon{0, mid.b};
    TKey nk;
    nk.mons = {k.mons[0] * left, Mon{}, right * k.mons[2]};
    TElem out(*tgt);
    out.add(nk, cf);
    return out;
  };
  return f;
}

// ----- class extraction ---------------------------------------------------

inline ExtClass class_of(const ExtEngine& E, const ChainMap& F) {
  (void)E;
  if (F.src->units.size() != 1)
    throw std::invalid_argument("class_of: source must be K_0 or K_c");
  bool empty = F.src->units[0].empty;
  ExtClass cls;
  cls.src = ClassSource{empty, empty ? T : F.src->units[0].c};
  cls.coh = F.coh;
  cls.w = F.tgt->word();
  auto value_on = [&](std::initializer_list<int> gens) {
    TElem x = TElem::gen_elem(*F.src, gens);
    return koszul_q(F.apply(x));
  };
  if (F.coh == 0) {
    cls.u = value_on({});
    return cls;
  }
  if (F.coh == 1) {
    // u on the degree-2 generator (pi or e_s for the op1 direction)
    cls.u = value_on({1 - (empty ? 1 : 0)});
    cls.v = value_on({empty ? 1 : 0});
    if (empty) {
      // op1 generator is e_s = position 0, op2 is e_t = position 1
      cls.u = value_on({0});
      cls.v = value_on({1});
    }
    return cls;
  }
  if (F.coh == 2) {
    cls.u = value_on({0, 1});
    return cls;
  }
  throw std::invalid_argument("class_of: unsupported degree");
}

}  // namespace dsb
