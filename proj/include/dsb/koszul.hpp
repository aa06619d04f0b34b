#pragma once

// Koszul complexes K(w) for the dihedral realization, elements of their
// exterior-tensor algebra, partial chain lifts of the bimodule generators
// (unit, counit, multiplication, comultiplication, unitor inverses), the
// contraction cocycles, super-monoidal composition and tensoring with
// Koszul signs, and on-demand extension of partial lifts by solving the
// chain condition in a degree slice.
//
// Exterior generators carry a fixed global order, unit-major with the
// gamma generator before the invariant one, so all signs are reproducible.

#include "dsb/ext.hpp"

namespace dsb {

// ----- objects ---------------------------------------------------------------

struct KUnit {
  bool empty = false;
  Color c = S;  // letter color when !empty
};

struct KoszulObj {
  const Realization* R = nullptr;
  std::vector<KUnit> units;

  static KoszulObj empty(const Realization& R) {
    KoszulObj o;
    o.R = &R;
    o.units.push_back({true, S});
    return o;
  }
  static KoszulObj letters(const Realization& R, const Word& w) {
    KoszulObj o;
    o.R = &R;
    for (Color c : w) o.units.push_back({false, c});
    return o;
  }
  size_t nfactors() const { return units.size() + 1; }
  size_t ngens() const { return 2 * units.size(); }
  int letter_count() const {
    int n = 0;
    for (auto& u : units)
      if (!u.empty) n++;
    return n;
  }
  Word word() const {
    Word w;
    for (auto& u : units)
      if (!u.empty) w.push_back(u.c);
    return w;
  }
  // generator data: global position 2u + i, i = 0 the gamma/e_s generator,
  // i = 1 the invariant/e_t one
  int gen_degree(size_t pos) const {
    const KUnit& u = units[pos / 2];
    if (!u.empty && pos % 2 == 0) return 4;  // gamma
    return 2;
  }
  // regular element a with d(gen) = a^e across factors (u, u+1)
  Poly gen_regular(size_t pos) const {
    const KUnit& u = units[pos / 2];
    if (u.empty) return pos % 2 == 0 ? R->rho(S) : R->rho(T);
    return pos % 2 == 0 ? R->gamma(u.c) : R->rho(other(u.c));
  }
  bool gen_exists(size_t pos) const {
    (void)pos;
    return true;  // rank 2 realizations only
  }
  friend bool operator==(const KoszulObj& a, const KoszulObj& b) {
    if (a.units.size() != b.units.size()) return false;
    for (size_t i = 0; i < a.units.size(); i++)
      if (a.units[i].empty != b.units[i].empty ||
          (!a.units[i].empty && a.units[i].c != b.units[i].c))
        return false;
    return true;
  }
  std::string str() const {
    std::string s;
    for (auto& u : units) s += u.empty ? '0' : color_char(u.c);
    return s.empty() ? "-" : s;
  }
};

// ----- elements --------------------------------------------------------------

struct TKey {
  uint32_t mask = 0;
  std::vector<Mon> mons;
  friend bool operator<(const TKey& a, const TKey& b) {
    if (a.mask != b.mask) return a.mask < b.mask;
    return a.mons < b.mons;
  }
  friend bool operator==(const TKey& a, const TKey& b) {
    return a.mask == b.mask && a.mons == b.mons;
  }
};

class TElem {
 public:
  TElem() = default;
  explicit TElem(const KoszulObj& o) : obj_(&o) {}
  const KoszulObj* obj() const { return obj_; }
  const std::map<TKey, Fq>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  void add(const TKey& k, const Fq& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = c_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }
  friend TElem operator+(const TElem& a, const TElem& b) {
    TElem r = a;
    if (!r.obj_) r.obj_ = b.obj_;
    for (auto& [k, c] : b.c_) r.add(k, c);
    return r;
  }
  friend TElem operator-(const TElem& a, const TElem& b) {
    TElem r = a;
    if (!r.obj_) r.obj_ = b.obj_;
    for (auto& [k, c] : b.c_) r.add(k, -c);
    return r;
  }
  TElem scaled(const Fq& f) const {
    TElem r(*obj_);
    for (auto& [k, c] : c_) r.add(k, c * f);
    return r;
  }
  friend bool operator==(const TElem& a, const TElem& b) {
    return a.c_ == b.c_;
  }

  static TElem unit_elem(const KoszulObj& o) {
    TElem e(o);
    TKey k;
    k.mons.resize(o.nfactors());
    e.add(k, o.R->scalars().one());
    return e;
  }
  static TElem gen_elem(const KoszulObj& o, std::initializer_list<int> gens) {
    TElem e(o);
    TKey k;
    k.mons.resize(o.nfactors());
    for (int g : gens) k.mask |= uint32_t(1) << g;
    e.add(k, o.R->scalars().one());
    return e;
  }

  // multiply the R-part at a tensor factor by a polynomial
  TElem mul_at(size_t factor, const Poly& p) const {
    TElem r(*obj_);
    for (auto& [k, c] : c_)
      for (auto& [m, pc] : p.terms()) {
        TKey nk = k;
        nk.mons[factor] = nk.mons[factor] * m;
        r.add(nk, c * pc);
      }
    return r;
  }

  int degree() const {
    for (auto& [k, c] : c_) {
      int d = 0;
      for (auto& m : k.mons) d += m.deg();
      for (size_t g = 0; g < obj_->ngens(); g++)
        if (k.mask >> g & 1) d += obj_->gen_degree(g);
      return d - obj_->letter_count();
    }
    throw std::logic_error("degree of zero element");
  }
  int level() const {  // cohomological degree = -popcount
    for (auto& [k, c] : c_) return -__builtin_popcount(k.mask);
    throw std::logic_error("level of zero element");
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto& [k, c] : c_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")[m" + std::to_string(k.mask) + ";";
      for (auto& m : k.mons)
        s += " as^" + std::to_string(m.a) + "at^" + std::to_string(m.b);
      s += "]";
    }
    return s;
  }

 private:
  const KoszulObj* obj_ = nullptr;
  std::map<TKey, Fq> c_;
};

// Koszul differential with Leibniz signs.
inline TElem koszul_d(const TElem& x) {
  const KoszulObj& o = *x.obj();
  TElem r(o);
  for (auto& [k, c] : x.terms()) {
    int below = 0;
    for (size_t g = 0; g < o.ngens(); g++) {
      if (!(k.mask >> g & 1)) continue;
      Fq sign = (below % 2 == 0) ? c : -c;
      Poly a = o.gen_regular(g);
      size_t u = g / 2;
      TKey base = k;
      base.mask &= ~(uint32_t(1) << g);
      // a (x) 1 at factor u minus 1 (x) a at factor u+1
      for (auto& [m, pc] : a.terms()) {
        TKey k1 = base;
        k1.mons[u] = k1.mons[u] * m;
        r.add(k1, sign * pc);
        TKey k2 = base;
        k2.mons[u + 1] = k2.mons[u + 1] * m;
        r.add(k2, -(sign * pc));
      }
      below++;
    }
  }
  return r;
}

// The quasi-isomorphism q: level-0 part -> BS(letters); exterior part to 0.
inline BimodElem koszul_q(const TElem& x) {
  const KoszulObj& o = *x.obj();
  Word w = o.word();
  const Realization& R = *o.R;
  BimodElem out(&R, w);
  for (auto& [k, c] : x.terms()) {
    if (k.mask != 0) continue;
    // merge factors across empty units
    std::vector<Poly> fs;
    Poly cur = Poly::mono(k.mons[0], c);
    for (size_t u = 0; u < o.units.size(); u++) {
      Poly next = Poly::mono(k.mons[u + 1], R.scalars().one());
      if (o.units[u].empty) {
        cur = cur * next;
      } else {
        fs.push_back(cur);
        cur = next;
      }
    }
    fs.push_back(cur);
    out = out + force_tensor(R, w, fs);
  }
  return out;
}

// Canonical level-0 lift of a bimodule element into the Koszul complex.
inline TElem koszul_lift01(const KoszulObj& o, const BimodElem& b) {
  if (!(o.word() == b.word()))
    throw std::invalid_argument("koszul_lift01: word mismatch");
  if (o.letter_count() != int(o.units.size()))
    throw std::invalid_argument("koszul_lift01: object has empty units");
  TElem r(o);
  const Word& w = b.word();
  for (auto& [mask, p] : b.coords())
    for (auto& [m, c] : p.terms()) {
      TKey k;
      k.mons.resize(o.nfactors());
      for (size_t i = 0; i < w.size(); i++)
        if (mask >> i & 1) k.mons[i] = Mon{uint8_t(w[i] == S), uint8_t(w[i] == T)};
      k.mons[w.size()] = m;
      r.add(k, c);
    }
  return r;
}

// decompose a linear form into rho coordinates: x = cs rho_s + ct rho_t
inline std::pair<Fq, Fq> rho_coords(const Realization& R, const Poly& x) {
  return {R.coroot_pair(S, x), R.coroot_pair(T, x)};
}

}  // namespace dsb
