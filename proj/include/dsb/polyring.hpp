#pragma once

// The graded polynomial ring R = k[a_s] or k[a_s, a_t] with internal degree 2
// per variable, the dihedral action, Demazure operators and the distinguished
// elements rho_s, rho_t, gamma_s = rho_s s(rho_s).

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

#include "dsb/scalars.hpp"

namespace dsb {

enum Color : uint8_t { S = 0, T = 1 };
inline Color other(Color c) { return c == S ? T : S; }
inline char color_char(Color c) { return c == S ? 's' : 't'; }

// Monomial a_s^a * a_t^b. Internal degree 2(a+b).
struct Mon {
  uint8_t a = 0, b = 0;
  int deg() const { return 2 * (int(a) + int(b)); }
  friend bool operator<(const Mon& x, const Mon& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
  friend bool operator==(const Mon& x, const Mon& y) {
    return x.a == y.a && x.b == y.b;
  }
  Mon operator*(const Mon& y) const {
    return Mon{uint8_t(a + y.a), uint8_t(b + y.b)};
  }
  int exp(Color c) const { return c == S ? a : b; }
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Fq& c) {
    if (!c.is_zero()) coef_[Mon{}] = c;
  }

  static Poly mono(Mon m, const Fq& c) {
    Poly p;
    if (!c.is_zero()) p.coef_[m] = c;
    return p;
  }

  const std::map<Mon, Fq>& terms() const { return coef_; }
  bool is_zero() const { return coef_.empty(); }

  bool is_constant() const {
    return coef_.empty() || (coef_.size() == 1 && coef_.begin()->first == Mon{});
  }
  Fq constant_term(const Scalars& k) const {
    auto it = coef_.find(Mon{});
    return it == coef_.end() ? k.zero() : it->second;
  }

  // -1 for the zero polynomial, else the (top) internal degree.
  int degree() const {
    int d = -1;
    for (auto& [m, c] : coef_) d = std::max(d, m.deg());
    return d;
  }
  bool homogeneous(int d) const {
    for (auto& [m, c] : coef_)
      if (m.deg() != d) return false;
    return true;
  }

  void add_term(Mon m, const Fq& c) {
    if (c.is_zero()) return;
    auto it = coef_.find(m);
    if (it == coef_.end()) {
      coef_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) coef_.erase(it);
    }
  }

  friend Poly operator+(const Poly& x, const Poly& y) {
    Poly r = x;
    for (auto& [m, c] : y.coef_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& x, const Poly& y) {
    Poly r = x;
    for (auto& [m, c] : y.coef_) r.add_term(m, -c);
    return r;
  }
  Poly operator-() const {
    Poly r;
    for (auto& [m, c] : coef_) r.coef_.emplace(m, -c);
    return r;
  }
  friend Poly operator*(const Poly& x, const Poly& y) {
    Poly r;
    for (auto& [mx, cx] : x.coef_)
      for (auto& [my, cy] : y.coef_) r.add_term(mx * my, cx * cy);
    return r;
  }
  Poly operator*(const Fq& c) const {
    Poly r;
    if (c.is_zero()) return r;
    for (auto& [m, k] : coef_) {
      Fq v = k * c;
      if (!v.is_zero()) r.coef_.emplace(m, v);
    }
    return r;
  }
  Poly& operator+=(const Poly& y) { *this = *this + y; return *this; }
  Poly& operator-=(const Poly& y) { *this = *this - y; return *this; }

  friend bool operator==(const Poly& x, const Poly& y) {
    return x.coef_ == y.coef_;
  }
  friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }
  friend bool operator<(const Poly& x, const Poly& y) {
    return x.coef_ < y.coef_;
  }

  // Exact division by a_c; throws if not divisible.
  Poly div_alpha(Color c) const {
    Poly r;
    for (auto& [m, k] : coef_) {
      Mon q = m;
      if (c == S) {
        if (m.a == 0) throw std::domain_error("div_alpha: not divisible");
        q.a--;
      } else {
        if (m.b == 0) throw std::domain_error("div_alpha: not divisible");
        q.b--;
      }
      r.coef_.emplace(q, k);
    }
    return r;
  }

  std::string str() const {
    if (coef_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : coef_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      if (m.a) os << "*as^" << int(m.a);
      if (m.b) os << "*at^" << int(m.b);
    }
    return os.str();
  }

 private:
  std::map<Mon, Fq> coef_;
};

// A rank 1 or rank 2 symmetric realization over the realm's field, with
// a_st = a_ts = -d and the canonical rho elements.
class Realization {
 public:
  Realization(Realm realm, int rank) : k_(std::move(realm)), rank_(rank) {
    if (rank != 1 && rank != 2)
      throw std::invalid_argument("realization: rank must be 1 or 2");
    if (rank == 2) {
      // local non-degeneracy: 4 - a_st a_ts = 4 - d^2 invertible
      Fq nd = k_.rat(4) - k_.delta() * k_.delta();
      if (nd.is_zero())
        throw std::invalid_argument("realization: 4 - d^2 vanishes");
    }
  }

  const Scalars& scalars() const { return k_; }
  const Realm& realm() const { return k_.realm(); }
  int rank() const { return rank_; }
  Fq a_st() const { return -k_.delta(); }  // <alpha_s^v, alpha_t>

  Poly alpha(Color c) const {
    if (rank_ == 1 && c == T)
      throw std::invalid_argument("alpha: rank 1 has no a_t");
    return Poly::mono(c == S ? Mon{1, 0} : Mon{0, 1}, k_.one());
  }

  // Pairing <alpha_c^v, x> for linear x.
  Fq coroot_pair(Color c, const Poly& x) const {
    Fq r = k_.zero();
    for (auto& [m, v] : x.terms()) {
      if (m.deg() != 2) throw std::invalid_argument("coroot_pair: not linear");
      if (m.exp(c) == 1) r += v * k_.rat(2);
      else r += v * a_st();
    }
    return r;
  }

  // rho_s = (2 a_s - a_ts a_t)/(4 - a_ts a_st) in rank 2, a_s/2 in rank 1.
  Poly rho(Color c) const {
    if (rank_ == 1) return alpha(c) * k_.rat(1, 2);
    Fq den = (k_.rat(4) - k_.delta() * k_.delta()).inv();
    return (alpha(c) * k_.rat(2) - alpha(other(c)) * a_st()) * den;
  }

  // Ring automorphism extending the reflection c on V*.
  Poly reflect(Color c, const Poly& f) const {
    Poly img_self = -alpha(c);  // c(a_c) = -a_c
    Poly img_other;
    if (rank_ == 2) img_other = alpha(other(c)) - alpha(c) * a_st();
    Poly r;
    for (auto& [m, v] : f.terms()) {
      Poly t(v);
      const Poly& self_img = img_self;
      for (int i = 0; i < m.exp(c); i++) t = t * self_img;
      for (int i = 0; i < m.exp(other(c)); i++) t = t * img_other;
      r += t;
    }
    return r;
  }

  // Demazure operator (f - c(f))/a_c.
  Poly demazure(Color c, const Poly& f) const {
    return (f - reflect(c, f)).div_alpha(c);
  }

  // f = e + a_c * o with e, o both c-invariant.
  std::pair<Poly, Poly> even_odd_split(Color c, const Poly& f) const {
    Poly o = demazure(c, f) * k_.rat(1, 2);
    Poly e = (f + reflect(c, f)) * k_.rat(1, 2);
    return {e, o};
  }

  Poly gamma(Color c) const {
    Poly r = rho(c);
    return r * reflect(c, r);
  }

  bool invariant(Color c, const Poly& f) const { return reflect(c, f) == f; }

 private:
  Scalars k_;
  int rank_;
};

}  // namespace dsb
