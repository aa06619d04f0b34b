#pragma once

// Exact arithmetic in the coefficient field Q[d]/(p(d)) where d = 2cos(pi/m)
// for a finite dihedral order m, or an explicit rational d for the infinite
// group. Also hosts the two-color quantum numbers [k].

#include <gmpxx.h>

#include <array>
#include <cassert>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsb {

using Rational = mpq_class;

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Coefficient field data. For m in {2,3} and m = infinity the minimal
// polynomial is linear and the field is Q itself; for m in {4,5,6} it is a
// real quadratic extension with d^2 = red1*d + red0.
struct Realm {
  int m = 0;  // 0 encodes the infinite dihedral group
  bool quadratic = false;
  Rational delta_value;     // value of d when !quadratic
  Rational red0, red1;      // d^2 = red1*d + red0 when quadratic

  static Realm finite(int m) {
    Realm r;
    r.m = m;
    switch (m) {
      case 2: r.quadratic = false; r.delta_value = 0; break;
      case 3: r.quadratic = false; r.delta_value = 1; break;
      case 4: r.quadratic = true; r.red0 = 2; r.red1 = 0; break;  // x^2-2
      case 5: r.quadratic = true; r.red0 = 1; r.red1 = 1; break;  // x^2-x-1
      case 6: r.quadratic = true; r.red0 = 3; r.red1 = 0; break;  // x^2-3
      default: throw std::invalid_argument("realm: m must be in 2..6 or infinite");
    }
    return r;
  }
  static Realm infinite(const Rational& delta = Rational(3)) {
    Realm r;
    r.m = 0;
    r.quadratic = false;
    r.delta_value = delta;
    return r;
  }
  bool is_finite() const { return m != 0; }

  // Minimal polynomial of 2cos(pi/m), as coefficients {c0, c1, c2} of
  // c0 + c1 x + c2 x^2, monic of the appropriate degree.
  static std::array<Rational, 3> minimal_poly(int m) {
    switch (m) {
      case 2: return {0, 1, 0};
      case 3: return {-1, 1, 0};
      case 4: return {-2, 0, 1};
      case 5: return {-1, -1, 1};
      case 6: return {-3, 0, 1};
      default: throw std::invalid_argument("minimal_poly: m must be in 2..6");
    }
  }
};

// Element of the coefficient field, a + b*d reduced mod p(d).
class Fq {
 public:
  Fq() : realm_(nullptr), a_(0), b_(0) {}
  Fq(const Realm* realm, Rational a, Rational b = 0)
      : realm_(realm), a_(std::move(a)), b_(std::move(b)) {
    if (realm_ && !realm_->quadratic) {
      assert(b_ == 0);
    }
  }

  const Realm* realm() const { return realm_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  friend Fq operator+(const Fq& x, const Fq& y) {
    return Fq(x.pick(y), x.a_ + y.a_, x.b_ + y.b_);
  }
  friend Fq operator-(const Fq& x, const Fq& y) {
    return Fq(x.pick(y), x.a_ - y.a_, x.b_ - y.b_);
  }
  Fq operator-() const { return Fq(realm_, -a_, -b_); }
  friend Fq operator*(const Fq& x, const Fq& y) {
    const Realm* r = x.pick(y);
    // (a1 + b1 d)(a2 + b2 d) = a1a2 + (a1b2 + a2b1) d + b1b2 d^2
    Rational a = x.a_ * y.a_;
    Rational b = x.a_ * y.b_ + x.b_ * y.a_;
    Rational c = x.b_ * y.b_;
    if (c != 0) {
      a += c * r->red0;
      b += c * r->red1;
    }
    return Fq(r, std::move(a), std::move(b));
  }
  Fq& operator+=(const Fq& y) { *this = *this + y; return *this; }
  Fq& operator-=(const Fq& y) { *this = *this - y; return *this; }
  Fq& operator*=(const Fq& y) { *this = *this * y; return *this; }

  Fq inv() const {
    if (is_zero()) throw std::domain_error("Fq: inversion of zero");
    if (b_ == 0) return Fq(realm_, 1 / a_, 0);
    // Conjugate d' = red1 - d: (a + b d)(a + b red1 - b d) lands in Q.
    Rational n = a_ * a_ + a_ * b_ * realm_->red1 - b_ * b_ * realm_->red0;
    assert(n != 0);
    return Fq(realm_, (a_ + b_ * realm_->red1) / n, -b_ / n);
  }
  friend Fq operator/(const Fq& x, const Fq& y) { return x * y.inv(); }

  friend bool operator==(const Fq& x, const Fq& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Fq& x, const Fq& y) { return !(x == y); }
  friend bool operator<(const Fq& x, const Fq& y) {
    if (int c = cmp(x.a_, y.a_)) return c < 0;
    return cmp(x.b_, y.b_) < 0;
  }

  std::string str() const {
    if (b_ == 0) return rat_str(a_);
    std::string s;
    if (a_ != 0) s = rat_str(a_) + (b_ > 0 ? "+" : "");
    if (b_ == 1) s += "d";
    else if (b_ == -1) s += "-d";
    else s += rat_str(b_) + "*d";
    return s;
  }

 private:
  const Realm* pick(const Fq& y) const {
    const Realm* r = realm_ ? realm_ : y.realm_;
    assert(!realm_ || !y.realm_ || realm_ == y.realm_);
    return r;
  }
  const Realm* realm_;
  Rational a_, b_;
};

// Field-level access to a realm: constants and quantum numbers.
class Scalars {
 public:
  explicit Scalars(Realm realm) : realm_(std::move(realm)) {
    qnums_.push_back(zero());
    qnums_.push_back(one());
  }

  const Realm& realm() const { return realm_; }
  Fq zero() const { return Fq(&realm_, 0, 0); }
  Fq one() const { return Fq(&realm_, 1, 0); }
  Fq rat(const Rational& r) const { return Fq(&realm_, r, 0); }
  Fq rat(long n, long d = 1) const { return Fq(&realm_, Rational(n, d), 0); }
  // The image of d = [2] in the field.
  Fq delta() const {
    if (realm_.quadratic) return Fq(&realm_, 0, 1);
    return Fq(&realm_, realm_.delta_value, 0);
  }

  // [k] via [0]=0, [1]=1, [k+1] = d[k] - [k-1].
  Fq qnum(int k) const {
    if (k < 0) throw std::invalid_argument("qnum: k must be nonnegative");
    while ((int)qnums_.size() <= k) {
      size_t n = qnums_.size();
      qnums_.push_back(delta() * qnums_[n - 1] - qnums_[n - 2]);
    }
    return qnums_[k];
  }

 private:
  Realm realm_;
  mutable std::vector<Fq> qnums_;
};

}  // namespace dsb
