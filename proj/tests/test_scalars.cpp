#include <catch2/catch_amalgamated.hpp>

#include "dsb/scalars.hpp"

using namespace dsb;

TEST_CASE("quantum numbers satisfy the Chebyshev recursion") {
  Scalars k(Realm::infinite(3));
  CHECK(k.qnum(0) == k.rat(0));
  CHECK(k.qnum(1) == k.rat(1));
  CHECK(k.qnum(2) == k.delta());
  CHECK(k.qnum(4) == k.rat(21));
  // 0,1,3,8,21,55,...
  long fib[] = {0, 1, 3, 8, 21, 55, 144, 377, 987, 2584};
  for (int i = 0; i < 10; i++) CHECK(k.qnum(i) == k.rat(fib[i]));
}

TEST_CASE("minimal polynomial table") {
  auto p2 = Realm::minimal_poly(2);
  CHECK(p2[0] == 0);
  CHECK(p2[1] == 1);
  auto p3 = Realm::minimal_poly(3);
  CHECK(p3[0] == -1);
  CHECK_THROWS(Realm::minimal_poly(7));
  // verify p(2cos(pi/m)) structurally: [m] = 0 in the realm
  for (int m = 2; m <= 6; m++) {
    Scalars k(Realm::finite(m));
    CHECK(k.qnum(m).is_zero());
    for (int j = 1; j < m; j++) {
      CHECK(!k.qnum(j).is_zero());
      CHECK(k.qnum(j) * k.qnum(j).inv() == k.one());
    }
  }
}

TEST_CASE("realm m=3 kills [3]") {
  Scalars k(Realm::finite(3));
  CHECK(k.qnum(3).is_zero());
  CHECK(k.qnum(2) == k.one());
}

TEST_CASE("field arithmetic in quadratic realms") {
  Scalars k(Realm::finite(4));
  Fq d = k.delta();
  CHECK(d * d == k.rat(2));
  CHECK(d.inv() == d * k.rat(1, 2));  // 1/d = d/2 since d^2 = 2
  Scalars k6(Realm::finite(6));
  CHECK(k6.delta() * k6.delta() == k6.rat(3));
  Scalars k5(Realm::finite(5));
  CHECK(k5.qnum(5).is_zero());
  CHECK_THROWS(k5.zero().inv());
}

TEST_CASE("Chebyshev identity [k+1][k-1] = [k]^2 - 1 in every realm") {
  std::vector<Realm> realms;
  for (int m = 2; m <= 6; m++) realms.push_back(Realm::finite(m));
  realms.push_back(Realm::infinite(3));
  realms.push_back(Realm::infinite(Rational(7, 2)));
  for (auto& r : realms) {
    Scalars k(r);
    for (int q = 1; q <= 20; q++)
      CHECK(k.qnum(q + 1) * k.qnum(q - 1) == k.qnum(q) * k.qnum(q) - k.one());
  }
}

TEST_CASE("infinite realm with delta=3 keeps all [k] nonzero") {
  Scalars k(Realm::infinite(3));
  for (int q = 1; q <= 20; q++) CHECK(!k.qnum(q).is_zero());
}
