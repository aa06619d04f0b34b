#include <catch2/catch_amalgamated.hpp>

#include "dsb/ext.hpp"
#include "dsb/hecke.hpp"

using namespace dsb;

namespace {
Realization inf2() { return Realization(Realm::infinite(3), 2); }

std::vector<int> gens_of(const HilbertData& h, int rank) {
  auto cert = free_generators(h, rank);
  REQUIRE(cert.generators.has_value());
  return *cert.generators;
}
}  // namespace

TEST_CASE("Hochschild cohomology of B_s") {
  auto R = inf2();
  ExtEngine E(R);
  Word ws = parse_word("s");
  auto hh = E.hh_all(ws, -8, 16);
  CHECK(gens_of(hh[0], 2) == std::vector<int>{1});
  CHECK(gens_of(hh[1], 2) == std::vector<int>{-3, -1});
  CHECK(gens_of(hh[2], 2) == std::vector<int>{-5});
}

TEST_CASE("Hochschild cohomology of R") {
  auto R = inf2();
  ExtEngine E(R);
  auto hh = E.hh_all({}, -8, 16);
  CHECK(gens_of(hh[0], 2) == std::vector<int>{0});
  CHECK(gens_of(hh[1], 2) == std::vector<int>{-2, -2});
  CHECK(gens_of(hh[2], 2) == std::vector<int>{-4});

  Realization R1(Realm::infinite(3), 1);
  ExtEngine E1(R1);
  auto hh1 = E1.hh_all({}, -8, 16);
  CHECK(gens_of(hh1[0], 1) == std::vector<int>{0});
  CHECK(gens_of(hh1[1], 1) == std::vector<int>{-2});
}

TEST_CASE("HH is independent of the Koszul basis of V*") {
  auto R = inf2();
  ExtEngine E(R);
  for (auto wstr : {"s", "st", "tst"}) {
    Word w = parse_word(wstr);
    auto a = E.hh_all(w, -6, 10, 0);
    auto b = E.hh_all(w, -6, 10, 1);
    for (int i = 0; i <= 2; i++) CHECK(a[size_t(i)] == b[size_t(i)]);
  }
}

TEST_CASE("double complex for Ext(B_t, BS(w))") {
  auto R = inf2();
  ExtEngine E(R);
  {
    // w = (s): Ext^0 has one free generator in display degree 2
    auto e = E.ext_bt_all(parse_word("s"), -8, 16);
    CHECK(gens_of(e[0], 2) == std::vector<int>{2});
  }
  {
    // w = empty: Ext(B_t, R) matches HH(B_t) by biadjointness
    auto e = E.ext_bt_all({}, -8, 16);
    CHECK(gens_of(e[0], 2) == std::vector<int>{1});
    CHECK(gens_of(e[1], 2) == std::vector<int>{-3, -1});
    CHECK(gens_of(e[2], 2) == std::vector<int>{-5});
  }
  {
    // w = (s,t,s): Ext^{1,-4} is one dimensional
    auto e = E.ext_bt_all(parse_word("sts"), -4, -4);
    CHECK(e[1].dim(-4) == 1);
  }
}

TEST_CASE("adjunction: Ext^i(B_t, BS(w)) = Ext^i(R, BS(t.w))") {
  auto R = inf2();
  ExtEngine E(R);
  for (auto wstr : {"", "s", "t", "st", "sts"}) {
    Word w = parse_word(wstr);
    Word tw = concat(parse_word("t"), w);
    auto lhs = E.ext_bt_all(w, -6, 8);
    auto rhs = E.hh_all(tw, -6, 8);
    for (int i = 0; i <= 2; i++)
      CHECK(lhs[size_t(i)].equal_on(rhs[size_t(i)], -6, 8));
  }
}

TEST_CASE("vertical maps vanish on kernel slices") {
  // gamma_t^e sends ker rho_s^e(w) to zero (spectral degeneration)
  auto R = inf2();
  ExtEngine E(R);
  const Scalars& k = R.scalars();
  for (auto wstr : {"s", "ts", "sts", "tsts"}) {
    Word w = parse_word(wstr);
    SumModule M = E.word_module(w);
    for (int d = -int(w.size()); d <= 6; d++) {
      auto sb = M.basis(d);
      auto tb = M.basis(d + 2);
      if (sb.empty()) continue;
      Matrix A(tb.size(), sb.size(), k.zero());
      for (size_t j = 0; j < sb.size(); j++) {
        BimodElem b(&R, w);
        b.add(sb[j].mask, Poly::mono(sb[j].mon, k.one()));
        BimodElem img = rho_e(S, b);
        for (auto& [mask, p] : img.coords())
          for (auto& [mn, c] : p.terms())
            for (size_t i = 0; i < tb.size(); i++)
              if (tb[i].mask == mask && tb[i].mon == mn) A.at(i, j) += c;
      }
      for (auto& kv : A.kernel_basis()) {
        BimodElem x(&R, w);
        for (size_t j = 0; j < sb.size(); j++)
          if (!kv[j].is_zero()) x.add(sb[j].mask, Poly::mono(sb[j].mon, kv[j]));
        CHECK(gamma_e(T, x).is_zero());
      }
    }
  }
}

TEST_CASE("structure theorem for small words") {
  auto R = inf2();
  ExtEngine E(R);
  for (auto wstr : {"", "s", "t", "st", "sts", "tst"}) {
    auto rep = E.verify_maincohoiso(parse_word(wstr), 18);
    INFO(wstr << ": " << rep.detail);
    CHECK(rep.pass);
  }
  // finite realm: same pattern (the kernel first grows at length 5, see
  // the subexpression counts in the bimod tests)
  Realization R3(Realm::finite(3), 2);
  ExtEngine E3(R3);
  auto rep = E3.verify_maincohoiso(parse_word("stst"), 18);
  CHECK(rep.pass);
  CHECK(rep.subexpr_count == count_ker_subexpr(parse_word("stst"), 3));
}

TEST_CASE("solve_phi on (s,t,s) reproduces the explicit cocycle") {
  auto R = inf2();
  ExtEngine E(R);
  Word w = parse_word("sts");
  ExtClass phi = E.solve_phi(T, w);
  // the explicit representative:
  //   v = -a_st (x) rho_t (x) 1 (x) 1 + c_s (x) 1 (x) 1
  //       + 1 (x) 1 (x) 1 (x) a_s - 1 (x) 1 (x) c_s
  const Scalars& k = R.scalars();
  Fq a_st = R.a_st();
  Poly one(k.one());
  auto tensor = [&](std::initializer_list<Poly> fs) {
    return force_tensor(R, w, std::vector<Poly>(fs));
  };
  BimodElem v = tensor({Poly(-a_st), R.rho(T), one, one});
  // c_s (x)_t 1 (x)_s 1 = (rho_s (x) 1 - 1 (x) s(rho_s)) (x) 1 (x) 1
  v = v + tensor({R.rho(S), one, one, one});
  v = v - tensor({one, R.reflect(S, R.rho(S)), one, one});
  v = v + tensor({one, one, one, R.alpha(S)});
  v = v - tensor({one, one, R.rho(S), one});
  v = v + tensor({one, one, one, R.reflect(S, R.rho(S))});
  CHECK(phi.v == v);
  // cocycle condition holds on the nose
  CHECK(rho_e(S, phi.v) == gamma_e(T, phi.u));
  // class machinery: adding a coboundary gives an equal class
  ExtClass moved = phi;
  BimodElem x = basis_elem(R, w, 5, Poly(k.rat(2)));
  moved.u = moved.u + rho_e(S, x);
  moved.v = moved.v + gamma_e(T, x);
  CHECK(E.class_equal(phi, moved));
  CHECK_FALSE(E.class_equal(phi, phi.negated()));
}

TEST_CASE("solve_phi succeeds on (t,s,t,s)") {
  auto R = inf2();
  ExtEngine E(R);
  CHECK(m_stat(T, parse_word("tsts")) >= 4);
  ExtClass phi = E.solve_phi(T, parse_word("tsts"));
  CHECK(rho_e(S, phi.v) == gamma_e(T, phi.u));
}

TEST_CASE("indecomposable Ext closed forms") {
  auto R = inf2();
  ExtEngine E(R);
  // k = 1: direct comparison with HH(B_t)
  std::map<int, std::map<int, long>> mults;
  mults[1][0] = 1;
  CHECK(E.verify_indecomp(1, mults, 18).pass);
  // k = 2: BS(ts) = B_ts
  std::map<int, std::map<int, long>> m2;
  m2[2][0] = 1;
  CHECK(E.verify_indecomp(2, m2, 18).pass);
  // k = 3: BS(tst) = B_tst + B_t
  std::map<int, std::map<int, long>> m3;
  m3[3][0] = 1;
  m3[1][0] = 1;
  CHECK(E.verify_indecomp(3, m3, 18).pass);
}

TEST_CASE("m=2 realm passes the structure theorem") {
  Realization R2(Realm::finite(2), 2);
  ExtEngine E(R2);
  auto rep = E.verify_maincohoiso(parse_word("st"), 16);
  CHECK(rep.pass);
}

TEST_CASE("Ext^0 matches the Soergel hom formula") {
  // graded rank of hom(B_t, BS(w)) = (b_t, prod b_{w_i}) under the standard
  // pairing (delta_x, delta_y) = delta_{xy}; exponents are the display
  // degrees of the free generators of Ext^0.
  auto R = inf2();
  ExtEngine E(R);
  Hecke H(0);
  for (int len = 0; len <= 4; len++)
    for (uint32_t bits = 0; bits < (uint32_t(1) << len); bits++) {
      Word w;
      for (int i = 0; i < len; i++) w.push_back(bits >> i & 1 ? T : S);
      Hecke::Elem prod = H.unit();
      for (Color c : w) prod = H.mul(prod, H.kl(DhElt{1, c}));
      Hecke::Elem bt = H.kl(DhElt{1, T});
      std::map<int, long> want;
      for (auto& [y, c] : bt)
        for (auto& [e1, c1] : c.terms()) {
          auto it = prod.find(y);
          if (it == prod.end()) continue;
          for (auto& [e2, c2] : it->second.terms()) want[e1 + e2] += c1 * c2;
        }
      auto h = E.ext_bt_all(w, -len - 4, 14)[0];
      auto cert = free_generators(h, 2);
      REQUIRE(cert.generators.has_value());
      std::map<int, long> got;
      for (int g : *cert.generators) got[g]++;
      INFO(word_str(w));
      CHECK(got == want);
    }
}
