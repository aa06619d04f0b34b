#pragma once

// The semantic relation verifier: every relation in the catalog is built as
// a composite of chain lifts on both sides, pushed to a class over K_0 or a
// single-letter source, and decided by class_equal. A relation that only
// fails by a global sign is reported as a sign-flip pass rather than
// silently accepted.

#include "dsb/chainlift.hpp"

namespace dsb {

struct RelationReport {
  std::string name;
  std::string realm;
  std::string words;
  bool pass = false;
  bool sign_flip = false;
  bool skipped = false;
  std::string detail;
};

class RelationVerifier {
 public:
  explicit RelationVerifier(const ExtEngine& E) : E_(&E), R_(&E.realization()) {}

  // ---- building blocks -------------------------------------------------

  ChainMap id_of(const Word& w) const {
    return identity_map(make_obj(KoszulObj::letters(*R_, w)));
  }
  ChainMap id_letter(Color c) const { return id_of(Word{c}); }

  // cup for one color: K_0 -> K(c, c)
  ChainMap cup(Color c) const {
    return compose(comult_lift(*R_, c), unit_lift(*R_, c));
  }
  // cap for one color: K(c, c) -> K_0
  ChainMap cap(Color c) const {
    return compose(counit_lift(*R_, c), mult_lift(*R_, c));
  }

  // cup for a word: K_0 -> K(v . reverse(v))
  ChainMap cup_word(const Word& v) const {
    if (v.empty()) throw std::invalid_argument("cup_word: empty word");
    ChainMap out = cup(v[0]);
    for (size_t i = 1; i < v.size(); i++) {
      // grow outside-in: K(v0..v_{i-1} | reverse) -> insert an empty unit in
      // the middle -> put the next cup there
      std::vector<ChainMap> maps;
      for (size_t j = 0; j + 1 < i; j++) maps.push_back(id_letter(v[j]));
      maps.push_back(rinv_lift(*R_, v[i - 1]));
      for (size_t j = 0; j < i; j++) maps.push_back(id_letter(v[i - 1 - j]));
      ChainMap insert_empty = tensor_chain(maps);
      std::vector<ChainMap> maps2;
      for (size_t j = 0; j < i; j++) maps2.push_back(id_letter(v[j]));
      maps2.push_back(cup(v[i]));
      for (size_t j = 0; j < i; j++) maps2.push_back(id_letter(v[i - 1 - j]));
      ChainMap widen = tensor_chain(maps2);
      out = compose(widen, compose(insert_empty, out));
    }
    return out;
  }

  // bend the source of F: K(v) -> K(w) into f-hat: K_0 -> K(w . reverse(v))
  ChainMap bend_source(const ChainMap& F) const {
    Word v = F.src->word();
    if (v.empty()) return F;
    Word vbar = reversed(v);
    ChainMap c = cup_word(v);
    ChainMap big = tensor_map(F, identity_map(make_obj(KoszulObj::letters(*R_, vbar))));
    return compose(big, c);
  }

  bool classes_match(const ChainMap& lhs, const ChainMap& rhs,
                     RelationReport& rep) const {
    ChainMap L = lhs, Rm = rhs;
    if (L.src->units.size() != 1 || !(*L.src == *Rm.src)) {
      L = bend_source(lhs);
      Rm = bend_source(rhs);
    }
    ExtClass cl = class_of(*E_, L);
    ExtClass cr = class_of(*E_, Rm);
    if (E_->class_equal(cl, cr)) {
      rep.pass = true;
      return true;
    }
    if (E_->class_equal(cl, cr.negated())) {
      rep.pass = true;
      rep.sign_flip = true;
      rep.detail = "holds with a global sign flip";
      return true;
    }
    rep.pass = false;
    rep.detail = "classes differ";
    return false;
  }

  // ---- exterior algebra of V helpers ------------------------------------

  // reflect c on Lambda(V): c(a_c^v) = -a_c^v, c(a_d^v) = a_d^v - a c(a_c^v)
  ExtV ext_reflect(Color c, const ExtV& x) const {
    const Scalars& k = R_->scalars();
    Fq a = R_->a_st();
    ExtV out;
    auto addv = [&](uint8_t m, const Fq& v) {
      if (v.is_zero()) return;
      out[m] += v;
      if (out[m].is_zero()) out.erase(m);
    };
    for (auto& [m, v] : x) {
      if (m == 0) {
        addv(0, v);
      } else if (m == 1 || m == 2) {  // a_s^v or a_t^v
        bool own = (m == (c == S ? 1 : 2));
        if (own) {
          addv(m, -v);
        } else {
          addv(m, v);
          addv(uint8_t(c == S ? 1 : 2), -(v * a));
        }
      } else {  // wedge: c(v ^ w) = c(v) ^ c(w) = -(v ^ w)
        addv(3, -v);
      }
    }
    (void)k;
    return out;
  }

  // exterior Demazure: a_c contraction then the canonical representative
  // modulo a_c^v (drop its component)
  ExtV ext_demazure(Color c, const ExtV& x) const {
    Fq two = R_->scalars().rat(2);
    Fq a = R_->a_st();
    uint8_t own = (c == S) ? 1 : 2;
    ExtV out;
    auto addv = [&](uint8_t m, const Fq& v) {
      if (v.is_zero()) return;
      out[m] += v;
      if (out[m].is_zero()) out.erase(m);
    };
    for (auto& [m, v] : x) {
      if (m == 0) continue;
      if (m == 1 || m == 2) {
        // <a_x^v, a_c> = 2 if x == c else a
        addv(0, v * (m == own ? two : a));
      } else {
        // a_c -| (a_s^v ^ a_t^v) = <a_s^v,a_c> a_t^v - <a_t^v,a_c> a_s^v,
        // then drop the a_c^v component
        uint8_t othergen = (c == S) ? 2 : 1;
        Fq coef = (c == S) ? two : -a;  // coefficient of a_t^v for c=s
        if (c == S)
          addv(othergen, v * two);
        else
          addv(othergen, -(v * two));
        (void)coef;
      }
    }
    return out;
  }

  // a polynomial box on the left of everything
  ChainMap boxed_left(const ChainMap& F, const Poly& p) const {
    return compose(lmul_map(F.tgt, p), F);
  }

  // exterior box acting on the left of a map out of K(w): insert an empty
  // unit in front, contract, collapse
  ChainMap left_ext_box(const ChainMap& F, const ExtV& xi) const {
    auto tgt = F.tgt;
    if (tgt->units.empty() || tgt->units[0].empty)
      throw std::invalid_argument("left_ext_box: target must start with a letter");
    // K(w) -> K(0, w) via linv on the first letter
    std::vector<ChainMap> ins;
    ins.push_back(linv_lift(*R_, tgt->units[0].c));
    for (size_t j = 1; j < tgt->units.size(); j++)
      ins.push_back(id_letter(tgt->units[j].c));
    ChainMap insert = tensor_chain(ins);
    ChainMap contract = iota_contract(insert.tgt, 0, xi);
    ChainMap coll = collapse_empty(contract.tgt, 0);
    return compose_chain({F, insert, contract, coll});
  }

  ChainMap right_ext_box(const ChainMap& F, const ExtV& xi) const {
    auto tgt = F.tgt;
    size_t n = tgt->units.size();
    if (n == 0 || tgt->units[n - 1].empty)
      throw std::invalid_argument("right_ext_box: target must end with a letter");
    std::vector<ChainMap> ins;
    for (size_t j = 0; j + 1 < n; j++) ins.push_back(id_letter(tgt->units[j].c));
    ins.push_back(rinv_lift(*R_, tgt->units[n - 1].c));
    ChainMap insert = tensor_chain(ins);
    ChainMap contract = iota_contract(insert.tgt, n, xi);
    ChainMap coll = collapse_empty(contract.tgt, n);
    return compose_chain({F, insert, contract, coll});
  }

  // counit at the last letter with the unitor applied (the primed counit)
  ChainMap trailing_counit(const Word& w) const {
    std::vector<ChainMap> maps;
    for (size_t j = 0; j + 1 < w.size(); j++) maps.push_back(id_letter(w[j]));
    maps.push_back(counit_lift(*R_, w.back()));
    ChainMap e = tensor_chain(maps);
    return compose(collapse_empty(e.tgt, w.size() - 1), e);
  }

  // counit at letter i of w, collapsed into the neighbour
  ChainMap counit_at(const Word& w, size_t i) const {
    std::vector<ChainMap> maps;
    for (size_t j = 0; j < w.size(); j++) {
      if (j == i)
        maps.push_back(counit_lift(*R_, w[j]));
      else
        maps.push_back(id_letter(w[j]));
    }
    ChainMap e = tensor_chain(maps);
    return compose(collapse_empty(e.tgt, i), e);
  }

  ChainMap comult_at(const Word& w, size_t i) const {
    std::vector<ChainMap> maps;
    for (size_t j = 0; j < w.size(); j++) {
      if (j == i)
        maps.push_back(comult_lift(*R_, w[j]));
      else
        maps.push_back(id_letter(w[j]));
    }
    return tensor_chain(maps);
  }

  // ---- the catalog -------------------------------------------------------

  RelationReport verify(const std::string& name) const {
    RelationReport rep;
    rep.name = name;
    rep.realm = realm_str();
    try {
      dispatch(name, rep);
    } catch (const std::exception& e) {
      rep.pass = false;
      rep.detail = std::string("exception: ") + e.what();
    }
    return rep;
  }

  static std::vector<std::string> one_color_names() {
    return {"barbell", "hdot-annihilation", "exterior-forcing",
            "hochschild-jumping", "one-color-cohomology",
            "coroot-annihilation"};
  }
  static std::vector<std::string> two_color_names() {
    return {"4ext-reduction",  "4ext-reduction-right", "4ext-reduction-ss",
            "4ext-reduction-full", "4ext-rotation",    "newgen-reduct",
            "newgen-mult",     "newgen-rotation",      "newgen-square",
            "two-color-jumping", "cohomology-relation-s",
            "cohomology-relation-t"};
  }
  static std::vector<std::string> m2_names() {
    return {"m2-hochschild-slide", "m2-absorption"};
  }

 private:
  const ExtEngine* E_;
  const Realization* R_;

  std::string realm_str() const {
    const Realm& r = R_->realm();
    if (r.is_finite()) return "m=" + std::to_string(r.m);
    return "m=inf d=" + rat_str(r.delta_value);
  }

  ExtV ext_unit(Color c) const {
    ExtV v;
    v[uint8_t(c == S ? 1 : 2)] = R_->scalars().one();
    return v;
  }

  void dispatch(const std::string& name, RelationReport& rep) const {
    const Realization& R = *R_;
    const Scalars& k = R.scalars();
    ExtEngine const& E = *E_;

    if (name == "barbell") {
      // dot hdot dot = box(a_s^v) as classes K_0 -> K_0
      auto lhs = compose_chain({unit_lift(R, S),
                                phi_contract(make_obj(KoszulObj::letters(R, {S})), 0),
                                counit_lift(R, S)});
      auto e0 = make_obj(KoszulObj::empty(R));
      auto rhs = iota_contract(e0, 0, ext_unit(S));
      rep.words = "-";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "hdot-annihilation") {
      auto Ks = make_obj(KoszulObj::letters(R, {S}));
      auto phi = phi_contract(Ks, 0);
      auto sq = compose(phi, phi);
      bool ok = true;
      for (size_t g = 0; g < Ks->ngens(); g++)
        ok = ok && sq.apply(TElem::gen_elem(*Ks, {int(g)})).is_zero();
      ok = ok && sq.apply(TElem::gen_elem(*Ks, {0, 1})).is_zero();
      rep.pass = ok;
      rep.words = "s";
      if (!ok) rep.detail = "phi^2 nonzero";
      return;
    }

    if (name == "exterior-forcing") {
      rep.words = "s";
      ExtV xs = ext_unit(S), xt = ext_unit(T);
      ExtV wedge;
      wedge[3] = k.one();
      for (const ExtV& x : {xs, xt, wedge}) {
        auto Ks = make_obj(KoszulObj::letters(R, {S}));
        auto idm = identity_map(Ks);
        ChainMap lhs = right_ext_box(idm, x);
        ChainMap rhs1 = left_ext_box(idm, ext_reflect(S, x));
        // enddot, box(d_s x), hdot-startdot
        ExtV dx = ext_demazure(S, x);
        ChainMap eps = counit_lift(R, S);
        ChainMap mid = iota_contract(eps.tgt, 0, dx);
        ChainMap top = compose(phi_contract(Ks, 0), unit_lift(R, S));
        ChainMap rhs2 = compose_chain({eps, mid, top});
        ChainMap rhs = add_maps(rhs1, rhs2);
        RelationReport sub;
        if (!classes_match(lhs, rhs, sub)) {
          rep.pass = false;
          rep.detail = "failed for an exterior element";
          return;
        }
        rep.sign_flip = rep.sign_flip || sub.sign_flip;
      }
      rep.pass = true;
      return;
    }

    if (name == "hochschild-jumping") {
      Word ss = parse_word("ss");
      auto o = make_obj(KoszulObj::letters(R, ss));
      auto lhs = phi_contract(o, 0);
      auto rhs = phi_contract(o, 1);
      rep.words = "ss";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "one-color-cohomology") {
      // box(a_s^v) after startdot = a_s * (hdot startdot)
      auto eta = unit_lift(R, S);
      ChainMap lhs = left_ext_box(eta, ext_unit(S));
      auto Ks = make_obj(KoszulObj::letters(R, {S}));
      ChainMap rhs = boxed_left(compose(phi_contract(Ks, 0), eta), R.alpha(S));
      rep.words = "s";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "coroot-annihilation") {
      auto Ks = make_obj(KoszulObj::letters(R, {S}));
      auto phi = phi_contract(Ks, 0);
      ChainMap a = left_ext_box(phi, ext_unit(S));
      ChainMap b = right_ext_box(phi, ext_unit(S));
      ExtClass ca = class_of(E, a), cb = class_of(E, b);
      rep.words = "s";
      rep.pass = E.class_zero(ca) && E.class_zero(cb);
      if (!rep.pass) rep.detail = "box(a_s^v) against the hdot is nonzero";
      return;
    }

    if (name == "4ext-reduction") {
      Word w = parse_word("sts");
      auto Phi = phi_new_lift(E, T, w);
      ChainMap lhs = compose(trailing_counit(w), Phi);
      // rhs1 = (etaExt_s (x) id_t) tau_t ; rhs2 = (eta_s (x) id_t)(id (x)
      // phi_t) tau_t
      ChainMap tau = linv_lift(R, T);
      ChainMap rhs1 = compose(tensor_map(eta_ext_lift(R, S), id_letter(T)), tau);
      ChainMap phi_t_mid = tensor_map(
          identity_map(make_obj(KoszulObj::empty(R))),
          phi_contract(make_obj(KoszulObj::letters(R, {T})), 0));
      ChainMap rhs2 = compose_chain(
          {tau, phi_t_mid, tensor_map(unit_lift(R, S), id_letter(T))});
      ChainMap rhs = add_maps(rhs1, scale_map(rhs2, -k.one()));
      rep.words = "sts";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "4ext-reduction-right") {
      Word w = parse_word("sts");
      auto Phi = phi_new_lift(E, T, w);
      ChainMap lhs = compose(counit_at(w, 0), Phi);
      ChainMap sig = rinv_lift(R, T);
      ChainMap rhs1 = compose(tensor_map(id_letter(T), eta_ext_lift(R, S)), sig);
      ChainMap phi_t_mid = tensor_map(
          phi_contract(make_obj(KoszulObj::letters(R, {T})), 0),
          identity_map(make_obj(KoszulObj::empty(R))));
      ChainMap rhs2 = compose_chain(
          {sig, phi_t_mid, tensor_map(id_letter(T), unit_lift(R, S))});
      ChainMap rhs = add_maps(rhs1, scale_map(rhs2, -k.one()));
      rep.words = "sts";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "4ext-reduction-ss") {
      Word w = parse_word("sts");
      auto Phi = phi_new_lift(E, T, w);
      ChainMap lhs = compose(counit_at(w, 1), Phi);
      // rhs = -comult_s eta_s epsExt_t + comult_s etaExt_s eps_t
      ChainMap eps_ext_t = compose(counit_lift(R, T),
                                   phi_contract(make_obj(KoszulObj::letters(R, {T})), 0));
      ChainMap a = compose_chain({eps_ext_t, unit_lift(R, S), comult_lift(R, S)});
      ChainMap b = compose_chain(
          {counit_lift(R, T), eta_ext_lift(R, S), comult_lift(R, S)});
      ChainMap rhs = add_maps(scale_map(a, -k.one()), b);
      rep.words = "sts";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "4ext-reduction-full") {
      Word w = parse_word("sts");
      auto Phi = phi_new_lift(E, T, w);
      ChainMap lhs = compose(Phi, unit_lift(R, T));
      // rhs = -(id_s (x) etaExt_t (x) id_s) delta_s eta_s
      //       +(id_s (x) eta_t (x) id_s) delta_s etaExt_s
      auto widen = [&](const ChainMap& mid) {
        // K(s,s) -> K(s,0,s) -> K(s,t,s)
        ChainMap ins = tensor_map(rinv_lift(R, S), id_letter(S));
        ChainMap put = tensor_chain({id_letter(S), mid, id_letter(S)});
        return compose(put, ins);
      };
      ChainMap a = compose_chain(
          {unit_lift(R, S), comult_lift(R, S), widen(eta_ext_lift(R, T))});
      ChainMap b = compose_chain(
          {eta_ext_lift(R, S), comult_lift(R, S), widen(unit_lift(R, T))});
      ChainMap rhs = add_maps(scale_map(a, -k.one()), b);
      rep.words = "sts";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "4ext-rotation" || name == "newgen-rotation") {
      // clockwise rotation of Phi_t^w:
      //   (id_t id_{w'} eps_{sm})(id_t id_{w'} mult_{sm})
      //   (id_t Phi id_{sm})(comult_t id)(unit_t id) with source K_{sm}
      std::vector<std::pair<Word, int>> cases;
      if (name == "4ext-rotation") {
        cases.push_back({parse_word("sts"), -1});
      } else {
        cases.push_back({parse_word("tsts"), -1});  // s_m = s: sign -1
        cases.push_back({parse_word("stst"), +1});  // s_m = t: sign +1
      }
      for (auto& [w, sign] : cases) {
        Color sm = w.back();
        auto Phi = phi_new_lift(E, T, w);
        ChainMap step1 = linv_lift(R, sm);  // K_sm -> K(0, sm)
        ChainMap step2 = tensor_map(unit_lift(R, T), id_letter(sm));
        ChainMap step3 = tensor_map(comult_lift(R, T), id_letter(sm));
        ChainMap step4 = tensor_chain({id_letter(T), Phi, id_letter(sm)});
        // now in K(t, w, sm); merge the last two letters (both sm)
        Word tw = concat(Word{T}, w);
        std::vector<ChainMap> m5;
        for (size_t j = 0; j + 1 < tw.size(); j++)
          m5.push_back(id_letter(tw[j]));
        m5.push_back(mult_lift(R, sm));
        ChainMap step5 = tensor_chain(m5);
        Word twm(tw.begin(), tw.end() - 1);
        twm.push_back(sm);
        ChainMap step6 = trailing_counit(step5.tgt->word());
        ChainMap lhs = compose_chain({step1, step2, step3, step4, step5, step6});
        Word rw = concat(Word{T}, Word(w.begin(), w.end() - 1));
        ChainMap rhs = phi_new_lift(E, sm, rw);
        if (sign < 0) rhs = scale_map(rhs, -k.one());
        RelationReport sub;
        if (!classes_match(lhs, rhs, sub)) {
          rep.pass = false;
          rep.words = word_str(w);
          rep.detail = "rotation failed";
          return;
        }
        if (sub.sign_flip) {
          rep.sign_flip = true;
          rep.detail = "holds with a global sign flip";
        }
        rep.words += word_str(w) + " ";
      }
      rep.pass = true;
      return;
    }

    if (name == "newgen-reduct") {
      // (id ... eps_{s_i} ... id) Phi_t^w = Phi_t^{w-hat}
      struct Case {
        std::string w;
        size_t i;
      };
      for (auto& cse : {Case{"ststs", 2}, Case{"stts", 1}}) {
        Word w = parse_word(cse.w);
        auto Phi = phi_new_lift(E, T, w);
        ChainMap lhs = compose(counit_at(w, cse.i), Phi);
        Word what = w;
        what.erase(what.begin() + long(cse.i));
        ChainMap rhs = phi_new_lift(E, T, what);
        RelationReport sub;
        if (!classes_match(lhs, rhs, sub)) {
          rep.pass = false;
          rep.words = cse.w;
          rep.detail = "reduction failed";
          return;
        }
        rep.sign_flip = rep.sign_flip || sub.sign_flip;
        rep.words += cse.w + " ";
      }
      rep.pass = true;
      return;
    }

    if (name == "newgen-mult") {
      Word w = parse_word("sts");
      auto Phi = phi_new_lift(E, T, w);
      ChainMap lhs = compose(comult_at(w, 0), Phi);
      Word wcheck = parse_word("ssts");
      ChainMap rhs = phi_new_lift(E, T, wcheck);
      rep.words = "sts -> ssts";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "newgen-square") {
      // (id_s Phi_t^{sts} id_s) o Phi_t^{sts} = 0 in Ext^2
      Word w = parse_word("sts");
      auto Phi = phi_new_lift(E, T, w);
      ChainMap inner = tensor_chain({id_letter(S), phi_new_lift(E, T, w),
                                     id_letter(S)});
      ChainMap total = compose(inner, Phi);
      ExtClass cls = class_of(E, total);
      rep.words = "w=sts, v=sts";
      rep.pass = E.class_zero(cls);
      if (!rep.pass) rep.detail = "composite class nonzero";
      return;
    }

    if (name == "two-color-jumping") {
      Word w = parse_word("sts");
      auto Phi = phi_new_lift(E, T, w);
      auto lhs = compose(phi_contract(Phi.tgt, 0), Phi);
      auto rhs = compose(phi_contract(Phi.tgt, 1), Phi);
      rep.words = "sts";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "cohomology-relation-s" || name == "cohomology-relation-t") {
      // k = 2: [2] a_x Omega = sum of dressed dot terms, source (t,s),
      // target (s,t)
      Word sts = parse_word("sts");
      auto Phi = phi_new_lift(E, T, sts);
      // Omega: K(t,s) -> K(s,t): cap the trailing s of Phi (x) id_s
      ChainMap big = tensor_map(Phi, id_letter(S));
      Word w4 = big.tgt->word();  // s t s s
      std::vector<ChainMap> mm;
      mm.push_back(id_letter(S));
      mm.push_back(id_letter(T));
      mm.push_back(cap(S));
      ChainMap capped = tensor_chain(mm);
      ChainMap omega0 = compose(capped, big);
      ChainMap omega = compose(collapse_empty(omega0.tgt, 2), omega0);
      (void)w4;

      auto Kt = make_obj(KoszulObj::letters(R, {T}));
      auto Ks = make_obj(KoszulObj::letters(R, {S}));
      ChainMap hdown_t = compose(phi_contract(Kt, 0), unit_lift(R, T));
      ChainMap hdown_s = compose(phi_contract(Ks, 0), unit_lift(R, S));
      ChainMap hup_s = compose(counit_lift(R, S), phi_contract(Ks, 0));
      ChainMap hup_t = compose(counit_lift(R, T), phi_contract(Kt, 0));
      Word ts = parse_word("ts");

      // T1: (eta_s (x) id_t) tau_t phi_t [id_t (x) eps_s collapsed]
      ChainMap drop_s = counit_at(ts, 1);  // K(t,s) -> K_t
      ChainMap T1 = compose_chain({drop_s, phi_contract(Kt, 0),
                                   linv_lift(R, T),
                                   tensor_map(unit_lift(R, S), id_letter(T))});
      // T2: same but the hdot sits on the dropped s strand
      std::vector<ChainMap> du;
      du.push_back(id_letter(T));
      du.push_back(hup_s);
      ChainMap drop_hs = tensor_chain(du);
      ChainMap T2 = compose_chain({compose(collapse_empty(drop_hs.tgt, 1), drop_hs),
                                   linv_lift(R, T),
                                   tensor_map(unit_lift(R, S), id_letter(T))});
      // T3: (id_s (x) hdown_t) rinv_s [eps_t (x) id_s collapsed]
      ChainMap drop_t = counit_at(ts, 0);  // K(t,s) -> K_s
      ChainMap T3 = compose_chain({drop_t, rinv_lift(R, S),
                                   tensor_map(id_letter(S), hdown_t)});
      // T4: (id_s (x) eta_t) rinv_s [hup_t (x) id_s collapsed]
      std::vector<ChainMap> dh;
      dh.push_back(hup_t);
      dh.push_back(id_letter(S));
      ChainMap drop_ht = tensor_chain(dh);
      ChainMap T4 = compose_chain({compose(collapse_empty(drop_ht.tgt, 0), drop_ht),
                                   rinv_lift(R, S),
                                   tensor_map(id_letter(S), unit_lift(R, T))});
      // T5: (id_s (x) eta_t) rinv_s phi_s [eps_t (x) id_s collapsed]
      ChainMap T5 = compose_chain({drop_t, phi_contract(Ks, 0),
                                   rinv_lift(R, S),
                                   tensor_map(id_letter(S), unit_lift(R, T))});
      // T6: (hdown_s (x) id_t) tau_t [id_t (x) eps_s collapsed]
      ChainMap T6 = compose_chain({drop_s, linv_lift(R, T),
                                   tensor_map(hdown_s, id_letter(T))});

      Fq two = k.qnum(2);
      ChainMap lhs = scale_map(
          boxed_left(omega, R.alpha(name.back() == 's' ? S : T)), two);
      ChainMap rhs =
          name.back() == 's'
              ? add_maps(add_maps(scale_map(T1, -two), scale_map(T2, two)),
                         add_maps(T3, scale_map(T4, -k.one())))
              : add_maps(add_maps(scale_map(T3, -two), scale_map(T5, two)),
                         add_maps(T6, scale_map(T2, -k.one())));
      rep.words = "k=2";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "m2-hochschild-slide") {
      if (R.realm().m != 2) {
        rep.skipped = true;
        rep.detail = "needs the m=2 realm";
        return;
      }
      Word st = parse_word("st");
      auto o = make_obj(KoszulObj::letters(R, st));
      auto v = crossing2_lift(R, S);
      ChainMap lhs = compose(v, phi_contract(o, 0));
      ChainMap rhs = compose(phi_contract(v.tgt, 1), v);
      rep.words = "st -> ts";
      classes_match(lhs, rhs, rep);
      return;
    }

    if (name == "m2-absorption") {
      if (R.realm().m != 2) {
        rep.skipped = true;
        rep.detail = "needs the m=2 realm";
        return;
      }
      Word w1 = parse_word("stts");
      Word w2 = parse_word("tsts");
      ChainMap Phi1 = phi_new_lift(E, T, w1);
      ChainMap cross = tensor_chain(
          {crossing2_lift(R, S), id_letter(T), id_letter(S)});
      ChainMap lhs = compose(cross, Phi1);
      ChainMap rhs = phi_new_lift(E, T, w2);
      rep.words = "stts -> tsts";
      classes_match(lhs, rhs, rep);
      return;
    }

    throw std::invalid_argument("unknown relation: " + name);
  }
};

}  // namespace dsb
