// One line per acceptance criterion; exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "../unit/gen.hpp"
#include "dila/congruence.hpp"
#include "dila/dilatation.hpp"
#include "dila/instance.hpp"
#include "dila/oracle.hpp"
#include "dila/rost.hpp"

using namespace dila;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

PresentedAlgebra alg(Field field, std::vector<std::string> vars, std::vector<std::string> rels = {}) {
  auto r = PolyRing::make(field, std::move(vars));
  std::vector<Polynomial> g;
  for (const auto& s : rels) g.push_back(parse_polynomial(r, s));
  return PresentedAlgebra(r, IdealHandle(r, std::move(g)));
}

PresentedAlgebra qq(std::vector<std::string> vars, std::vector<std::string> rels = {}) {
  return alg(Field::rationals(), std::move(vars), std::move(rels));
}

using Pairs = std::vector<std::pair<std::vector<std::string>, std::string>>;

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.passed) return c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
  return "";
}

std::string serialize(const Report& r) {
  std::string s = r.name + (r.refused ? " refused\n" : "\n");
  for (const auto& c : r.checks) s += (c.passed ? "pass " : "fail ") + c.name + " | " + c.detail + "\n";
  for (const auto& [k, v] : r.facts) s += k + " = " + v + "\n";
  return s;
}

// Tally of named instances, remembering the first failure.
struct Tally {
  int passed = 0, total = 0;
  std::string failure;
  void add(bool ok, const std::string& what) {
    ++total;
    if (ok)
      ++passed;
    else if (failure.empty())
      failure = what;
  }
  void add(const Report& r, const std::string& what) { add(r.passed(), what + ": " + first_failure(r)); }
  bool ok() const { return passed == total; }
  std::string summary() const {
    return std::to_string(passed) + "/" + std::to_string(total) + (failure.empty() ? "" : ", first failure " + failure);
  }
};

MultiCenter random_center(std::mt19937_64& rng) {
  std::vector<std::string> vars{"x", "y", "z"};
  vars.resize(2 + rng() % 2);
  auto A = qq(vars);
  MultiCenter c{A, {}, std::nullopt};
  std::size_t k = 1 + rng() % 2;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Polynomial> gens;
    std::size_t ng = 1 + rng() % 3;
    for (std::size_t j = 0; j < ng; ++j) gens.push_back(testgen::random_poly(rng, A.ring(), 2, 2));
    c.centers.push_back(Center{IdealHandle(A.ring(), gens), testgen::random_poly(rng, A.ring(), 2, 2)});
  }
  return c;
}

std::string random_suite(int n, unsigned seed, Tally& t) {
  std::mt19937_64 rng(seed);
  std::string serial;
  for (int k = 0; k < n; ++k) {
    auto c = random_center(rng);
    try {
      auto R = dilate(c);
      auto rep = check_exceptional(R);
      t.add(rep, c.to_string());
      serial += c.to_string() + "\n" + R.algebra.to_string() + "\n" + serialize(rep);
    } catch (const ResourceLimit& e) {
      t.add(false, c.to_string() + ": " + e.what());
    }
  }
  return serial;
}

Outcome soundness() {
  Tally t;
  random_suite(30, 20240611, t);
  return {t.ok() && t.total >= 25, "randomized instances passing check_exceptional: " + t.summary()};
}

Outcome zero_ring() {
  Tally t;
  struct Case {
    PresentedAlgebra A;
    Pairs centers;
    bool zero;
  };
  std::vector<Case> cases{
      {qq({"u"}, {"u^2"}), {{{"u"}, "u"}}, true},
      {qq({"x", "y"}, {"x*y"}), {{{"y"}, "x"}}, false},
      {qq({"x"}, {"x^3"}), {{{"1"}, "x^2"}}, true},
      {qq({"x", "y"}, {"x^2"}), {{{"y"}, "x"}, {{"x"}, "y"}}, true},
      {qq({"x", "y"}), {{{"x"}, "0"}}, true},
      {qq({"x", "y"}, {"x*y"}), {{{"x"}, "x + y"}}, false},
      {qq({"a", "g"}), {{{"g"}, "a"}, {{"a"}, "g"}}, false},
      {qq({"x", "y"}, {"x^2 - y^3"}), {{{"y^2"}, "x"}}, false},
      {qq({"x", "y"}, {"x^2*y", "y^2"}), {{{"x"}, "y"}}, true},
      {qq({"x", "y"}, {"x^2*y", "y^2"}), {{{"y"}, "x + 1"}}, false},
      {alg(Field::prime(2), {"y"}, {"y^3"}), {{{"y"}, "y"}}, true},
      {alg(Field::prime(3), {"y"}, {"y^3 - y"}), {{{"y^2"}, "y"}}, false},
      {alg(Field::prime(5), {"x", "y"}, {"x^2", "y^2"}), {{{"y"}, "x*y"}}, true},
  };
  int zeros = 0;
  for (const auto& cs : cases) {
    auto c = make_center(cs.A, cs.centers);
    auto R = dilate(c);
    bool nil = cs.A.relations().radical_contains(c.product());
    t.add(R.zero_ring == nil && nil == cs.zero && R.algebra.is_zero_ring() == nil, c.to_string());
    zeros += nil;
  }
  std::mt19937_64 rng(77);
  for (int k = 0; k < 20; ++k) {
    auto c = random_center(rng);
    // Quotient by a power of a random element to mix in nilpotents.
    auto q = testgen::random_poly(rng, c.base.ring(), 1, 2);
    auto A = PresentedAlgebra(c.base.ring(), IdealHandle(c.base.ring(), {q.pow(2)}));
    c.base = A;
    try {
      auto R = dilate(c);
      bool nil = A.relations().radical_contains(c.product());
      t.add(R.zero_ring == nil && R.algebra.is_zero_ring() == nil, c.to_string());
      zeros += nil;
    } catch (const ResourceLimit& e) {
      t.add(false, c.to_string() + ": " + e.what());
    }
  }
  return {t.ok() && zeros > 0 && zeros < t.total,
          "zero ring iff f nilpotent: " + t.summary() + ", " + std::to_string(zeros) + " zero rings"};
}

Outcome monopoly() {
  Tally t;
  struct Case {
    PresentedAlgebra A;
    Pairs centers;
  };
  std::vector<Case> cases{
      {qq({"p", "q", "X", "Y"}), {{{"X"}, "q"}, {{"Y"}, "p"}}},
      {qq({"x", "y"}), {{{"x", "y"}, "x"}, {{"x", "y"}, "y"}}},
      {qq({"a", "g"}), {{{"g"}, "a"}}},
      {qq({"a", "b", "c", "g", "h", "k"}), {{{"g"}, "a"}, {{"h"}, "b"}, {{"k"}, "c"}}},
      {qq({"a", "b", "g"}), {{{"g"}, "a"}, {{"g"}, "b"}, {{"a"}, "b"}}},
      {qq({"a", "g", "h"}), {{{"g"}, "a"}, {{"h"}, "a"}}},
      {qq({"x", "y"}, {"x*y"}), {{{"y"}, "x"}, {{"x"}, "x + y"}}},
      {alg(Field::prime(5), {"x", "y"}), {{{"x"}, "y"}, {{"y"}, "x + 1"}}},
      {qq({"a", "b", "g"}), {{{"g", "a"}, "b"}, {{"g"}, "a"}}},
      {qq({"a", "g", "h"}), {{{"g"}, "a"}, {{"h"}, "a^2"}}},
      {qq({"u", "v"}), {{{"u^2"}, "v"}, {{"v"}, "u"}}},
  };
  int k3 = 0;
  bool mirror = false;
  for (const auto& cs : cases) {
    auto c = make_center(cs.A, cs.centers);
    auto r = monopoly_iso(c);
    t.add(r.report, c.to_string());
    if (c.size() == 3 && r.report.passed()) ++k3;
    if (c.to_string() == "{[(X), q], [(Y), p]}")
      mirror = r.report.passed() && r.mono.to_string() == "{[(p*X, q*Y), p*q]}";
  }
  return {t.ok() && t.total >= 10 && k3 >= 1 && mirror,
          "certified " + t.summary() + ", " + std::to_string(k3) + " with three centers, mirror instance " +
              (mirror ? "certified" : "missing")};
}

Outcome iso_families() {
  std::map<std::string, Tally> fam;
  auto c = [](const PresentedAlgebra& A, const Pairs& p) { return make_center(A, p); };
  auto empty = [](const PresentedAlgebra& A) { return MultiCenter{A, {}, std::nullopt}; };

  // Two-stage.
  {
    auto& t = fam["two-stage"];
    auto AB = qq({"a", "b", "g", "h"});
    auto A2 = qq({"a", "g", "h"});
    t.add(two_stage_iso(c(AB, {{{"g"}, "a"}, {{"h"}, "b"}}), {0}), "[(g),a],[(h),b]");
    auto same = c(A2, {{{"g"}, "a"}, {{"h"}, "a"}});
    t.add(two_stage_iso(same, {0}), "[(g),a],[(h),a]");
    t.add(two_stage_iso(same, {0, 1}), "K = I");
    t.add(two_stage_iso(c(qq({"x", "y"}), {{{"x", "y"}, "x"}, {{"x", "y"}, "y"}}), {1}), "[(x,y),x],[(x,y),y]");
    t.add(two_stage_iso(c(qq({"x", "y"}, {"x*y"}), {{{"y"}, "x"}, {{"x"}, "x + y"}}), {1}), "nodal");
    t.add(two_stage_iso(c(qq({"a", "b", "c", "g", "h", "k"}), {{{"g"}, "a"}, {{"h"}, "b"}, {{"k"}, "c"}}), {0, 2}),
          "three centers");
    // Same denominator: one center with both generators, up to renaming x_1_2 <-> x_2_1.
    auto merged = dilate(c(A2, {{{"g", "h"}, "a"}}));
    auto split = dilate(same);
    Report rename{"merge"};
    certify_iso(rename, parse_hom(merged.algebra, split.algebra, {{"x_1_2", "x_2_1"}}),
                parse_hom(split.algebra, merged.algebra, {{"x_2_1", "x_1_2"}}));
    t.add(rename, "merge of [(g),a],[(h),a]");
  }
  // Iterate.
  {
    auto& t = fam["iterate"];
    auto A = qq({"a", "g"});
    auto A3 = qq({"a", "g", "h"});
    auto I = [](const PresentedAlgebra& B, std::vector<std::string> g) {
      std::vector<Polynomial> p;
      for (const auto& s : g) p.push_back(B.parse(s));
      return IdealHandle(B.ring(), p);
    };
    t.add(iterate_iso(A, A.var("a"), {I(A, {"g"})}, {1}, 0), "t = 0");
    t.add(iterate_iso(A, A.var("a"), {I(A, {"g"})}, {1}, 1), "M0 = (g), t = 1");
    t.add(iterate_iso(A3, A3.var("a"), {I(A3, {"g", "h"}), I(A3, {"g"})}, {1, 1}, 1), "M0 = (g, h), M1 = (g)");
    t.add(iterate_iso(A, A.var("a"), {I(A, {"g"})}, {2}, 2), "s0 = 2, t = 2");
    t.add(iterate_iso(A3, A3.var("a"), {I(A3, {"g", "h"}), I(A3, {"h"})}, {1, 2}, 1), "M1 = (h), s = (1, 2)");
    t.add(iterate_iso(A3, A3.var("a"), {I(A3, {"g"})}, {2}, 1), "s0 = 2, t = 1");
  }
  // Localize.
  {
    auto& t = fam["localize"];
    t.add(localize_compare(c(qq({"u"}), {{{"1"}, "u"}})), "[(1),u]");
    t.add(localize_compare(c(qq({"a", "g"}), {{{"g"}, "a"}})), "[(g),a]");
    t.add(localize_compare(empty(qq({"a", "g"}))), "empty center");
    t.add(localize_compare(c(qq({"x", "y"}, {"x*y"}), {{{"y"}, "x"}, {{"x + y"}, "x + y"}})), "nodal two centers");
    t.add(localize_compare(c(qq({"a", "b"}), {{{"1"}, "a"}, {{"1"}, "b"}})), "two unit ideals");
    t.add(localize_compare(c(qq({"x", "y"}, {"x^2 - y^3"}), {{{"y^2"}, "x"}})), "cusp");
  }
  // Open immersion. The listed two-center example fails the hypothesis
  // a_1 in L_2, and its conclusion is false as well: A' = A[g/a] does not
  // invert a. It is checked to be refused and counted separately.
  std::string literal;
  {
    auto& t = fam["open-immersion"];
    auto A = qq({"a", "g"});
    t.add(open_immersion_iso(c(A, {{{"g"}, "a"}, {{"a"}, "g"}}), {0}, {{1, 0}}), "[(g),a],[(a),g]");
    t.add(open_immersion_iso(c(A, {{{"g"}, "a"}, {{"a"}, "g*a"}}), {0}, {{1, 0}}), "[(g),a],[(a),g*a]");
    t.add(open_immersion_iso(c(A, {{{"g"}, "a"}}), {0}, {}), "K = I");
    t.add(open_immersion_iso(c(qq({"a", "g", "h"}), {{{"g"}, "a"}, {{"a"}, "g"}, {{"h"}, "a"}}), {0, 2}, {{1, 0}}),
          "three centers");
    t.add(open_immersion_iso(c(qq({"x", "y"}), {{{"x"}, "y"}, {{"y"}, "x*y"}}), {0}, {{1, 0}}), "[(x),y],[(y),x*y]");
    auto negative = open_immersion_iso(c(A, {{{"g^2"}, "a"}, {{"g"}, "a"}}), {0}, {{1, 0}});
    t.add(negative.refused, "negative path refused");
    auto lit_c = c(A, {{{"g", "a^2"}, "a"}, {{"g*a", "a^2"}, "a^2"}});
    auto lit = open_immersion_iso(lit_c, {0}, {{1, 0}});
    auto AI = dilate(lit_c);
    bool a_unit = AI.algebra.relations().equals(IdealHandle::unit(AI.algebra.ring())) ||
                  ideal_sum(AI.algebra.relations(), IdealHandle(AI.algebra.ring(), {AI.iota.apply(A.var("a"))}))
                      .is_unit();
    t.add(lit.refused && !a_unit, "listed example refused with a not invertible in A'");
    literal = lit.refused && !a_unit ? "listed example correctly refused (a_1 not in L_2; a not a unit in A')"
                                     : "listed example not refused";
  }
  // Base change.
  {
    auto& t = fam["base-change"];
    auto A = qq({"a", "g"});
    auto cc = c(A, {{{"g"}, "a"}});
    t.add(base_change_compare(cc, identity_hom(A)), "B = A");
    auto Aw = qq({"a", "g", "w"});
    t.add(base_change_compare(cc, parse_hom(A, Aw, {})), "B = A[w]");
    t.add(base_change_compare(c(A, {{{"g", "a"}, "a"}, {{"a"}, "g"}}), parse_hom(A, Aw, {})), "A[w], two centers");
    t.add(base_change_compare(cc, parse_hom(A, qq({"a", "g"}, {"g"}), {})), "B = A/(g)");
    t.add(base_change_compare(cc, parse_hom(A, qq({"a", "g"}, {"a*g - 1"}), {})), "B = A[1/a]");
    t.add(base_change_compare(c(qq({"x", "y"}), {{{"y"}, "x"}}), parse_hom(qq({"x", "y"}), qq({"t"}), {{"x", "t"}, {"y", "t^2"}})),
          "plane to parabola");
  }
  // Conic.
  {
    auto& t = fam["conic"];
    t.add(conic_iso(c(qq({"a"}), {{{"a"}, "a"}})), "[(a),a]");
    t.add(conic_iso(c(qq({"a", "g"}), {{{"g", "a"}, "a"}})), "[(g,a),a]");
    t.add(conic_iso(empty(qq({"a", "g"}))), "empty center");
    t.add(conic_iso(c(qq({"a", "g", "h"}), {{{"g"}, "a"}, {{"h"}, "a"}})), "two centers");
    t.add(conic_iso(c(qq({"x", "y"}), {{{"x", "y"}, "x"}})), "[(x,y),x]");
    t.add(conic_iso(c(qq({"a", "b", "g"}), {{{"g"}, "a"}, {{"g"}, "b"}})), "[(g),a],[(g),b]");
  }
  bool ok = true;
  std::string detail;
  for (const auto& [name, t] : fam) {
    ok = ok && t.ok() && t.total >= 5;
    detail += (detail.empty() ? "" : "; ") + name + " " + t.summary();
  }
  return {ok, detail + "; " + literal};
}

Outcome regular_case() {
  Tally t;
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> vars{"a"};
    for (int i = 1; i <= n; ++i) vars.push_back("g" + std::to_string(i));
    auto A = qq(vars);
    int combos = 1;
    for (int i = 0; i < n; ++i) combos *= 4;
    for (int code = 0; code < combos; ++code) {
      Pairs p;
      std::vector<std::string> expect;
      int rest = code;
      for (int i = 1; i <= n; ++i) {
        int d = rest % 4;
        rest /= 4;
        std::string ad = d == 0 ? "1" : "a^" + std::to_string(d);
        p.push_back({{"g" + std::to_string(i)}, ad});
        expect.push_back("g" + std::to_string(i) + " - " + ad + "*x_" + std::to_string(i) + "_1");
      }
      auto R = dilate(make_center(A, p));
      std::vector<Polynomial> e;
      for (const auto& s : expect) e.push_back(R.algebra.parse(s));
      bool same = R.algebra.relations().groebner() == IdealHandle(R.algebra.ring(), e).groebner();
      t.add(!R.saturation_changed && same, R.center.to_string());
    }
  }
  return {t.ok(), "no saturation and exact presentation: " + t.summary()};
}

Outcome oracle_equivalence() {
  using namespace oracle;
  Tally t;
  std::vector<std::pair<std::string, FiniteRing>> rings;
  for (unsigned n : {4u, 6u, 8u, 9u, 12u}) rings.emplace_back("Z/" + std::to_string(n), FiniteRing::zmod(n));
  rings.emplace_back("F2[y]/(y^2)", FiniteRing::zmod_poly(2, {0, 0}));
  rings.emplace_back("F2[y]/(y^3)", FiniteRing::zmod_poly(2, {0, 0, 0}));
  rings.emplace_back("F2[y]/(y^2+y)", FiniteRing::zmod_poly(2, {0, 1}));
  rings.emplace_back("F2[y]/(y^4+y)", FiniteRing::zmod_poly(2, {0, 1, 0, 0}));
  rings.emplace_back("F3[y]/(y^2)", FiniteRing::zmod_poly(3, {0, 0}));
  rings.emplace_back("F3[y]/(y^3-y)", FiniteRing::zmod_poly(3, {0, 2, 0}));
  rings.emplace_back("F3[y]/(y^4)", FiniteRing::zmod_poly(3, {0, 0, 0, 0}));
  rings.emplace_back("F5[y]/(y^2)", FiniteRing::zmod_poly(5, {0, 0}));
  rings.emplace_back("F7[y]/(y^2-1)", FiniteRing::zmod_poly(7, {6, 0}));
  std::mt19937_64 rng(31337);
  for (const auto& [name, A] : rings) {
    std::vector<std::pair<std::vector<Elem>, Elem>> singles;
    std::size_t n = A.size();
    if (n <= 16) {
      for (Elem m = 0; m < n; ++m)
        for (Elem a = 0; a < n; ++a) singles.push_back({{m}, a});
    } else {
      for (int k = 0; k < 40; ++k) singles.push_back({{Elem(rng() % n)}, Elem(rng() % n)});
    }
    for (const auto& s : singles) {
      auto C = FiniteCenter::make(A, {s});
      auto F = dilate_oracle_fractions(A, C);
      t.add(F.certificate, name + " [(" + A.label(s.first[0]) + "), " + A.label(s.second) + "]");
    }
    for (int k = 0; k < 10; ++k) {
      std::vector<std::pair<std::vector<Elem>, Elem>> two{{{Elem(rng() % n), Elem(rng() % n)}, Elem(rng() % n)},
                                                          {{Elem(rng() % n)}, Elem(rng() % n)}};
      auto F = dilate_oracle_fractions(A, FiniteCenter::make(A, two));
      t.add(F.certificate, name + " two centers");
    }
  }
  return {t.ok(), "fraction and subring constructions certified equal: " + t.summary()};
}

Outcome universal_scan() {
  using namespace oracle;
  auto A = FiniteRing::zmod(6);
  auto C = FiniteCenter::make(A, {{{3}, 2}});
  auto Ap = dilate_oracle_fractions(A, C);
  auto r = universal_property_scan(A, C, Ap, zmod_catalog(12));
  std::string considered;
  for (const auto& [k, v] : r.facts)
    if (k == "homs_considered") considered = v;
  return {r.passed() && !considered.empty() && considered != "0",
          "Z/6 at [(3), 2] against Z/n, n <= 12: " + considered + " regular homs, predictions " +
              (r.passed() ? "all match" : first_failure(r))};
}

Outcome symbolic_bridge() {
  Tally t;
  int zero = 0;
  struct Case {
    PresentedAlgebra A;
    Pairs centers;
  };
  std::vector<Case> cases{
      {alg(Field::prime(3), {"y"}, {"y^3 - y"}), {{{"y^2"}, "y"}}},
      {alg(Field::prime(2), {"y"}, {"y^3"}), {{{"y"}, "y"}}},
      {alg(Field::prime(5), {"y"}, {"y^2 - 1"}), {{{"y - 1"}, "y"}}},
      {alg(Field::prime(2), {"x", "y"}, {"x^2", "y^2"}), {{{"y"}, "x"}}},
      {alg(Field::prime(3), {"x", "y"}, {"x^2 - x", "y^3 - y"}), {{{"y"}, "x + y"}}},
      {alg(Field::prime(2), {"y"}, {"y^4 + y"}), {{{"y^2"}, "y"}}},
      {alg(Field::prime(3), {"x", "y"}, {"x^2", "y^2 - 1"}), {{{"x"}, "y + 1"}, {{"y - 1"}, "y"}}},
  };
  for (const auto& cs : cases) {
    auto c = make_center(cs.A, cs.centers);
    auto r = oracle::compare_with_symbolic(c);
    t.add(r, c.to_string());
    if (r.passed() && dilate(c).zero_ring) ++zero;
  }
  return {t.ok() && t.total >= 5 && zero >= 1,
          "oracle and symbolic dilatation isomorphic: " + t.summary() + ", " + std::to_string(zero) + " zero rings"};
}

Outcome congruence_suite() {
  using namespace congruence;
  Tally t;
  std::string orders;
  auto run = [&](const char* label, const char* group, std::vector<const char*> H, std::vector<unsigned> s,
                 std::vector<unsigned> r, std::uint32_t p, unsigned N, const char* expect) {
    std::vector<Subgroup> subs;
    for (auto h : H) subs.push_back(Subgroup::parse(h));
    auto start = std::chrono::steady_clock::now();
    auto rep = congruent_iso_check(GroupSpec::parse(group), subs, s, r, LevelRing::make(p, N));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string q;
    for (const auto& [k, v] : rep.facts)
      if (k == "order_Q_grp") q = v;
    bool ok = rep.passed() && (!expect || q == expect) && secs < 120;
    t.add(ok, std::string(label) + ": " + (rep.passed() ? "order " + q : first_failure(rep)));
    orders += (orders.empty() ? "" : ", ") + std::string(label) + " |Q| = " + q;
  };
  run("GL_1", "GL_1", {"e"}, {1}, {2}, 3, 3, "3");
  run("SL_2", "SL_2", {"e"}, {1}, {2}, 2, 4, "8");
  run("SL_2 with T", "SL_2", {"e", "T"}, {1, 2}, {2, 3}, 2, 4, nullptr);
  run("GL_2 with L(1,1)", "GL_2", {"e", "L(1,1)"}, {1, 2}, {2, 3}, 2, 3, nullptr);
  run("GL_3 with L(2,1)", "GL_3", {"e", "L(2,1)"}, {1, 1}, {2, 2}, 2, 2, nullptr);
  return {t.ok(), "g -> g - 1 certified: " + orders + (t.failure.empty() ? "" : "; " + t.failure)};
}

Outcome normalizer_suite() {
  using namespace congruence;
  auto H = std::vector<Subgroup>{Subgroup::parse("e"), Subgroup::parse("T")};
  auto GL2 = GroupSpec::parse("GL_2"), SL2 = GroupSpec::parse("SL_2");
  auto scalars = normalizer_check(GL2, Subgroup::parse("Z"), H, {1, 2}, LevelRing::make(2, 3));
  auto torus = normalizer_check(GL2, Subgroup::parse("T"), H, {1, 2}, LevelRing::make(2, 3));
  // Over Z/2 the torus of SL_2 is trivial, so the listed instance meets the
  // hypothesis; at p = 3, r = (1, 2) it does not.
  auto literal = normalizer_check(SL2, Subgroup::parse("G"), H, {1, 1}, LevelRing::make(2, 3));
  auto failing = normalizer_check(SL2, Subgroup::parse("G"), H, {1, 2}, LevelRing::make(3, 2));
  bool skipped = false;
  for (const auto& [k, v] : failing.facts)
    if (k == "main_check") skipped = v == "skipped";
  bool ok = scalars.passed() && torus.passed() && failing.refused && skipped;
  return {ok, std::string("scalars ") + (scalars.passed() ? "certified" : first_failure(scalars)) + ", torus " +
                  (torus.passed() ? "certified" : first_failure(torus)) + ", SL_2 vs T at p = 3 " +
                  (failing.refused ? "hypothesis failure reported" : "not refused") +
                  ", listed p = 2 instance " + (literal.refused ? "refused" : "meets the hypothesis (T(Z/2) = 1)")};
}

Outcome rost() {
  auto R = RostInput::make(qq({"x", "y"}), {"x"}, {"x", "y"});
  auto D = rost_space(R);
  bool member = D.algebra.is_zero(D.algebra.parse("x_2_1 - t*x_1_1"));
  auto rep = rost_subalgebra_check(R, 3);
  std::string count;
  for (const auto& [k, v] : rep.facts)
    if (k == "elements_checked") count = v;
  return {member && rep.passed(), std::string("v - t*u ") + (member ? "in" : "not in") +
                                      " the relation ideal; bidegree bound 3: " +
                                      (rep.passed() ? count + " elements verified" : first_failure(rep))};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(DILA_INSTANCE_DIR))
    if (e.path().extension() == ".dila") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  int same = 0;
  std::string diff;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<std::string> outs;
    for (unsigned jobs : {1u, 4u, 1u}) {
      cli::Options opt;
      opt.machine_only = true;
      opt.jobs = jobs;
      std::ostringstream out, err;
      cli::run_text(buf.str(), f.filename().string(), {}, opt, out, err);
      outs.push_back(out.str() + err.str());
    }
    if (outs[0] == outs[1] && outs[1] == outs[2])
      ++same;
    else if (diff.empty())
      diff = f.filename().string();
  }
  Tally a, b;
  bool lib = random_suite(10, 99, a) == random_suite(10, 99, b);
  return {diff.empty() && lib && !files.empty(),
          std::to_string(same) + "/" + std::to_string(files.size()) +
              " instance files byte-identical across 3 runs (jobs 1, 4, 1); library reports " +
              (lib ? "identical" : "differ") + (diff.empty() ? "" : "; first difference " + diff)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "presentation soundness", 60, soundness},
      {2, "zero-ring criterion", 0, zero_ring},
      {3, "monopoly isomorphism", 120, monopoly},
      {4, "two-stage, iterate, localize, open-immersion, base-change, conic", 0, iso_families},
      {5, "regular case needs no saturation", 0, regular_case},
      {6, "oracle equivalence", 0, oracle_equivalence},
      {7, "universal-property scan", 30, universal_scan},
      {8, "symbolic-oracle bridge", 0, symbolic_bridge},
      {9, "congruent isomorphism", 120, congruence_suite},
      {10, "normalizer suite", 0, normalizer_suite},
      {11, "rost double deformation", 60, rost},
      {12, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool timely = c.limit == 0 || secs < c.limit;
    bool ok = o.ok && timely;
    failed += !ok;
    char timing[64];
    if (c.limit > 0)
      std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit);
    else
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::printf("criterion %2d %s  %s: %s [%s]\n", c.id, ok ? "PASS" : "FAIL", c.name, o.detail.c_str(), timing);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
