#include "doctest.h"
#include "dila/errors.hpp"
#include "dila/rost.hpp"

using namespace dila;

namespace {

PresentedAlgebra alg(std::vector<std::string> vars, std::initializer_list<const char*> rels = {}) {
  auto r = PolyRing::make(Field::rationals(), std::move(vars));
  std::vector<Polynomial> g;
  for (auto s : rels) g.push_back(parse_polynomial(r, s));
  return PresentedAlgebra(r, IdealHandle(r, std::move(g)));
}

IdealHandle ideal_of(const PresentedAlgebra& a, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(a.parse(s));
  return IdealHandle(a.ring(), std::move(g));
}

std::string failures(const Report& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.passed) s += c.name + " (" + c.detail + "); ";
  return s;
}

}  // namespace

TEST_CASE("rost space of a point in a line in the plane") {
  auto A = alg({"x", "y"});
  auto R = RostInput::make(A, {"x"}, {"x", "y"});
  auto D = rost_space(R);
  CHECK_FALSE(D.zero_ring);
  CHECK(D.x_name(0, 0) == "x_1_1");
  CHECK(D.x_name(1, 1) == "x_2_2");
  CHECK(D.saturation_changed);
  CHECK(D.algebra.is_zero(D.algebra.parse("x_2_1 - t*x_1_1")));
  // Frozen sympy reference.
  CHECK(D.algebra.relations().equals(
      ideal_of(D.algebra, {"t*x_1_1 - x_2_1", "-x*x_2_2 + x_2_1*y", "s*x_2_1 - x", "s*x_2_2 - y"})));
  CHECK_MESSAGE(check_exceptional(D).passed(), failures(check_exceptional(D)));
}

TEST_CASE("rost space degenerate inputs") {
  auto A = alg({"x"});
  auto unit = rost_space(RostInput::make(A, {"1"}, {"1"}));
  // Both fractions invert: x_1_1 = 1/(st), x_2_1 = 1/s.
  CHECK(unit.algebra.is_zero(unit.algebra.parse("s*t*x_1_1 - 1")));
  CHECK(unit.algebra.is_zero(unit.algebra.parse("x_2_1 - t*x_1_1")));

  auto Q = alg({"c"});
  auto zero = rost_space(RostInput::make(Q, {"0"}, {"0"}));
  CHECK(zero.algebra.relations().equals(ideal_of(zero.algebra, {"x_1_1", "x_2_1"})));
  auto empty = rost_space(RostInput::make(Q, {}, {}));
  CHECK(empty.algebra.relations().equals(ideal_of(empty.algebra, {"x_1_1", "x_2_1"})));

  CHECK_THROWS_AS(RostInput::make(alg({"x", "y"}), {"x", "y"}, {"x"}), InputError);
  // Containment is tested modulo the relations.
  CHECK_NOTHROW(RostInput::make(alg({"x", "y"}, {"y - x^2"}), {"y"}, {"x"}));

  // Names s and t already in use.
  auto B = alg({"s", "t"});
  auto shifted = rost_space(RostInput::make(B, {"s"}, {"s", "t"}));
  CHECK(shifted.algebra.vars().size() == 7);
}

TEST_CASE("rost with I = J matches the single-ideal pattern") {
  auto A = alg({"x", "y"});
  auto D = rost_space(RostInput::make(A, {"x", "y"}, {"x", "y"}));
  auto Ast = alg({"x", "y", "s", "t"});
  auto direct = dilate(make_center(Ast, {{{"x", "y"}, "s*t"}, {{"x", "y"}, "s"}}));
  CHECK(D.algebra.relations().equals(direct.algebra.relations().map_to(D.algebra.ring())));
  auto mono = monopoly_iso(D.center);
  CHECK_MESSAGE(mono.report.passed(), failures(mono.report));
}

TEST_CASE("rost subalgebra check") {
  auto A = alg({"x", "y"});
  auto R = RostInput::make(A, {"x"}, {"x", "y"});
  auto rep = rost_subalgebra_check(R, 3);
  CHECK_MESSAGE(rep.passed(), failures(rep));
  CHECK(rep.checks.size() == 1 + 49);
  for (const auto& c : rep.checks) {
    if (c.name == "cell (0, 0) case 2") CHECK(c.detail == "1 elements");
    if (c.name == "cell (-1, 1) case 1") CHECK(c.detail == "3 elements");  // J^2
    if (c.name == "cell (1, 0) case 3") CHECK(c.detail == "1 elements");
  }

  auto curve = alg({"x", "y"}, {"y^2 - x^3"});
  auto rep2 = rost_subalgebra_check(RostInput::make(curve, {"x", "y"}, {"x", "y"}), 2);
  CHECK_MESSAGE(rep2.passed(), failures(rep2));

  CHECK_THROWS_AS(rost_subalgebra_check(R, 5), InputError);
}
