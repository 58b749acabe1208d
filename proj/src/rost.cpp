#include "dila/rost.hpp"

#include "dila/errors.hpp"

namespace dila {

namespace {

struct Deformation {
  PresentedAlgebra Ast;  // A[s, t]
  std::string s, t;
  std::vector<Polynomial> I, J;  // generators in A[s, t]
};

Deformation deformation(const RostInput& R) {
  const auto& A = R.base;
  std::string s = fresh_name(*A.ring(), "s");
  auto r1 = A.ring()->extended({s});
  std::string t = fresh_name(*r1, "t");
  auto ring = r1->extended({t});
  Deformation d{PresentedAlgebra(ring, A.relations().map_to(ring)), s, t, {}, {}};
  for (const auto& g : R.I.generators()) d.I.push_back(g.map_to(ring));
  for (const auto& g : R.J.generators()) d.J.push_back(g.map_to(ring));
  if (d.I.empty()) d.I.push_back(Polynomial(ring));
  if (d.J.empty()) d.J.push_back(Polynomial(ring));
  return d;
}

// All multisets of `count` indices below k, as sorted index lists.
std::vector<std::vector<std::size_t>> multisets(std::size_t k, int count) {
  std::vector<std::vector<std::size_t>> out;
  if (count <= 0) return {{}};
  if (k == 0) return out;
  std::vector<std::size_t> cur(std::size_t(count), 0);
  while (true) {
    out.push_back(cur);
    int pos = count - 1;
    while (pos >= 0 && cur[std::size_t(pos)] == k - 1) --pos;
    if (pos < 0) break;
    std::size_t v = cur[std::size_t(pos)] + 1;
    for (int q = pos; q < count; ++q) cur[std::size_t(q)] = v;
  }
  return out;
}

std::string index_string(const std::vector<std::size_t>& idx, const char* name) {
  std::string s;
  for (auto i : idx) s += (s.empty() ? "" : "*") + std::string(name) + std::to_string(i + 1);
  return s;
}

}  // namespace

RostInput RostInput::make(const PresentedAlgebra& base, const std::vector<std::string>& I,
                          const std::vector<std::string>& J) {
  std::vector<Polynomial> gi, gj;
  for (const auto& s : I) gi.push_back(base.parse(s));
  for (const auto& s : J) gj.push_back(base.parse(s));
  RostInput R{base, IdealHandle(base.ring(), gi), IdealHandle(base.ring(), gj)};
  R.validate();
  return R;
}

void RostInput::validate() const {
  IdealHandle Jp = base.extended_ideal(J.generators());
  for (const auto& g : I.generators())
    if (!Jp.contains(g)) throw InputError("I is not contained in J: " + g.to_string() + " is not in J");
}

DilatationResult rost_space(const RostInput& R) {
  Deformation d = deformation(R);
  const auto& ring = d.Ast.ring();
  Polynomial s = Polynomial::variable(ring, d.s), t = Polynomial::variable(ring, d.t);
  MultiCenter c{d.Ast, {Center{IdealHandle(ring, d.I), s * t}, Center{IdealHandle(ring, d.J), s}}, std::nullopt};
  return dilate(c, fresh_stem(*ring, "x", 2, {d.I.size(), d.J.size()}));
}

Report rost_subalgebra_check(const RostInput& R, int bound) {
  if (bound < 0 || bound > 4) throw InputError("bidegree bound must be between 0 and 4");
  Report rep{"rost subalgebra"};
  Deformation d = deformation(R);
  DilatationResult Ap = rost_space(R);
  const auto& Aring = Ap.algebra.ring();

  // A[s, t, 1/(st)] as A[s, t, z]/(P + (s t z - 1)).
  std::string z = fresh_name(*Aring, "z");
  auto lring = d.Ast.ring()->extended({z});
  Polynomial S = Polynomial::variable(lring, d.s), T = Polynomial::variable(lring, d.t),
             Z = Polynomial::variable(lring, z);
  std::vector<Polynomial> lrel;
  for (const auto& g : d.Ast.relations().generators()) lrel.push_back(g.map_to(lring));
  lrel.push_back(S * T * Z - Polynomial::constant(lring, 1));
  PresentedAlgebra Loc(lring, IdealHandle(lring, lrel));

  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < d.Ast.ring()->nvars(); ++v) images.push_back(Polynomial::variable(lring, v));
  for (const auto& f : Ap.fractions)
    images.push_back(f.numerator.map_to(lring) * (f.center == 0 ? Z : T * Z));
  AlgebraHom phi = make_hom(Ap.algebra, Loc, images);
  rep.add("fraction map to the localization well-defined", check_hom(phi));
  if (!rep.passed()) return rep;

  auto U = [&](std::size_t j) { return Ap.x(0, j); };
  auto V = [&](std::size_t j) { return Ap.x(1, j); };
  auto lift = [&](const Polynomial& p) { return p.map_to(Aring); };
  Polynomial sA = Polynomial::variable(Aring, d.s), tA = Polynomial::variable(Aring, d.t);
  Polynomial one = Polynomial::constant(Aring, 1);

  std::size_t total = 0;
  for (int n = -bound; n <= bound; ++n)
    for (int m = -bound; m <= bound; ++m) {
      int ni = n < 0 ? 0 : n;              // I exponent
      int nj = m - n < 0 ? 0 : m - n;      // J exponent
      int which = n < 0 ? 1 : (m >= n ? 2 : 3);
      std::string failure;
      std::size_t count = 0;
      for (const auto& ii : multisets(d.I.size(), ni))
        for (const auto& jj : multisets(d.J.size(), nj)) {
          Polynomial l = Polynomial::constant(lring, 1);
          for (auto i : ii) l = l * d.I[i].map_to(lring);
          for (auto j : jj) l = l * d.J[j].map_to(lring);
          Polynomial target = l * (n >= 0 ? (S * Z).pow(unsigned(n)) : T.pow(unsigned(-n))) *
                              (m >= 0 ? (T * Z).pow(unsigned(m)) : S.pow(unsigned(-m)));

          Polynomial expr = one;
          if (which == 1) {
            // J^(m+l) t^l s^-m: m of the J factors become v's when m >= 0.
            if (m >= 0) {
              for (std::size_t k = 0; k < jj.size(); ++k) expr = expr * (int(k) < m ? V(jj[k]) : lift(d.J[jj[k]]));
              expr = expr * tA.pow(unsigned(-n));
            } else {
              for (auto j : jj) expr = expr * lift(d.J[j]);
              expr = expr * tA.pow(unsigned(-n)) * sA.pow(unsigned(-m));
            }
          } else if (which == 2) {
            for (auto i : ii) expr = expr * U(i);
            for (auto j : jj) expr = expr * V(j);
          } else {
            for (auto i : ii) expr = expr * U(i);
            expr = expr * sA.pow(unsigned(n - m));
          }
          ++count;
          if (!Loc.equal(phi.apply(expr), target) && failure.empty())
            failure = "(n, m) = (" + std::to_string(n) + ", " + std::to_string(m) + "), l = " +
                      (ii.empty() && jj.empty() ? std::string("1")
                                                : index_string(ii, "I") + (ii.empty() || jj.empty() ? "" : "*") +
                                                      index_string(jj, "J"));
        }
      total += count;
      rep.add("cell (" + std::to_string(n) + ", " + std::to_string(m) + ") case " + std::to_string(which),
              failure.empty(), failure.empty() ? std::to_string(count) + " elements" : failure);
    }
  rep.fact("bound", std::to_string(bound));
  rep.fact("elements_checked", std::to_string(total));
  return rep;
}

}  // namespace dila
