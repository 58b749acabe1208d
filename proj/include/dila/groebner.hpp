#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dila/polynomial.hpp"

namespace dila {

/// Budget for a single Buchberger run. Exceeding either cap raises
/// ResourceLimit instead of running unbounded.
struct GbLimits {
  int degree_cap = 24;            // max total degree of a processed S-pair lcm
  std::size_t pair_cap = 200000;  // max number of S-polynomials formed
};

/// Process-wide defaults used when no explicit limits are passed.
GbLimits default_gb_limits();
void set_default_gb_limits(GbLimits limits);

struct Division {
  Polynomial remainder;
  std::vector<Polynomial> quotients;  // f = sum q_i * basis_i + remainder
};

/// Multivariate division remainder of f by basis under f's ring order. No term
/// of the result is divisible by a basis leading monomial.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis);
/// Same, under an explicit order (inputs are re-sorted into that order; the
/// result lives in f's registry with the requested order).
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& order);
/// Division with quotient tracking.
Division divide(const Polynomial& f, std::span<const Polynomial> basis);

/// Unique reduced Groebner basis: monic, mutually reduced, sorted by
/// decreasing leading monomial. The unit ideal yields {1}, the zero ideal {}.
std::vector<Polynomial> buchberger_reduced(std::span<const Polynomial> gens, const GbLimits& limits);
std::vector<Polynomial> buchberger_reduced(std::span<const Polynomial> gens);
std::vector<Polynomial> buchberger_reduced(std::span<const Polynomial> gens, const MonomialOrder& order);

/// Reduced Groebner basis together with its expression in the input
/// generators: basis[k] = sum_j cofactors[k][j] * gens[j].
struct TrackedBasis {
  std::vector<Polynomial> basis;
  std::vector<std::vector<Polynomial>> cofactors;
};
TrackedBasis tracked_groebner(std::span<const Polynomial> gens, const GbLimits& limits);

/// Cofactors c with f = sum c_j * gens[j], or nullopt if f is not in the ideal.
std::optional<std::vector<Polynomial>> lift(const Polynomial& f, std::span<const Polynomial> gens);
std::optional<std::vector<Polynomial>> lift(const Polynomial& f, const TrackedBasis& tb, std::size_t ngens);

}  // namespace dila
