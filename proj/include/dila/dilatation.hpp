#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dila/algebra.hpp"
#include "dila/report.hpp"

namespace dila {

/// One pair [M, a]; the generator list of M is kept verbatim since the
/// fraction variables are indexed by it.
struct Center {
  IdealHandle M;
  Polynomial a;
};

struct MultiCenter {
  PresentedAlgebra base;
  std::vector<Center> centers;
  /// Optional common base element b: centers [M, b^d] sharing M are collapsed
  /// to the largest d by normalize_center.
  std::optional<Polynomial> declared_base;

  std::size_t size() const { return centers.size(); }
  /// L_i = M_i + (a_i), generators of M_i followed by a_i.
  IdealHandle L(std::size_t i) const;
  /// f = product of all a_i (1 for the empty center).
  Polynomial product() const;
  MultiCenter restrict(const std::vector<std::size_t>& indices) const;
  std::string to_string() const;
};

MultiCenter make_center(const PresentedAlgebra& base,
                        const std::vector<std::pair<std::vector<std::string>, std::string>>& pairs);

struct Fraction {
  std::string var;  // fresh variable of A'
  std::size_t center = 0;
  std::size_t gen = 0;
  Polynomial numerator;    // g_ij in A
  Polynomial denominator;  // a_i in A
};

struct DilatationResult {
  MultiCenter center;
  PresentedAlgebra algebra;  // A'
  AlgebraHom iota;           // A -> A'
  std::vector<Fraction> fractions;
  /// fraction_index[i][j] indexes `fractions`.
  std::vector<std::vector<std::size_t>> fraction_index;
  IdealHandle presaturation;
  bool saturation_changed = false;
  bool zero_ring = false;

  /// The fresh variable for g_ij / a_i as an element of A'.
  Polynomial x(std::size_t i, std::size_t j) const;
  const std::string& x_name(std::size_t i, std::size_t j) const { return fractions[fraction_index[i][j]].var; }
};

/// Fresh-variable stem for `ring`: "x" unless some x_<i>_<j> name is taken,
/// then "x2", "x3", ...
std::string fresh_stem(const PolyRing& ring, const std::string& base, std::size_t ncenters,
                       const std::vector<std::size_t>& ngens);

MultiCenter normalize_center(const MultiCenter& c);
DilatationResult dilate(const MultiCenter& c, const std::string& stem = "x");

/// Explicit candidate maps both ways; passes only if both are well defined
/// and both composites are identities.
void certify_iso(Report& r, AlgebraHom forward, AlgebraHom backward, const std::string& prefix = "");

Report check_exceptional(const DilatationResult& r, const std::vector<Polynomial>& extra_nzd = {});

struct ForgetResult {
  AlgebraHom map;
  Report report;
};
ForgetResult forget_map(const MultiCenter& c, const std::vector<std::size_t>& keep);

struct MonopolyResult {
  MultiCenter mono;
  DilatationResult multi;
  DilatationResult single;
  std::optional<AlgebraHom> forward;   // single -> multi
  std::optional<AlgebraHom> backward;  // multi -> single
  Report report;
};
MonopolyResult monopoly_iso(const MultiCenter& c);

Report two_stage_iso(const MultiCenter& c, const std::vector<std::size_t>& first);
Report localize_compare(const MultiCenter& c);
/// `assign` maps every index outside `keep` to an index in `keep`.
Report open_immersion_iso(const MultiCenter& c, const std::vector<std::size_t>& keep,
                          const std::map<std::size_t, std::size_t>& assign);

struct KernelResult {
  std::optional<IdealHandle> kernel;  // in the ring of A'
  Report report;
};
/// Kernel of A' -> A/M0; requires every a_i to be a power of `a`, a regular
/// modulo M0, and M_i inside M0.
KernelResult center_kernel(const DilatationResult& r, const IdealHandle& M0, const Polynomial& a);

/// Centers [M_i, a^{s_i}] with M_0 = ideals[0]; compares the t-th dilatation
/// along the kernel ideal with the centers [M_i, a^{s_i + t}].
Report iterate_iso(const PresentedAlgebra& base, const Polynomial& a, const std::vector<IdealHandle>& ideals,
                   const std::vector<unsigned>& s, unsigned t);

Report base_change_compare(const MultiCenter& c, const AlgebraHom& h);
Report conic_iso(const MultiCenter& c);

struct FactorResult {
  std::optional<AlgebraHom> factor;  // A' -> B
  Report report;
};
FactorResult universal_factor(const MultiCenter& c, const AlgebraHom& chi,
                              const std::optional<AlgebraHom>& candidate = std::nullopt);

/// Certifies dilate(c) and dilate(normalize_center(c)) isomorphic through
/// the universal property both ways.
Report normalize_compare(const MultiCenter& c);

}  // namespace dila
