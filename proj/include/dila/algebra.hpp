#pragma once

#include <string>
#include <vector>

#include "dila/ideal.hpp"

namespace dila {

/// k[y_1..y_m]/P. Elements are polynomials in the ambient ring, compared by
/// normal form modulo P. P = (1) is the zero ring.
class PresentedAlgebra {
 public:
  PresentedAlgebra(RingPtr ring, IdealHandle relations);
  explicit PresentedAlgebra(RingPtr ring) : PresentedAlgebra(ring, IdealHandle::zero(ring)) {}

  const RingPtr& ring() const { return ring_; }
  const IdealHandle& relations() const { return rel_; }
  const Field& field() const { return ring_->field(); }
  const std::vector<std::string>& vars() const { return ring_->vars(); }

  Polynomial reduce(const Polynomial& f) const { return rel_.reduce(f); }
  bool is_zero(const Polynomial& f) const { return rel_.contains(f); }
  bool equal(const Polynomial& f, const Polynomial& g) const { return is_zero(f - g); }
  bool is_zero_ring() const { return rel_.is_unit(); }

  Polynomial parse(std::string_view text) const { return parse_polynomial(ring_, text); }
  Polynomial var(std::string_view name) const { return Polynomial::variable(ring_, name); }
  Polynomial constant(long c) const { return Polynomial::constant(ring_, c); }

  /// Ideal of the ambient ring generated by P and `extra`.
  IdealHandle extended_ideal(const std::vector<Polynomial>& extra) const;
  /// Ideal identity J1 A = J2 A, i.e. P + J1 = P + J2.
  bool same_ideal(const std::vector<Polynomial>& j1, const std::vector<Polynomial>& j2) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  IdealHandle rel_;
};

/// Algebra map given by the image of each source variable.
struct AlgebraHom {
  PresentedAlgebra source;
  PresentedAlgebra target;
  std::vector<Polynomial> images;
  bool well_defined = false;  // set by check_hom

  Polynomial apply(const Polynomial& f) const;
  std::string to_string() const;
};

/// Builds a hom from `name -> text` pairs; unnamed source variables map to
/// the same-named target variable.
AlgebraHom parse_hom(const PresentedAlgebra& source, const PresentedAlgebra& target,
                     const std::vector<std::pair<std::string, std::string>>& images);
AlgebraHom make_hom(const PresentedAlgebra& source, const PresentedAlgebra& target, std::vector<Polynomial> images);
AlgebraHom identity_hom(const PresentedAlgebra& a);

/// True iff every source relation maps into the target relations.
bool check_hom(AlgebraHom& h);
bool is_well_defined(const AlgebraHom& h);
/// Kernel via elimination on the graph ideal; lives in the source ring.
IdealHandle hom_kernel(const AlgebraHom& h);
bool is_nzd(const PresentedAlgebra& a, const Polynomial& f);
bool maps_equal(const AlgebraHom& h1, const AlgebraHom& h2);
/// second after first.
AlgebraHom compose(const AlgebraHom& second, const AlgebraHom& first);
/// Kernel equals the source relations.
bool is_injective(const AlgebraHom& h);
/// Source-ring preimages of every target variable, or nullopt when some
/// variable is not in the image (so h is not surjective).
std::optional<std::vector<Polynomial>> surjection_preimages(const AlgebraHom& h);

}  // namespace dila
