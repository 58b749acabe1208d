#pragma once

// Double deformation space of closed immersions V(J) in V(I) in Spec A as a
// two-center dilatation of A[s, t].

#include "dila/dilatation.hpp"

namespace dila {

struct RostInput {
  PresentedAlgebra base;
  IdealHandle I;
  IdealHandle J;  // I inside J

  /// Checks I inside J modulo the relations of `base`; throws InputError.
  static RostInput make(const PresentedAlgebra& base, const std::vector<std::string>& I,
                        const std::vector<std::string>& J);
  void validate() const;
};

/// Dilatation of A[s, t] at {[I, s*t], [J, s]}. The fraction variables are
/// u_j = x_1_j (I generators over st) and v_j = x_2_j (J generators over s).
DilatationResult rost_space(const RostInput& R);

/// For every (n, m) with |n|, |m| <= bound and every product l of generators
/// of I^n J^(m-n), writes l t^-n s^-m as a polynomial in the fraction
/// variables and checks it in A[s, t, 1/(st)]. bound <= 4.
Report rost_subalgebra_check(const RostInput& R, int bound = 4);

}  // namespace dila
