#pragma once

// Brute-force semantics over small finite rings, used as ground truth for
// the symbolic engine.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dila/algebra.hpp"
#include "dila/dilatation.hpp"
#include "dila/report.hpp"

namespace dila::oracle {

using Elem = std::uint16_t;

constexpr std::size_t kDefaultSizeCap = 4096;

/// Finite commutative ring given by full addition and multiplication tables.
class FiniteRing {
 public:
  /// Checks the ring axioms (all triples up to 64 elements, a fixed sample
  /// above) and throws InputError on failure.
  static FiniteRing from_tables(std::vector<std::string> labels, Elem zero, Elem one, std::vector<Elem> add,
                                std::vector<Elem> mul);
  /// Z/n. n = 1 gives the zero ring.
  static FiniteRing zmod(unsigned n, std::size_t cap = kDefaultSizeCap);
  /// Z/n[y]/(g) for monic g; `lower` holds the coefficients of g below the
  /// leading one, constant term first.
  static FiniteRing zmod_poly(unsigned n, const std::vector<long>& lower, const std::string& var = "y",
                              std::size_t cap = kDefaultSizeCap);
  /// Free Z/n-module on `basis` with the given structure constants:
  /// product[i][j] are the coordinates of basis_i * basis_j.
  static FiniteRing from_structure(unsigned n, std::vector<std::string> basis,
                                   const std::vector<std::vector<std::vector<long>>>& product,
                                   const std::vector<long>& one, std::size_t cap = kDefaultSizeCap);
  /// The subset `elems` (closed under +, *, negation, containing zero) with
  /// unit `one`, which need not be the parent's unit.
  static FiniteRing subring(const FiniteRing& parent, const std::vector<Elem>& elems, Elem one);

  std::size_t size() const { return n_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  Elem add(Elem a, Elem b) const { return add_[std::size_t(a) * n_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[std::size_t(a) * n_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem pow(Elem a, unsigned k) const;
  /// n-fold sum of one (n may be negative).
  Elem integer(long n) const;

  const std::string& label(Elem a) const { return labels_[a]; }
  std::optional<Elem> find(const std::string& label) const;

  bool is_zero_ring() const { return n_ == 1; }
  std::optional<Elem> inverse(Elem a) const;
  bool is_unit(Elem a) const { return inverse(a).has_value(); }
  bool is_nzd(Elem a) const;
  bool is_nilpotent(Elem a) const;
  bool is_reduced() const;
  bool is_field() const;

  /// Ideal generated by `gens`, sorted.
  std::vector<Elem> ideal(const std::vector<Elem>& gens) const;
  bool is_ideal(const std::vector<Elem>& set) const;
  /// Additive closure of `gens`, sorted.
  std::vector<Elem> additive_span(const std::vector<Elem>& gens) const;
  /// Subring generated by `gens` (with this ring's unit), sorted.
  std::vector<Elem> subring_closure(const std::vector<Elem>& gens) const;
  /// Ideal product (generated by pairwise products).
  std::vector<Elem> ideal_product(const std::vector<Elem>& I, const std::vector<Elem>& J) const;
  /// A small generating set for the ring, chosen greedily.
  std::vector<Elem> generators() const;

 private:
  std::size_t n_ = 0;
  Elem zero_ = 0, one_ = 0;
  std::vector<Elem> add_, mul_, neg_;
  std::vector<std::string> labels_;
  void verify() const;
};

/// Map between finite rings as an element table.
using FiniteMap = std::vector<Elem>;

/// True if `map` respects +, *, and the units.
bool is_ring_hom(const FiniteRing& A, const FiniteRing& B, const FiniteMap& map);

/// All ring homs A -> B that agree with `fixed` on the given elements of A,
/// by assigning images to `free` (generators completing `fixed` to a
/// generating set) and propagating. Throws ResourceLimit past `budget`
/// assignments.
std::vector<FiniteMap> enumerate_homs(const FiniteRing& A, const FiniteRing& B,
                                      const std::vector<std::pair<Elem, Elem>>& fixed, const std::vector<Elem>& free,
                                      std::size_t budget = std::size_t(1) << 22);

struct Localization {
  FiniteRing ring;   // e*A with unit e
  FiniteMap to_local;  // a -> e*a
  FiniteMap embed;     // ring element -> element of A
  unsigned t = 1;      // e = f^t is the first idempotent power
  Elem e = 0;
};
Localization localize_finite(const FiniteRing& A, Elem f);

struct FiniteCenterPair {
  std::vector<Elem> M;  // sorted ideal
  Elem a;
};
struct FiniteCenter {
  std::vector<FiniteCenterPair> centers;

  /// Centers from ideal generators.
  static FiniteCenter make(const FiniteRing& A, const std::vector<std::pair<std::vector<Elem>, Elem>>& gens);
  /// Centers from explicit subsets; throws InputError unless each is an ideal.
  static FiniteCenter from_sets(const FiniteRing& A, const std::vector<std::pair<std::vector<Elem>, Elem>>& sets);
  std::size_t size() const { return centers.size(); }
  Elem product(const FiniteRing& A) const;
  std::vector<Elem> L(const FiniteRing& A, std::size_t i) const;
};

/// Dilatation as the subring of A[1/f] generated by A and the fractions m/a_i.
struct SubringDilatation {
  Localization loc;
  FiniteRing ring;
  FiniteMap iota;   // A -> ring
  FiniteMap embed;  // ring -> loc.ring
  /// fractions[i][k]: the element M_i[k] / a_i.
  std::vector<std::vector<Elem>> fractions;
};
SubringDilatation dilate_oracle_subring(const FiniteRing& A, const FiniteCenter& C,
                                        std::size_t cap = kDefaultSizeCap);

/// Dilatation as classes of symbols m/a^nu, m in L^nu. Exponents run up to
/// the level where the classes of L^T/f^T stop growing; equivalence uses the
/// witness exponent t with f^t idempotent.
struct FractionDilatation {
  FiniteRing ring;
  FiniteMap iota;
  unsigned t = 1;      // witness exponent
  unsigned level = 0;  // exponent bound T
  std::size_t symbols = 0;
  /// Numerator at level T for each class (denominator f^T).
  std::vector<Elem> numerator;
  std::vector<std::vector<Elem>> fractions;  // as in SubringDilatation
  /// Certified bijection with the subring construction.
  FiniteMap to_subring;
  Report certificate{"fraction vs subring"};
};
FractionDilatation dilate_oracle_fractions(const FiniteRing& A, const FiniteCenter& C,
                                           std::size_t cap = kDefaultSizeCap);

/// Finite abelian group with an action of a finite ring.
class FiniteModule {
 public:
  static FiniteModule from_tables(const FiniteRing& A, std::vector<std::string> labels, Elem zero,
                                  std::vector<Elem> add, std::vector<Elem> act);
  static FiniteModule regular(const FiniteRing& A);
  static FiniteModule zero_module(const FiniteRing& A);

  std::size_t size() const { return n_; }
  std::size_t ring_size() const { return ring_n_; }
  Elem zero() const { return zero_; }
  Elem add(Elem x, Elem y) const { return add_[std::size_t(x) * n_ + y]; }
  Elem act(Elem a, Elem x) const { return act_[std::size_t(a) * n_ + x]; }
  const std::string& label(Elem x) const { return labels_[x]; }

  /// Submodule generated by the products l*x (l in `ideal`, x in `elems`).
  std::vector<Elem> span(const std::vector<Elem>& ideal, const std::vector<Elem>& elems) const;

 private:
  std::size_t n_ = 0, ring_n_ = 0;
  Elem zero_ = 0;
  std::vector<Elem> add_, act_;
  std::vector<std::string> labels_;
  void verify(const FiniteRing& A) const;
};

struct ModuleDilatation {
  FiniteModule module;  // over the ring of the FractionDilatation
  unsigned level = 0;
  Report checks{"module dilatation"};
};
/// `Ap` must be dilate_oracle_fractions(A, C).
ModuleDilatation module_dilate_oracle(const FiniteRing& A, const FiniteModule& M, const FiniteCenter& C,
                                      const FractionDilatation& Ap);

/// a_i injective on A' and (a^nu) = (L^nu) in A' for nu_i <= 2.
Report exceptional_checks(const FiniteRing& A, const FiniteCenter& C, const FractionDilatation& Ap);

struct NamedRing {
  std::string name;
  FiniteRing ring;
};
/// Z/n for 2 <= n <= max_n.
std::vector<NamedRing> zmod_catalog(unsigned max_n = 12);

/// For every hom A -> B with all images of a_i regular: the number of
/// A-algebra homs A' -> B is 1 when the images of M_i lie in a_i B, else 0.
Report universal_property_scan(const FiniteRing& A, const FiniteCenter& C, const FractionDilatation& Ap,
                               const std::vector<NamedRing>& catalog);

/// Reducedness preserved; field base with nonzero a_i gives A back.
Report preservation_checks(const FiniteRing& A, const FiniteCenter& C, const FractionDilatation& Ap);

/// Zero-dimensional algebra over F_p enumerated through its standard monomials.
struct AlgebraTable {
  PresentedAlgebra algebra;
  std::vector<Polynomial> basis;
  FiniteRing ring;
  Elem element(const Polynomial& f) const;
};
/// Throws InputError for rational coefficients or positive dimension and
/// ResourceLimit when p^dim exceeds `cap`.
AlgebraTable tabulate(const PresentedAlgebra& a, std::size_t cap = kDefaultSizeCap);

/// Runs both oracle constructions and the symbolic dilatation of `C` over an
/// F_p base and certifies a ring isomorphism matching fraction variables to
/// fractions.
Report compare_with_symbolic(const MultiCenter& C, std::size_t cap = kDefaultSizeCap);

}  // namespace dila::oracle
