#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dila/scalar.hpp"

namespace dila {

using Exponent = std::int32_t;

/// Power product over a fixed variable registry.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> e);

  std::size_t size() const { return e_.size(); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  std::span<const Exponent> exponents() const { return e_; }
  int degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  static Monomial unit(std::size_t nvars, std::size_t var, Exponent power = 1);

  Monomial operator*(const Monomial& o) const;
  /// Requires o | *this.
  Monomial operator/(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return e_ == o.e_; }

 private:
  std::vector<Exponent> e_;
  int deg_ = 0;
};

/// Lex, graded reverse lex, or a block order (consecutive variable blocks,
/// each ordered grevlex, earlier blocks dominating).
class MonomialOrder {
 public:
  enum class Kind { Lex, GRevLex, Block };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GRevLex, {}); }
  static MonomialOrder block(std::vector<std::size_t> sizes) {
    return MonomialOrder(Kind::Block, std::move(sizes));
  }

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& blocks() const { return blocks_; }

  /// Negative, zero, or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const;

  std::string to_string() const;
  bool operator==(const MonomialOrder&) const = default;

 private:
  MonomialOrder(Kind k, std::vector<std::size_t> b) : kind_(k), blocks_(std::move(b)) {}
  Kind kind_;
  std::vector<std::size_t> blocks_;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

/// Coefficient field, ordered variable names, and a monomial order. Immutable.
class PolyRing {
 public:
  static RingPtr make(Field field, std::vector<std::string> vars,
                      MonomialOrder order = MonomialOrder::grevlex());

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Same field and variable list; orders may differ.
  bool same_registry(const PolyRing& o) const { return field_ == o.field_ && vars_ == o.vars_; }
  bool identical(const PolyRing& o) const { return same_registry(o) && order_ == o.order_; }

  RingPtr with_order(MonomialOrder order) const { return make(field_, vars_, std::move(order)); }
  /// Appends variables (must be fresh names).
  RingPtr extended(const std::vector<std::string>& extra) const;

  std::string to_string() const;

 private:
  PolyRing(Field f, std::vector<std::string> v, MonomialOrder o)
      : field_(f), vars_(std::move(v)), order_(std::move(o)) {}
  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

/// Throws InputError when the two rings are not identical.
void require_same_ring(const PolyRing& a, const PolyRing& b, std::string_view what);

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse polynomial. Terms are kept in strictly decreasing order for the
/// ring's monomial order and carry nonzero coefficients.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, std::vector<Term> terms);  // normalizes

  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial monomial(RingPtr ring, Monomial m, Scalar c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff.is_one(); }

  /// Precondition: nonzero.
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }
  int total_degree() const;
  bool uses_variable(std::size_t i) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_term(const Scalar& c, const Monomial& m) const;
  Polynomial pow(unsigned n) const;
  Polynomial monic() const;
  /// Removes the leading term (no-op on zero).
  void pop_leading();
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// this - c*m*g, merged in one pass.
  Polynomial sub_mul(const Scalar& c, const Monomial& m, const Polynomial& g) const;

  /// Exact quotient by a divisor known to divide this polynomial; throws
  /// InputError otherwise.
  Polynomial divide_exact(const Polynomial& d) const;

  /// Re-expresses the polynomial in `target`, matching variables by name.
  /// Throws InputError if a used variable is missing from `target`.
  Polynomial map_to(const RingPtr& target) const;
  /// Evaluates at images[i] for variable i; all images share one ring.
  Polynomial substitute(std::span<const Polynomial> images, const RingPtr& target) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void normalize();
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Parses `3/2*x^2*y - z + 1`-style text (parentheses allowed).
/// Throws InputError with a column on malformed input or unknown names.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

std::string to_string(std::span<const Polynomial> polys);

}  // namespace dila
