#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace dila {

/// Coefficient domain of a polynomial ring: the rationals or a prime field F_p.
class Field {
 public:
  enum class Kind { Rational, Prime };

  static Field rationals() { return Field(Kind::Rational, 0); }
  /// Throws InputError unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  std::uint32_t characteristic() const { return p_; }

  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// An exact element of a Field. Rationals are kept in lowest terms with a
/// positive denominator (mpq canonical form); residues live in [0, p).
class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
  Scalar(std::uint32_t residue, std::uint32_t p) : v_(Residue{residue % p, p}) {}

  static Scalar from_int(const Field& k, long n);
  static Scalar from_rational(const Field& k, const mpq_class& q);
  static Scalar zero(const Field& k) { return from_int(k, 0); }
  static Scalar one(const Field& k) { return from_int(k, 1); }

  bool is_zero() const;
  bool is_one() const;
  /// True for a rational with negative value. Residues are never negative.
  bool is_negative() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  const mpq_class* rational() const { return std::get_if<mpq_class>(&v_); }
  /// Residue value for F_p scalars; 0 for rationals.
  std::uint32_t residue() const;

  std::string to_string() const;

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t p;
    bool operator==(const Residue&) const = default;
  };
  explicit Scalar(Residue r) : v_(r) {}
  std::variant<mpq_class, Residue> v_;
};

}  // namespace dila
