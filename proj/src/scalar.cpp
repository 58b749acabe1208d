#include "dila/scalar.hpp"

#include "dila/errors.hpp"

namespace dila {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw InputError("Fp(" + std::to_string(p) + "): characteristic must be a prime below 2^31");
  return Field(Kind::Prime, p);
}

std::string Field::to_string() const {
  return is_rational() ? "QQ" : "Fp(" + std::to_string(p_) + ")";
}

namespace {

std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Scalar Scalar::from_int(const Field& k, long n) {
  if (k.is_rational()) return Scalar(mpq_class(n));
  long p = k.characteristic();
  long r = n % p;
  if (r < 0) r += p;
  return Scalar(static_cast<std::uint32_t>(r), k.characteristic());
}

Scalar Scalar::from_rational(const Field& k, const mpq_class& q) {
  if (k.is_rational()) return Scalar(q);
  std::uint32_t p = k.characteristic();
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = q.get_den() % p;
  if (den == 0) throw InputError("denominator " + q.get_den().get_str() + " vanishes in " + k.to_string());
  Scalar n(static_cast<std::uint32_t>(num.get_ui()), p);
  Scalar d(static_cast<std::uint32_t>(den.get_ui()), p);
  return n / d;
}

bool Scalar::is_zero() const {
  if (auto q = rational()) return sgn(*q) == 0;
  return std::get<Residue>(v_).value == 0;
}

bool Scalar::is_one() const {
  if (auto q = rational()) return *q == 1;
  return std::get<Residue>(v_).value == 1;
}

bool Scalar::is_negative() const {
  if (auto q = rational()) return sgn(*q) < 0;
  return false;
}

std::uint32_t Scalar::residue() const {
  if (auto r = std::get_if<Residue>(&v_)) return r->value;
  return 0;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (auto q = rational()) return Scalar(mpq_class(*q + std::get<mpq_class>(o.v_)));
  auto a = std::get<Residue>(v_), b = std::get<Residue>(o.v_);
  std::uint64_t s = std::uint64_t(a.value) + b.value;
  return Scalar(static_cast<std::uint32_t>(s % a.p), a.p);
}

Scalar Scalar::operator-(const Scalar& o) const {
  if (auto q = rational()) return Scalar(mpq_class(*q - std::get<mpq_class>(o.v_)));
  auto a = std::get<Residue>(v_), b = std::get<Residue>(o.v_);
  std::uint64_t s = std::uint64_t(a.value) + a.p - b.value;
  return Scalar(static_cast<std::uint32_t>(s % a.p), a.p);
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (auto q = rational()) return Scalar(mpq_class(*q * std::get<mpq_class>(o.v_)));
  auto a = std::get<Residue>(v_), b = std::get<Residue>(o.v_);
  return Scalar(static_cast<std::uint32_t>(std::uint64_t(a.value) * b.value % a.p), a.p);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InputError("division by zero");
  if (auto q = rational()) return Scalar(mpq_class(1 / *q));
  auto a = std::get<Residue>(v_);
  return Scalar(mod_pow(a.value, a.p - 2, a.p), a.p);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (auto q = rational()) return Scalar(mpq_class(-*q));
  auto a = std::get<Residue>(v_);
  return Scalar(a.value == 0 ? 0 : a.p - a.value, a.p);
}

bool Scalar::operator==(const Scalar& o) const { return v_ == o.v_; }

std::string Scalar::to_string() const {
  if (auto q = rational()) return q->get_str();
  return std::to_string(std::get<Residue>(v_).value);
}

}  // namespace dila
