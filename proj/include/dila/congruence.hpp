#pragma once

// Exhaustive finite-level checks for dilated point groups of GL_n / SL_n
// over Z/p^N and their Lie lattices.

#include <cstdint>
#include <string>
#include <vector>

#include "dila/report.hpp"

namespace dila::congruence {

/// Z/p^N with p^N <= 2^20.
struct LevelRing {
  std::uint32_t p = 2;
  unsigned N = 1;
  static LevelRing make(std::uint32_t p, unsigned N);
  std::uint32_t modulus() const;
  std::uint32_t power(unsigned k) const;  // p^k, capped at p^N
};

enum class GroupKind { GL, SL };

struct GroupSpec {
  GroupKind kind = GroupKind::GL;
  unsigned n = 2;  // 1 <= n <= 4
  static GroupSpec parse(const std::string& text);  // "GL_2", "SL_3"
  std::string to_string() const;
  unsigned lie_dimension() const { return kind == GroupKind::GL ? n * n : n * n - 1; }
};

/// Catalog subgroup. All but Center are cut out by requiring some matrix
/// entries of g - 1 to vanish; Center (scalars) is only used as a normalizer.
struct Subgroup {
  enum class Kind { Trivial, Torus, Borel, Levi, Whole, Center };
  Kind kind = Kind::Trivial;
  std::vector<unsigned> blocks;  // Levi block sizes

  /// "e", "T", "B", "G", "Z", "L(1,2)".
  static Subgroup parse(const std::string& text);
  std::string to_string() const;
  bool is_pattern() const { return kind != Kind::Center; }
  /// Entry (a, b) of g - 1 is forced to vanish. Requires a pattern kind.
  bool forced(unsigned a, unsigned b) const;
  void validate(unsigned n) const;
};

using Matrix = std::vector<std::uint32_t>;  // row-major, entries mod q

Matrix identity(unsigned n);
Matrix multiply(const Matrix& x, const Matrix& y, unsigned n, std::uint32_t q);
std::uint32_t determinant(const Matrix& x, unsigned n, std::uint32_t q);
/// Requires an invertible determinant.
Matrix inverse(const Matrix& x, unsigned n, std::uint32_t q);
std::string to_string(const Matrix& x, unsigned n);

/// True if x (entries mod q) lies in G(Z/q).
bool in_group(const GroupSpec& G, const Matrix& x, std::uint32_t q);
/// True if x mod m lies in H(Z/m).
bool in_subgroup(const GroupSpec& G, const Subgroup& H, const Matrix& x, std::uint32_t m);

struct EnumeratedGroup {
  GroupSpec group;
  std::uint32_t modulus = 0;
  std::vector<Matrix> elements;
  bool closed = false;          // products and inverses stay inside
  bool exhaustive = true;       // false when closure was sampled
};

/// Points g of G(Z/p^N) with g mod p^(v_i) in H_i(Z/p^(v_i)) for all i, via
/// the lattice parametrization g = 1 + z. H_0 should be trivial.
EnumeratedGroup group_points(const GroupSpec& G, const std::vector<Subgroup>& H, const std::vector<unsigned>& v,
                             const LevelRing& R, std::size_t budget = std::size_t(1) << 22);

/// x in gl_n or sl_n over Z/p^N with x mod p^(v_i) in Lie(H_i).
std::vector<Matrix> lie_points(const GroupSpec& G, const std::vector<Subgroup>& H, const std::vector<unsigned>& v,
                               const LevelRing& R, std::size_t budget = std::size_t(1) << 22);

/// H(Z/p^m) by enumeration of the free entries.
std::vector<Matrix> subgroup_points(const GroupSpec& G, const Subgroup& H, const LevelRing& R, unsigned m,
                                    std::size_t budget = std::size_t(1) << 22);

/// G_s / G_r against Lie_s / Lie_r under g -> g - 1.
Report congruent_iso_check(const GroupSpec& G, const std::vector<Subgroup>& H, const std::vector<unsigned>& s,
                           const std::vector<unsigned>& r, const LevelRing& R);

/// K normalizes G_r, after checking that K commutes with each H_i at level
/// p^(r_i).
Report normalizer_check(const GroupSpec& G, const Subgroup& K, const std::vector<Subgroup>& H,
                        const std::vector<unsigned>& r, const LevelRing& R);

}  // namespace dila::congruence
