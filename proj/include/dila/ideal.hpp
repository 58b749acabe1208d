#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dila/groebner.hpp"

namespace dila {

/// Ideal of a polynomial ring given by generators. The reduced Groebner
/// basis (for the ring's order) is computed on first use and cached; copies
/// share the cache, so handles can be passed between threads freely.
class IdealHandle {
 public:
  explicit IdealHandle(RingPtr ring, std::vector<Polynomial> gens = {});

  static IdealHandle unit(RingPtr ring);
  static IdealHandle zero(RingPtr ring) { return IdealHandle(std::move(ring)); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<Polynomial>& groebner() const;

  Polynomial reduce(const Polynomial& f) const;
  bool contains(const Polynomial& f) const;
  bool contains(const IdealHandle& other) const;
  bool is_unit() const;
  bool is_zero() const { return groebner().empty(); }
  /// Ideal equality (reduced bases agree).
  bool equals(const IdealHandle& other) const;
  bool radical_contains(const Polynomial& f) const;

  /// Cofactors expressing f in the generators, or nullopt.
  std::optional<std::vector<Polynomial>> lift(const Polynomial& f) const;

  /// Same ideal, generators moved to another ring by variable name.
  IdealHandle map_to(const RingPtr& target) const;

  std::string to_string() const;

 private:
  struct Cache {
    std::once_flag gb_once;
    std::vector<Polynomial> gb;
    std::once_flag tracked_once;
    TrackedBasis tracked;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b);
IdealHandle ideal_product(const IdealHandle& a, const IdealHandle& b);
IdealHandle ideal_power(const IdealHandle& a, unsigned n);
IdealHandle intersect(const IdealHandle& a, const IdealHandle& b);
/// a : f
IdealHandle colon(const IdealHandle& a, const Polynomial& f);
/// a : f^infinity
IdealHandle saturate(const IdealHandle& a, const Polynomial& f);
/// a : (f_1 ... f_k)^infinity
IdealHandle saturate(const IdealHandle& a, const std::vector<Polynomial>& fs);
/// a intersected with the subring without `vars`; the result lives in a
/// ring whose registry omits them.
IdealHandle eliminate(const IdealHandle& a, const std::vector<std::string>& vars);
/// Same, but the result is kept in a's ring.
IdealHandle eliminate_in_place(const IdealHandle& a, const std::vector<std::string>& vars);

/// A variable name not present in `ring`, derived from `stem`.
std::string fresh_name(const PolyRing& ring, const std::string& stem);

}  // namespace dila
