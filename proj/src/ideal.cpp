#include "dila/ideal.hpp"

#include <algorithm>

#include "dila/errors.hpp"

namespace dila {

namespace {

// Ring whose variables are `first` followed by the rest of `base`, ordered
// by a two-block elimination order.
RingPtr elimination_ring(const PolyRing& base, const std::vector<std::string>& first) {
  std::vector<std::string> vars = first;
  for (const auto& v : base.vars())
    if (std::find(first.begin(), first.end(), v) == first.end()) vars.push_back(v);
  std::vector<std::size_t> blocks{first.size()};
  if (vars.size() > first.size()) blocks.push_back(vars.size() - first.size());
  return PolyRing::make(base.field(), std::move(vars), MonomialOrder::block(std::move(blocks)));
}

RingPtr without(const PolyRing& base, const std::vector<std::string>& drop) {
  std::vector<std::string> vars;
  for (const auto& v : base.vars())
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) vars.push_back(v);
  auto ord = base.order().kind() == MonomialOrder::Kind::Block ? MonomialOrder::grevlex() : base.order();
  return PolyRing::make(base.field(), std::move(vars), ord);
}

// Basis elements of an elimination GB free of the first `k` variables.
std::vector<Polynomial> eliminated_part(const std::vector<Polynomial>& gb, std::size_t k) {
  std::vector<Polynomial> out;
  for (const auto& g : gb) {
    bool uses = false;
    for (std::size_t i = 0; i < k && !uses; ++i) uses = g.uses_variable(i);
    if (!uses) out.push_back(g);
  }
  return out;
}

}  // namespace

std::string fresh_name(const PolyRing& ring, const std::string& stem) {
  if (!ring.index_of(stem)) return stem;
  for (int n = 2;; ++n) {
    auto s = stem + "_" + std::to_string(n);
    if (!ring.index_of(s)) return s;
  }
}

IdealHandle::IdealHandle(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : gens_) require_same_ring(*ring_, *g.ring(), "ideal");
}

IdealHandle IdealHandle::unit(RingPtr ring) {
  auto one = Polynomial::constant(ring, 1);
  return IdealHandle(std::move(ring), {one});
}

const std::vector<Polynomial>& IdealHandle::groebner() const {
  std::call_once(cache_->gb_once, [&] { cache_->gb = buchberger_reduced(gens_); });
  return cache_->gb;
}

Polynomial IdealHandle::reduce(const Polynomial& f) const {
  require_same_ring(*ring_, *f.ring(), "ideal membership");
  return normal_form(f, groebner());
}

bool IdealHandle::contains(const Polynomial& f) const { return reduce(f).is_zero(); }

bool IdealHandle::contains(const IdealHandle& other) const {
  require_same_ring(*ring_, *other.ring_, "ideal containment");
  for (const auto& g : other.gens_)
    if (!contains(g)) return false;
  return true;
}

bool IdealHandle::is_unit() const {
  const auto& gb = groebner();
  return gb.size() == 1 && gb.front().is_constant();
}

bool IdealHandle::equals(const IdealHandle& other) const {
  require_same_ring(*ring_, *other.ring_, "ideal equality");
  return groebner() == other.groebner();
}

bool IdealHandle::radical_contains(const Polynomial& f) const {
  require_same_ring(*ring_, *f.ring(), "radical membership");
  if (is_unit()) return true;
  auto z = fresh_name(*ring_, "z");
  auto r = ring_->extended({z});
  std::vector<Polynomial> g;
  for (const auto& p : gens_) g.push_back(p.map_to(r));
  g.push_back(Polynomial::constant(r, 1) - Polynomial::variable(r, z) * f.map_to(r));
  return IdealHandle(r, std::move(g)).is_unit();
}

std::optional<std::vector<Polynomial>> IdealHandle::lift(const Polynomial& f) const {
  require_same_ring(*ring_, *f.ring(), "ideal lift");
  if (gens_.empty()) {
    if (f.is_zero()) return std::vector<Polynomial>{};
    return std::nullopt;
  }
  std::call_once(cache_->tracked_once, [&] { cache_->tracked = tracked_groebner(gens_, default_gb_limits()); });
  return dila::lift(f, cache_->tracked, gens_.size());
}

IdealHandle IdealHandle::map_to(const RingPtr& target) const {
  std::vector<Polynomial> g;
  for (const auto& p : gens_) g.push_back(p.map_to(target));
  return IdealHandle(target, std::move(g));
}

std::string IdealHandle::to_string() const {
  if (gens_.empty()) return "(0)";
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
  return s + ")";
}

IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b) {
  require_same_ring(*a.ring(), *b.ring(), "ideal sum");
  auto g = a.generators();
  g.insert(g.end(), b.generators().begin(), b.generators().end());
  return IdealHandle(a.ring(), std::move(g));
}

IdealHandle ideal_product(const IdealHandle& a, const IdealHandle& b) {
  require_same_ring(*a.ring(), *b.ring(), "ideal product");
  std::vector<Polynomial> g;
  for (const auto& p : a.generators())
    for (const auto& q : b.generators()) {
      auto pq = p * q;
      if (!pq.is_zero()) g.push_back(std::move(pq));
    }
  return IdealHandle(a.ring(), std::move(g));
}

IdealHandle ideal_power(const IdealHandle& a, unsigned n) {
  if (n == 0) return IdealHandle::unit(a.ring());
  IdealHandle r = a;
  for (unsigned i = 1; i < n; ++i) r = ideal_product(r, a);
  return r;
}

IdealHandle eliminate(const IdealHandle& a, const std::vector<std::string>& vars) {
  for (const auto& v : vars)
    if (!a.ring()->index_of(v)) throw InputError("eliminate: unknown variable '" + v + "'");
  auto er = elimination_ring(*a.ring(), vars);
  std::vector<Polynomial> g;
  for (const auto& p : a.generators()) g.push_back(p.map_to(er));
  auto gb = buchberger_reduced(g);
  auto target = without(*a.ring(), vars);
  std::vector<Polynomial> out;
  for (const auto& p : eliminated_part(gb, vars.size())) out.push_back(p.map_to(target));
  return IdealHandle(target, std::move(out));
}

IdealHandle eliminate_in_place(const IdealHandle& a, const std::vector<std::string>& vars) {
  return eliminate(a, vars).map_to(a.ring());
}

IdealHandle intersect(const IdealHandle& a, const IdealHandle& b) {
  require_same_ring(*a.ring(), *b.ring(), "intersection");
  if (a.generators().empty() || b.generators().empty()) return IdealHandle::zero(a.ring());
  auto t = fresh_name(*a.ring(), "t");
  auto r = a.ring()->extended({t});
  auto tv = Polynomial::variable(r, t);
  auto one_minus_t = Polynomial::constant(r, 1) - tv;
  std::vector<Polynomial> g;
  for (const auto& p : a.generators()) g.push_back(tv * p.map_to(r));
  for (const auto& p : b.generators()) g.push_back(one_minus_t * p.map_to(r));
  return eliminate(IdealHandle(r, std::move(g)), {t}).map_to(a.ring());
}

IdealHandle colon(const IdealHandle& a, const Polynomial& f) {
  require_same_ring(*a.ring(), *f.ring(), "colon");
  if (f.is_zero()) throw InputError("colon by the zero polynomial");
  auto i = intersect(a, IdealHandle(a.ring(), {f}));
  std::vector<Polynomial> g;
  for (const auto& p : i.generators()) g.push_back(p.divide_exact(f));
  return IdealHandle(a.ring(), std::move(g));
}

IdealHandle saturate(const IdealHandle& a, const Polynomial& f) {
  require_same_ring(*a.ring(), *f.ring(), "saturation");
  if (f.is_zero()) throw InputError("saturation by the zero polynomial");
  if (f.is_constant()) return a;
  auto z = fresh_name(*a.ring(), "z");
  auto r = a.ring()->extended({z});
  std::vector<Polynomial> g;
  for (const auto& p : a.generators()) g.push_back(p.map_to(r));
  g.push_back(Polynomial::constant(r, 1) - Polynomial::variable(r, z) * f.map_to(r));
  return eliminate(IdealHandle(r, std::move(g)), {z}).map_to(a.ring());
}

IdealHandle saturate(const IdealHandle& a, const std::vector<Polynomial>& fs) {
  auto f = Polynomial::constant(a.ring(), 1);
  for (const auto& p : fs) f = f * p;
  return saturate(a, f);
}

}  // namespace dila
