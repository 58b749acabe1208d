#include "dila/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

#include "dila/errors.hpp"

namespace dila {

namespace {

std::mutex limits_mutex;
GbLimits global_limits;

void check_registry(const Polynomial& f, std::span<const Polynomial> basis, std::string_view what) {
  for (const auto& g : basis) require_same_ring(*f.ring(), *g.ring(), what);
}

// Buchberger engine over one ring. Optionally tracks, for every stored
// element, its expression in the original generators.
class Engine {
 public:
  Engine(RingPtr ring, std::size_t ngens, bool track, GbLimits limits)
      : ring_(std::move(ring)), ngens_(ngens), track_(track), limits_(limits) {}

  struct Elem {
    Polynomial p;
    std::vector<Polynomial> cof;
  };

  void add_generator(const Polynomial& g, std::size_t index) {
    Elem e{g, {}};
    if (track_) {
      e.cof.assign(ngens_, Polynomial(ring_));
      e.cof[index] = Polynomial::constant(ring_, 1);
    }
    insert(std::move(e));
  }

  void run() {
    while (!pairs_.empty() && !unit_) {
      auto best = select_pair();
      Pair pr = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      if (pr.lcm.degree() > limits_.degree_cap)
        throw ResourceLimit("Groebner basis: S-pair degree " + std::to_string(pr.lcm.degree()) +
                            " exceeds degree cap " + std::to_string(limits_.degree_cap));
      if (++spolys_ > limits_.pair_cap)
        throw ResourceLimit("Groebner basis: more than " + std::to_string(limits_.pair_cap) +
                            " S-polynomials (pair cap)");
      insert(spoly(pr.i, pr.j));
    }
  }

  // Reduced basis (and cofactors) from the active elements.
  TrackedBasis finish() {
    std::vector<std::size_t> idx;
    if (unit_) {
      idx.push_back(*unit_);
    } else {
      for (std::size_t k = 0; k < store_.size(); ++k)
        if (active_[k]) idx.push_back(k);
    }
    std::vector<Elem> out;
    for (auto k : idx) out.push_back(store_[k]);
    // Tail reduction against the other elements; leading monomials are fixed.
    for (std::size_t a = 0; a < out.size(); ++a) {
      Elem& e = out[a];
      Polynomial rest = e.p;
      rest.pop_leading();
      Polynomial head = Polynomial::monomial(ring_, e.p.leading_monomial(), e.p.leading_coeff());
      std::vector<Polynomial> cof = e.cof;
      Polynomial acc(ring_);
      while (!rest.is_zero()) {
        const Term& t = rest.terms().front();
        std::size_t r = out.size();
        for (std::size_t b = 0; b < out.size(); ++b)
          if (b != a && out[b].p.leading_monomial().divides(t.mono)) {
            r = b;
            break;
          }
        if (r == out.size()) {
          acc = acc + Polynomial::monomial(ring_, t.mono, t.coeff);
          rest.pop_leading();
          continue;
        }
        Scalar c = t.coeff / out[r].p.leading_coeff();
        Monomial m = t.mono / out[r].p.leading_monomial();
        rest = rest.sub_mul(c, m, out[r].p);
        if (track_)
          for (std::size_t j = 0; j < ngens_; ++j) cof[j] = cof[j].sub_mul(c, m, out[r].cof[j]);
      }
      e.p = head + acc;
      e.cof = std::move(cof);
    }
    const auto& ord = ring_->order();
    std::sort(out.begin(), out.end(), [&](const Elem& x, const Elem& y) {
      return ord.compare(x.p.leading_monomial(), y.p.leading_monomial()) > 0;
    });
    TrackedBasis tb;
    for (auto& e : out) {
      tb.basis.push_back(e.p);
      if (track_) tb.cofactors.push_back(std::move(e.cof));
    }
    return tb;
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  Elem spoly(std::size_t i, std::size_t j) const {
    const Elem& a = store_[i];
    const Elem& b = store_[j];
    Monomial l = a.p.leading_monomial().lcm(b.p.leading_monomial());
    Monomial ma = l / a.p.leading_monomial();
    Monomial mb = l / b.p.leading_monomial();
    Scalar one = Scalar::one(ring_->field());
    // Both stored elements are monic.
    Elem e{a.p.times_term(one, ma).sub_mul(one, mb, b.p), {}};
    if (track_) {
      e.cof.resize(ngens_, Polynomial(ring_));
      for (std::size_t k = 0; k < ngens_; ++k) e.cof[k] = a.cof[k].times_term(one, ma).sub_mul(one, mb, b.cof[k]);
    }
    return e;
  }

  // Full reduction by the active elements.
  void reduce(Elem& e) const {
    Polynomial rest = std::move(e.p);
    Polynomial acc(ring_);
    std::vector<Term> kept;
    while (!rest.is_zero()) {
      const Term& t = rest.terms().front();
      std::size_t r = store_.size();
      for (std::size_t k = 0; k < store_.size(); ++k)
        if (active_[k] && store_[k].p.leading_monomial().divides(t.mono)) {
          r = k;
          break;
        }
      if (r == store_.size()) {
        kept.push_back(t);
        rest.pop_leading();
        continue;
      }
      Scalar c = t.coeff;  // reducer is monic
      Monomial m = t.mono / store_[r].p.leading_monomial();
      rest = rest.sub_mul(c, m, store_[r].p);
      if (track_)
        for (std::size_t j = 0; j < ngens_; ++j) e.cof[j] = e.cof[j].sub_mul(c, m, store_[r].cof[j]);
    }
    e.p = Polynomial(ring_, std::move(kept));
  }

  void insert(Elem e) {
    reduce(e);
    if (e.p.is_zero()) return;
    Scalar inv = e.p.leading_coeff().inverse();
    e.p = e.p.scaled(inv);
    if (track_)
      for (auto& c : e.cof) c = c.scaled(inv);
    store_.push_back(std::move(e));
    active_.push_back(1);
    std::size_t h = store_.size() - 1;
    if (store_[h].p.is_constant()) {
      unit_ = h;
      pairs_.clear();
      return;
    }
    update(h);
  }

  // Gebauer-Moeller pair update for the new element h.
  void update(std::size_t h) {
    const Monomial& lh = store_[h].p.leading_monomial();
    std::vector<Pair> cand;
    for (std::size_t k = 0; k < h; ++k)
      if (active_[k]) cand.push_back({k, h, store_[k].p.leading_monomial().lcm(lh)});

    // Chain criterion among new pairs: drop (k,h) if some (l,h) has lcm
    // properly dividing it.
    std::vector<char> keep(cand.size(), 1);
    for (std::size_t a = 0; a < cand.size(); ++a)
      for (std::size_t b = 0; b < cand.size() && keep[a]; ++b) {
        if (a == b || !keep[b]) continue;
        if (cand[b].lcm.divides(cand[a].lcm) && !(cand[b].lcm == cand[a].lcm)) keep[a] = 0;
      }
    // Among equal lcms keep one; drop the whole class if any member is coprime.
    std::vector<Pair> fresh;
    std::vector<char> done(cand.size(), 0);
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (!keep[a] || done[a]) continue;
      bool coprime = false;
      for (std::size_t b = a; b < cand.size(); ++b) {
        if (!keep[b] || done[b] || !(cand[b].lcm == cand[a].lcm)) continue;
        done[b] = 1;
        if (store_[cand[b].i].p.leading_monomial().coprime(lh)) coprime = true;
      }
      if (!coprime) fresh.push_back(cand[a]);
    }
    // Old pairs made redundant by h.
    std::erase_if(pairs_, [&](const Pair& p) {
      if (!lh.divides(p.lcm)) return false;
      Monomial li = store_[p.i].p.leading_monomial().lcm(lh);
      Monomial lj = store_[p.j].p.leading_monomial().lcm(lh);
      return !(li == p.lcm) && !(lj == p.lcm);
    });
    for (auto& p : fresh) pairs_.push_back(std::move(p));
    // Elements whose leading monomial h divides are no longer needed.
    for (std::size_t k = 0; k < h; ++k)
      if (active_[k] && lh.divides(store_[k].p.leading_monomial())) active_[k] = 0;
  }

  std::size_t select_pair() const {
    const auto& ord = ring_->order();
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const auto& a = pairs_[k];
      const auto& b = pairs_[best];
      if (a.lcm.degree() != b.lcm.degree()) {
        if (a.lcm.degree() < b.lcm.degree()) best = k;
        continue;
      }
      int c = ord.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::pair(a.j, a.i) < std::pair(b.j, b.i))) best = k;
    }
    return best;
  }

  RingPtr ring_;
  std::size_t ngens_;
  bool track_;
  GbLimits limits_;
  std::vector<Elem> store_;
  std::vector<char> active_;
  std::vector<Pair> pairs_;
  std::size_t spolys_ = 0;
  std::optional<std::size_t> unit_;
};

TrackedBasis run_engine(std::span<const Polynomial> gens, const GbLimits& limits, bool track) {
  if (gens.empty()) return {};
  const RingPtr& ring = gens.front().ring();
  for (const auto& g : gens) require_same_ring(*ring, *g.ring(), "Groebner basis");
  Engine eng(ring, gens.size(), track, limits);
  // Low-degree generators first; keeps the run deterministic in the input
  // order while matching the normal strategy.
  std::vector<std::size_t> order(gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gens[a].total_degree() < gens[b].total_degree();
  });
  for (auto i : order)
    if (!gens[i].is_zero()) eng.add_generator(gens[i], i);
  eng.run();
  return eng.finish();
}

}  // namespace

GbLimits default_gb_limits() {
  std::lock_guard lock(limits_mutex);
  return global_limits;
}

void set_default_gb_limits(GbLimits limits) {
  std::lock_guard lock(limits_mutex);
  global_limits = limits;
}

Division divide(const Polynomial& f, std::span<const Polynomial> basis) {
  check_registry(f, basis, "normal form");
  const RingPtr& ring = f.ring();
  Division d{Polynomial(ring), std::vector<Polynomial>(basis.size(), Polynomial(ring))};
  std::vector<Term> kept;
  Polynomial rest = f;
  while (!rest.is_zero()) {
    const Term& t = rest.terms().front();
    std::size_t r = basis.size();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].is_zero()) throw InputError("normal form: zero basis element");
      if (basis[k].leading_monomial().divides(t.mono)) {
        r = k;
        break;
      }
    }
    if (r == basis.size()) {
      kept.push_back(t);
      rest.pop_leading();
      continue;
    }
    Scalar c = t.coeff / basis[r].leading_coeff();
    Monomial m = t.mono / basis[r].leading_monomial();
    rest = rest.sub_mul(c, m, basis[r]);
    d.quotients[r] = d.quotients[r] + Polynomial::monomial(ring, m, c);
  }
  d.remainder = Polynomial(ring, std::move(kept));
  return d;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis) { return divide(f, basis).remainder; }

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& order) {
  check_registry(f, basis, "normal form");
  RingPtr r = f.ring()->with_order(order);
  std::vector<Polynomial> b;
  for (const auto& g : basis) b.push_back(g.map_to(r));
  return normal_form(f.map_to(r), b);
}

std::vector<Polynomial> buchberger_reduced(std::span<const Polynomial> gens, const GbLimits& limits) {
  return run_engine(gens, limits, false).basis;
}

std::vector<Polynomial> buchberger_reduced(std::span<const Polynomial> gens) {
  return buchberger_reduced(gens, default_gb_limits());
}

std::vector<Polynomial> buchberger_reduced(std::span<const Polynomial> gens, const MonomialOrder& order) {
  if (gens.empty()) return {};
  RingPtr r = gens.front().ring()->with_order(order);
  std::vector<Polynomial> g;
  for (const auto& p : gens) {
    require_same_ring(*gens.front().ring(), *p.ring(), "Groebner basis");
    g.push_back(p.map_to(r));
  }
  return buchberger_reduced(g);
}

TrackedBasis tracked_groebner(std::span<const Polynomial> gens, const GbLimits& limits) {
  return run_engine(gens, limits, true);
}

std::optional<std::vector<Polynomial>> lift(const Polynomial& f, const TrackedBasis& tb, std::size_t ngens) {
  std::vector<Polynomial> c(ngens, Polynomial(f.ring()));
  if (f.is_zero()) return c;
  auto d = divide(f, tb.basis);
  if (!d.remainder.is_zero()) return std::nullopt;
  for (std::size_t k = 0; k < tb.basis.size(); ++k) {
    if (d.quotients[k].is_zero()) continue;
    for (std::size_t j = 0; j < ngens; ++j) c[j] = c[j] + d.quotients[k] * tb.cofactors[k][j];
  }
  return c;
}

std::optional<std::vector<Polynomial>> lift(const Polynomial& f, std::span<const Polynomial> gens) {
  if (gens.empty()) {
    if (f.is_zero()) return std::vector<Polynomial>{};
    return std::nullopt;
  }
  auto tb = tracked_groebner(gens, default_gb_limits());
  return lift(f, tb, gens.size());
}

}  // namespace dila
