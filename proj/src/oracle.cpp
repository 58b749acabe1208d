#include "dila/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "dila/errors.hpp"
#include "dila/groebner.hpp"

namespace dila::oracle {

namespace {

std::size_t checked_power(unsigned n, std::size_t d, std::size_t cap) {
  std::size_t N = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (N > cap / std::max(1u, n)) throw ResourceLimit("finite ring exceeds size cap " + std::to_string(cap));
    N *= n;
  }
  if (N > cap) throw ResourceLimit("finite ring exceeds size cap " + std::to_string(cap));
  return N;
}

long mod(long a, long n) { return ((a % n) + n) % n; }

std::size_t position(const std::vector<Elem>& sorted, Elem x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  if (it == sorted.end() || *it != x) throw std::logic_error("element outside subset");
  return std::size_t(it - sorted.begin());
}

bool contains(const std::vector<Elem>& sorted, Elem x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <class Plus>
std::vector<Elem> span_of(std::size_t n, Elem zero, std::vector<Elem> gens, Plus plus) {
  gens = sorted_unique(std::move(gens));
  std::vector<char> seen(n, 0);
  std::vector<Elem> out{zero};
  seen[zero] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (auto g : gens) {
      auto y = plus(out[k], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Every triple for small sizes, a fixed pseudo-random sample otherwise.
template <class F>
void for_triples(std::size_t n, F f) {
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) f(Elem(a), Elem(b), Elem(c));
    return;
  }
  std::mt19937_64 rng(12345);
  for (int k = 0; k < 20000; ++k) f(Elem(rng() % n), Elem(rng() % n), Elem(rng() % n));
}

}  // namespace

// ----------------------------------------------------------------- FiniteRing

FiniteRing FiniteRing::from_tables(std::vector<std::string> labels, Elem zero, Elem one, std::vector<Elem> add,
                                   std::vector<Elem> mul) {
  FiniteRing r;
  r.n_ = labels.size();
  if (r.n_ == 0 || add.size() != r.n_ * r.n_ || mul.size() != r.n_ * r.n_ || zero >= r.n_ || one >= r.n_)
    throw InputError("finite ring: inconsistent table sizes");
  r.zero_ = zero;
  r.one_ = one;
  r.add_ = std::move(add);
  r.mul_ = std::move(mul);
  r.labels_ = std::move(labels);
  r.neg_.assign(r.n_, zero);
  for (std::size_t a = 0; a < r.n_; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < r.n_ && !found; ++b)
      if (r.add(Elem(a), Elem(b)) == zero) {
        r.neg_[a] = Elem(b);
        found = true;
      }
    if (!found) throw InputError("finite ring: " + r.labels_[a] + " has no additive inverse");
  }
  r.verify();
  return r;
}

void FiniteRing::verify() const {
  for (std::size_t a = 0; a < n_; ++a) {
    if (add(Elem(a), zero_) != a || mul(Elem(a), one_) != a)
      throw InputError("finite ring: identity law fails at " + labels_[a]);
    for (std::size_t b = 0; b < n_; ++b)
      if (add(Elem(a), Elem(b)) != add(Elem(b), Elem(a)) || mul(Elem(a), Elem(b)) != mul(Elem(b), Elem(a)))
        throw InputError("finite ring: not commutative at " + labels_[a] + ", " + labels_[b]);
  }
  for_triples(n_, [&](Elem a, Elem b, Elem c) {
    if (add(add(a, b), c) != add(a, add(b, c)) || mul(mul(a, b), c) != mul(a, mul(b, c)) ||
        mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
      throw InputError("finite ring: axiom fails at " + labels_[a] + ", " + labels_[b] + ", " + labels_[c]);
  });
}

FiniteRing FiniteRing::from_structure(unsigned n, std::vector<std::string> basis,
                                      const std::vector<std::vector<std::vector<long>>>& product,
                                      const std::vector<long>& one, std::size_t cap) {
  if (n == 0) throw InputError("finite ring: modulus must be positive");
  std::size_t d = basis.size();
  std::size_t N = checked_power(n, d, cap);
  std::vector<std::size_t> pw(d + 1, 1);
  for (std::size_t k = 1; k <= d; ++k) pw[k] = pw[k - 1] * n;
  std::vector<unsigned> digits(N * d);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t k = 0; k < d; ++k) digits[x * d + k] = unsigned((x / pw[k]) % n);
  auto encode = [&](const std::vector<long>& c) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < d; ++k) idx += std::size_t(mod(c[k], n)) * pw[k];
    return Elem(idx);
  };

  std::vector<Elem> add(N * N), mul(N * N, 0);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < d; ++k) idx += ((digits[x * d + k] + digits[y * d + k]) % n) * pw[k];
      add[x * N + y] = Elem(idx);
    }

  // y = y' + c*b_j with b_j the top nonzero digit of y, so row x fills in
  // increasing y from x*y' and the multiples of x*b_j.
  std::vector<std::size_t> top(N, 0), rest(N, 0);
  std::vector<unsigned> topc(N, 0);
  for (std::size_t y = 1; y < N; ++y) {
    std::size_t j = d;
    while (digits[y * d + (j - 1)] == 0) --j;
    top[y] = j - 1;
    topc[y] = digits[y * d + j - 1];
    rest[y] = y - topc[y] * pw[j - 1];
  }
  std::vector<Elem> mult(d * n);
  for (std::size_t x = 0; x < N; ++x) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<long> c(d, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) c[k] += long(digits[x * d + i]) * product[i][j][k];
      Elem xb = encode(c);
      mult[j * n] = 0;
      for (unsigned m = 1; m < n; ++m) mult[j * n + m] = add[std::size_t(mult[j * n + m - 1]) * N + xb];
    }
    for (std::size_t y = 1; y < N; ++y)
      mul[x * N + y] = add[std::size_t(mul[x * N + rest[y]]) * N + mult[top[y] * n + topc[y]]];
  }

  std::vector<std::string> labels(N);
  for (std::size_t x = 0; x < N; ++x) {
    std::string s;
    for (std::size_t k = d; k-- > 0;) {
      unsigned c = digits[x * d + k];
      if (!c) continue;
      std::string term;
      if (basis[k] == "1")
        term = std::to_string(c);
      else
        term = c == 1 ? basis[k] : std::to_string(c) + "*" + basis[k];
      s += (s.empty() ? "" : " + ") + term;
    }
    labels[x] = s.empty() ? "0" : s;
  }
  return from_tables(std::move(labels), 0, encode(one), std::move(add), std::move(mul));
}

FiniteRing FiniteRing::zmod(unsigned n, std::size_t cap) {
  if (n == 1) return from_structure(1, {}, {}, {}, cap);
  return from_structure(n, {"1"}, {{{1}}}, {1}, cap);
}

FiniteRing FiniteRing::zmod_poly(unsigned n, const std::vector<long>& lower, const std::string& var,
                                 std::size_t cap) {
  std::size_t d = lower.size();
  if (n == 1 || d == 0) return from_structure(1, {}, {}, {}, cap);
  std::vector<std::string> basis;
  for (std::size_t k = 0; k < d; ++k)
    basis.push_back(k == 0 ? "1" : k == 1 ? var : var + "^" + std::to_string(k));
  // y^m reduced modulo the monic polynomial, for m < 2d - 1.
  std::vector<std::vector<long>> powers;
  for (std::size_t m = 0; m + 1 < 2 * d; ++m) {
    std::vector<long> c(d, 0);
    if (m < d) {
      c[m] = 1;
    } else {
      const auto& prev = powers[m - 1];
      long top = prev[d - 1];
      for (std::size_t k = d - 1; k > 0; --k) c[k] = prev[k - 1];
      c[0] = 0;
      for (std::size_t k = 0; k < d; ++k) c[k] = mod(c[k] - top * lower[k], n);
    }
    powers.push_back(c);
  }
  std::vector<std::vector<std::vector<long>>> product(d, std::vector<std::vector<long>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) product[i][j] = powers[i + j];
  std::vector<long> one(d, 0);
  one[0] = 1;
  return from_structure(n, basis, product, one, cap);
}

FiniteRing FiniteRing::subring(const FiniteRing& parent, const std::vector<Elem>& elems, Elem one) {
  auto s = sorted_unique(elems);
  std::size_t m = s.size();
  std::vector<Elem> add(m * m), mul(m * m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(parent.label(s[i]));
    for (std::size_t j = 0; j < m; ++j) {
      auto a = parent.add(s[i], s[j]), p = parent.mul(s[i], s[j]);
      if (!contains(s, a) || !contains(s, p)) throw InputError("finite ring: subset is not closed");
      add[i * m + j] = Elem(position(s, a));
      mul[i * m + j] = Elem(position(s, p));
    }
  }
  if (!contains(s, parent.zero()) || !contains(s, one)) throw InputError("finite ring: subset misses zero or unit");
  return from_tables(std::move(labels), Elem(position(s, parent.zero())), Elem(position(s, one)), std::move(add),
                     std::move(mul));
}

Elem FiniteRing::pow(Elem a, unsigned k) const {
  Elem r = one_, b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

Elem FiniteRing::integer(long n) const {
  Elem r = zero_;
  for (long k = 0; k < std::labs(n); ++k) r = add(r, one_);
  return n < 0 ? neg(r) : r;
}

std::optional<Elem> FiniteRing::find(const std::string& label) const {
  for (std::size_t a = 0; a < n_; ++a)
    if (labels_[a] == label) return Elem(a);
  return std::nullopt;
}

std::optional<Elem> FiniteRing::inverse(Elem a) const {
  for (std::size_t b = 0; b < n_; ++b)
    if (mul(a, Elem(b)) == one_) return Elem(b);
  return std::nullopt;
}

bool FiniteRing::is_nzd(Elem a) const {
  for (std::size_t b = 0; b < n_; ++b)
    if (b != zero_ && mul(a, Elem(b)) == zero_) return false;
  return true;
}

bool FiniteRing::is_nilpotent(Elem a) const {
  Elem p = a;
  for (std::size_t k = 0; k <= n_; ++k) {
    if (p == zero_) return true;
    p = mul(p, a);
  }
  return false;
}

bool FiniteRing::is_reduced() const {
  for (std::size_t a = 0; a < n_; ++a)
    if (a != zero_ && is_nilpotent(Elem(a))) return false;
  return true;
}

bool FiniteRing::is_field() const {
  if (n_ < 2) return false;
  for (std::size_t a = 0; a < n_; ++a)
    if (a != zero_ && !is_unit(Elem(a))) return false;
  return true;
}

std::vector<Elem> FiniteRing::additive_span(const std::vector<Elem>& gens) const {
  return span_of(n_, zero_, gens, [&](Elem x, Elem y) { return add(x, y); });
}

std::vector<Elem> FiniteRing::ideal(const std::vector<Elem>& gens) const {
  std::vector<Elem> s;
  for (auto g : sorted_unique(gens))
    for (std::size_t r = 0; r < n_; ++r) s.push_back(mul(g, Elem(r)));
  return additive_span(s);
}

bool FiniteRing::is_ideal(const std::vector<Elem>& set) const {
  auto s = sorted_unique(set);
  if (!contains(s, zero_)) return false;
  for (auto x : s) {
    for (auto y : s)
      if (!contains(s, add(x, y))) return false;
    for (std::size_t r = 0; r < n_; ++r)
      if (!contains(s, mul(x, Elem(r)))) return false;
  }
  return true;
}

std::vector<Elem> FiniteRing::subring_closure(const std::vector<Elem>& gens) const {
  std::vector<char> seen(n_, 0);
  std::vector<Elem> list;
  auto push = [&](Elem x) {
    if (!seen[x]) {
      seen[x] = 1;
      list.push_back(x);
    }
  };
  push(zero_);
  push(one_);
  for (auto g : gens) push(g);
  for (std::size_t i = 0; i < list.size(); ++i) {
    push(neg(list[i]));
    for (std::size_t j = 0; j <= i; ++j) {
      push(add(list[i], list[j]));
      push(mul(list[i], list[j]));
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

std::vector<Elem> FiniteRing::ideal_product(const std::vector<Elem>& I, const std::vector<Elem>& J) const {
  std::vector<Elem> p;
  for (auto x : I)
    for (auto y : J) p.push_back(mul(x, y));
  return additive_span(p);
}

std::vector<Elem> FiniteRing::generators() const {
  std::vector<Elem> gens;
  auto closure = subring_closure(gens);
  for (std::size_t x = 0; x < n_ && closure.size() < n_; ++x) {
    if (contains(closure, Elem(x))) continue;
    gens.push_back(Elem(x));
    closure = subring_closure(gens);
  }
  return gens;
}

// ------------------------------------------------------------------- homs

bool is_ring_hom(const FiniteRing& A, const FiniteRing& B, const FiniteMap& map) {
  if (map.size() != A.size() || map[A.one()] != B.one()) return false;
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < A.size(); ++y) {
      if (map[A.add(Elem(x), Elem(y))] != B.add(map[x], map[y])) return false;
      if (map[A.mul(Elem(x), Elem(y))] != B.mul(map[x], map[y])) return false;
    }
  return true;
}

namespace {

// Propagates an assignment through + and *; every pair of reached elements
// is checked once, so a completed map is a ring hom.
std::optional<FiniteMap> extend_hom(const FiniteRing& A, const FiniteRing& B,
                                    const std::vector<std::pair<Elem, Elem>>& seed) {
  std::vector<int> img(A.size(), -1);
  std::vector<Elem> known;
  auto assign = [&](Elem x, Elem y) {
    if (img[x] < 0) {
      img[x] = y;
      known.push_back(x);
      return true;
    }
    return img[x] == y;
  };
  if (!assign(A.zero(), B.zero()) || !assign(A.one(), B.one())) return std::nullopt;
  for (auto [x, y] : seed)
    if (!assign(x, y)) return std::nullopt;
  for (std::size_t i = 0; i < known.size(); ++i) {
    Elem x = known[i];
    Elem ix = Elem(img[x]);
    if (!assign(A.neg(x), B.neg(ix))) return std::nullopt;
    for (std::size_t j = 0; j <= i; ++j) {
      Elem y = known[j];
      Elem iy = Elem(img[y]);
      if (!assign(A.add(x, y), B.add(ix, iy))) return std::nullopt;
      if (!assign(A.mul(x, y), B.mul(ix, iy))) return std::nullopt;
    }
  }
  if (known.size() != A.size()) throw std::logic_error("hom enumeration: seed does not generate the ring");
  FiniteMap m(A.size());
  for (std::size_t x = 0; x < A.size(); ++x) m[x] = Elem(img[x]);
  return m;
}

}  // namespace

std::vector<FiniteMap> enumerate_homs(const FiniteRing& A, const FiniteRing& B,
                                      const std::vector<std::pair<Elem, Elem>>& fixed, const std::vector<Elem>& free,
                                      std::size_t budget) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < free.size(); ++k) {
    if (total > budget / B.size()) throw ResourceLimit("hom enumeration exceeds budget " + std::to_string(budget));
    total *= B.size();
  }
  std::vector<FiniteMap> out;
  std::vector<std::size_t> choice(free.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    auto seed = fixed;
    for (std::size_t k = 0; k < free.size(); ++k) seed.emplace_back(free[k], Elem(choice[k]));
    if (auto m = extend_hom(A, B, seed)) out.push_back(std::move(*m));
    for (std::size_t k = 0; k < free.size(); ++k) {
      if (++choice[k] < B.size()) break;
      choice[k] = 0;
    }
  }
  return out;
}

// ----------------------------------------------------------- localization

Localization localize_finite(const FiniteRing& A, Elem f) {
  Elem p = f;
  unsigned t = 1;
  while (A.mul(p, p) != p) {
    p = A.mul(p, f);
    ++t;
    if (t > A.size() + 1) throw std::logic_error("no idempotent power");
  }
  std::vector<Elem> elems;
  for (std::size_t a = 0; a < A.size(); ++a) elems.push_back(A.mul(p, Elem(a)));
  elems = sorted_unique(std::move(elems));
  Localization L{FiniteRing::subring(A, elems, p), FiniteMap(A.size()), elems, t, p};
  for (std::size_t a = 0; a < A.size(); ++a) L.to_local[a] = Elem(position(elems, A.mul(p, Elem(a))));
  return L;
}

// ---------------------------------------------------------------- centers

FiniteCenter FiniteCenter::make(const FiniteRing& A, const std::vector<std::pair<std::vector<Elem>, Elem>>& gens) {
  FiniteCenter c;
  for (const auto& [g, a] : gens) c.centers.push_back({A.ideal(g), a});
  return c;
}

FiniteCenter FiniteCenter::from_sets(const FiniteRing& A,
                                     const std::vector<std::pair<std::vector<Elem>, Elem>>& sets) {
  FiniteCenter c;
  for (const auto& [s, a] : sets) {
    if (!A.is_ideal(s)) throw InputError("finite center: subset is not an ideal");
    c.centers.push_back({sorted_unique(s), a});
  }
  return c;
}

Elem FiniteCenter::product(const FiniteRing& A) const {
  Elem p = A.one();
  for (const auto& c : centers) p = A.mul(p, c.a);
  return p;
}

std::vector<Elem> FiniteCenter::L(const FiniteRing& A, std::size_t i) const {
  auto g = centers[i].M;
  g.push_back(centers[i].a);
  return A.ideal(g);
}

// --------------------------------------------------------- subring route

SubringDilatation dilate_oracle_subring(const FiniteRing& A, const FiniteCenter& C, std::size_t cap) {
  auto loc = localize_finite(A, C.product(A));
  const auto& Lr = loc.ring;
  std::vector<Elem> gens(loc.to_local.begin(), loc.to_local.end());
  std::vector<std::vector<Elem>> frac_local(C.size());
  for (std::size_t i = 0; i < C.size(); ++i) {
    auto inv = Lr.inverse(loc.to_local[C.centers[i].a]);
    if (!inv) throw std::logic_error("denominator not invertible after localization");
    for (auto m : C.centers[i].M) {
      frac_local[i].push_back(Lr.mul(loc.to_local[m], *inv));
      gens.push_back(frac_local[i].back());
    }
  }
  auto closure = Lr.subring_closure(gens);
  if (closure.size() > cap) throw ResourceLimit("dilatation exceeds size cap");
  SubringDilatation out{loc, FiniteRing::subring(Lr, closure, Lr.one()), FiniteMap(A.size()), closure, {}};
  for (std::size_t a = 0; a < A.size(); ++a) out.iota[a] = Elem(position(closure, loc.to_local[a]));
  for (auto& fl : frac_local) {
    std::vector<Elem> v;
    for (auto x : fl) v.push_back(Elem(position(closure, x)));
    out.fractions.push_back(std::move(v));
  }
  return out;
}

// -------------------------------------------------------- fraction route

namespace {

// L^nu as an ideal of A, with cached powers of each L_i.
class PowerCache {
 public:
  PowerCache(const FiniteRing& A, const FiniteCenter& C) : A_(A) {
    for (std::size_t i = 0; i < C.size(); ++i) {
      std::vector<Elem> all(A.size());
      for (std::size_t a = 0; a < A.size(); ++a) all[a] = Elem(a);
      pow_.push_back({all, C.L(A, i)});
    }
  }
  const std::vector<Elem>& power(std::size_t i, unsigned k) {
    while (pow_[i].size() <= k) pow_[i].push_back(A_.ideal_product(pow_[i].back(), pow_[i][1]));
    return pow_[i][k];
  }
  std::vector<Elem> product(const std::vector<unsigned>& nu) {
    std::vector<Elem> I(A_.size());
    for (std::size_t a = 0; a < A_.size(); ++a) I[a] = Elem(a);
    for (std::size_t i = 0; i < nu.size(); ++i)
      if (nu[i]) I = A_.ideal_product(I, power(i, nu[i]));
    return I;
  }

 private:
  const FiniteRing& A_;
  std::vector<std::vector<std::vector<Elem>>> pow_;
};

Elem a_power(const FiniteRing& A, const FiniteCenter& C, const std::vector<unsigned>& nu) {
  Elem p = A.one();
  for (std::size_t i = 0; i < nu.size(); ++i) p = A.mul(p, A.pow(C.centers[i].a, nu[i]));
  return p;
}

std::size_t distinct_count(const FiniteRing& A, const std::vector<Elem>& I, Elem scale) {
  std::vector<char> seen(A.size(), 0);
  std::size_t n = 0;
  for (auto m : I) {
    auto k = A.mul(m, scale);
    if (!seen[k]) {
      seen[k] = 1;
      ++n;
    }
  }
  return n;
}

// Classes q/f^T are identified by where their numerator lands after the
// witness factor; `by_key(aν)` finds the class of a symbol m/a^ν from the
// value m * f^(t+T).
struct ClassIndex {
  const FiniteRing& A;
  Elem ft;  // f^t
  const std::vector<Elem>& numerator;
  std::vector<int> table(Elem a_nu) const {
    std::vector<int> t(A.size(), -1);
    Elem scale = A.mul(ft, a_nu);
    for (std::size_t q = 0; q < numerator.size(); ++q) t[A.mul(numerator[q], scale)] = int(q);
    return t;
  }
};

}  // namespace

FractionDilatation dilate_oracle_fractions(const FiniteRing& A, const FiniteCenter& C, std::size_t cap) {
  auto sub = dilate_oracle_subring(A, C, cap);
  const unsigned t = sub.loc.t;
  const std::size_t k = C.size();
  const Elem f = C.product(A);
  const Elem ft = A.pow(f, t);
  PowerCache cache(A, C);

  unsigned T = 0;
  for (;; ++T) {
    if (T > A.size() + 1) throw std::logic_error("fraction classes do not stabilize");
    auto n0 = distinct_count(A, cache.product(std::vector<unsigned>(k, T)), A.pow(f, t + T));
    auto n1 = distinct_count(A, cache.product(std::vector<unsigned>(k, T + 1)), A.pow(f, t + T + 1));
    if (n0 == n1) break;
  }

  FractionDilatation out;
  out.t = t;
  out.level = T;
  const Elem fT = A.pow(f, T);
  const Elem key_scale = A.pow(f, t + T);

  // Classes from the top level ν = (T, ..., T).
  std::vector<int> class_of_key(A.size(), -1);
  for (auto m : cache.product(std::vector<unsigned>(k, T))) {
    auto key = A.mul(m, key_scale);
    if (class_of_key[key] < 0) {
      class_of_key[key] = int(out.numerator.size());
      out.numerator.push_back(m);
    }
  }
  if (out.numerator.size() > cap) throw ResourceLimit("dilatation exceeds size cap");
  ClassIndex idx{A, ft, out.numerator};

  // Every symbol m/a^ν with ν <= (T..T) lands in one of these classes.
  std::vector<unsigned> nu(k, 0);
  const std::size_t budget = std::size_t(1) << 22;
  while (true) {
    auto tab = idx.table(a_power(A, C, nu));
    for (auto m : cache.product(nu)) {
      if (++out.symbols > budget) throw ResourceLimit("fraction symbol enumeration exceeds budget");
      if (tab[A.mul(m, key_scale)] < 0) throw std::logic_error("fraction symbol outside the top level");
    }
    std::size_t p = 0;
    while (p < k && nu[p] == T) nu[p++] = 0;
    if (p == k) break;
    ++nu[p];
  }

  const std::size_t N = out.numerator.size();
  std::vector<Elem> add(N * N), mul(N * N);
  auto twoT = idx.table(A.pow(f, 2 * T));
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      auto s = class_of_key[A.mul(A.add(out.numerator[x], out.numerator[y]), key_scale)];
      auto p = twoT[A.mul(A.mul(out.numerator[x], out.numerator[y]), key_scale)];
      if (s < 0 || p < 0) throw std::logic_error("fraction arithmetic left the class set");
      add[x * N + y] = Elem(s);
      mul[x * N + y] = Elem(p);
    }
  std::vector<std::string> labels;
  for (auto m : out.numerator)
    labels.push_back(T == 0 ? A.label(m) : "(" + A.label(m) + ")/(" + A.label(f) + ")^" + std::to_string(T));
  Elem zero = Elem(class_of_key[A.mul(A.zero(), key_scale)]);
  Elem one = Elem(class_of_key[A.mul(fT, key_scale)]);
  out.ring = FiniteRing::from_tables(std::move(labels), zero, one, std::move(add), std::move(mul));

  out.iota.resize(A.size());
  for (std::size_t a = 0; a < A.size(); ++a) out.iota[a] = Elem(class_of_key[A.mul(A.mul(Elem(a), fT), key_scale)]);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<unsigned> e(k, 0);
    e[i] = 1;
    auto tab = idx.table(a_power(A, C, e));
    std::vector<Elem> v;
    for (auto m : C.centers[i].M) v.push_back(Elem(tab[A.mul(m, key_scale)]));
    out.fractions.push_back(std::move(v));
  }

  // q/f^T -> e*q*(e*f^T)^-1 inside the localization.
  auto& cert = out.certificate;
  const auto& Lr = sub.loc.ring;
  auto inv = Lr.inverse(sub.loc.to_local[fT]);
  out.to_subring.assign(N, 0);
  bool inside = inv.has_value();
  for (std::size_t q = 0; q < N && inside; ++q) {
    auto x = Lr.mul(sub.loc.to_local[out.numerator[q]], *inv);
    inside = contains(sub.embed, x);
    if (inside) out.to_subring[q] = Elem(position(sub.embed, x));
  }
  cert.add("image lies in the subring", inside);
  if (inside) {
    auto sorted = sorted_unique(out.to_subring);
    cert.add("bijective", sorted.size() == N && N == sub.ring.size(),
             std::to_string(N) + " classes, subring has " + std::to_string(sub.ring.size()));
    cert.add("ring hom", is_ring_hom(out.ring, sub.ring, out.to_subring));
    bool iota_ok = true;
    for (std::size_t a = 0; a < A.size(); ++a) iota_ok = iota_ok && out.to_subring[out.iota[a]] == sub.iota[a];
    cert.add("compatible with structure maps", iota_ok);
    bool frac_ok = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < out.fractions[i].size(); ++j)
        frac_ok = frac_ok && out.to_subring[out.fractions[i][j]] == sub.fractions[i][j];
    cert.add("fractions match", frac_ok);
  }
  cert.fact("witness_exponent", std::to_string(t));
  cert.fact("level", std::to_string(T));
  cert.fact("symbols", std::to_string(out.symbols));
  cert.fact("size", std::to_string(N));
  return out;
}

// ---------------------------------------------------------------- modules

FiniteModule FiniteModule::from_tables(const FiniteRing& A, std::vector<std::string> labels, Elem zero,
                                       std::vector<Elem> add, std::vector<Elem> act) {
  FiniteModule M;
  M.n_ = labels.size();
  M.ring_n_ = A.size();
  if (M.n_ == 0 || add.size() != M.n_ * M.n_ || act.size() != A.size() * M.n_ || zero >= M.n_)
    throw InputError("finite module: inconsistent table sizes");
  M.zero_ = zero;
  M.add_ = std::move(add);
  M.act_ = std::move(act);
  M.labels_ = std::move(labels);
  M.verify(A);
  return M;
}

void FiniteModule::verify(const FiniteRing& A) const {
  for (std::size_t x = 0; x < n_; ++x) {
    if (add(Elem(x), zero_) != x || act(A.one(), Elem(x)) != x) throw InputError("finite module: identity law fails");
    bool inv = false;
    for (std::size_t y = 0; y < n_; ++y) {
      if (add(Elem(x), Elem(y)) != add(Elem(y), Elem(x))) throw InputError("finite module: not commutative");
      inv = inv || add(Elem(x), Elem(y)) == zero_;
    }
    if (!inv) throw InputError("finite module: missing additive inverse");
  }
  for_triples(n_, [&](Elem x, Elem y, Elem z) {
    if (add(add(x, y), z) != add(x, add(y, z))) throw InputError("finite module: addition not associative");
  });
  std::mt19937_64 rng(777);
  std::size_t samples = A.size() * A.size() * n_ <= 300000 ? 0 : 20000;
  auto check = [&](Elem a, Elem b, Elem x, Elem y) {
    if (act(A.mul(a, b), x) != act(a, act(b, x)) || act(A.add(a, b), x) != add(act(a, x), act(b, x)) ||
        act(a, add(x, y)) != add(act(a, x), act(a, y)))
      throw InputError("finite module: action law fails");
  };
  if (samples == 0) {
    for (std::size_t a = 0; a < A.size(); ++a)
      for (std::size_t b = 0; b < A.size(); ++b)
        for (std::size_t x = 0; x < n_; ++x) check(Elem(a), Elem(b), Elem(x), Elem((x * 7 + a) % n_));
  } else {
    for (std::size_t s = 0; s < samples; ++s)
      check(Elem(rng() % A.size()), Elem(rng() % A.size()), Elem(rng() % n_), Elem(rng() % n_));
  }
}

FiniteModule FiniteModule::regular(const FiniteRing& A) {
  std::size_t n = A.size();
  std::vector<Elem> add(n * n), act(n * n);
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) {
    labels.push_back(A.label(Elem(x)));
    for (std::size_t y = 0; y < n; ++y) {
      add[x * n + y] = A.add(Elem(x), Elem(y));
      act[x * n + y] = A.mul(Elem(x), Elem(y));
    }
  }
  return from_tables(A, std::move(labels), A.zero(), std::move(add), std::move(act));
}

FiniteModule FiniteModule::zero_module(const FiniteRing& A) {
  return from_tables(A, {"0"}, 0, {0}, std::vector<Elem>(A.size(), 0));
}

std::vector<Elem> FiniteModule::span(const std::vector<Elem>& ideal, const std::vector<Elem>& elems) const {
  std::vector<Elem> g;
  for (auto l : ideal)
    for (auto x : elems) g.push_back(act(l, x));
  return span_of(n_, zero_, std::move(g), [&](Elem x, Elem y) { return add(x, y); });
}

namespace {

// For each ν with entries in {0, 1, 2}, ν != 0: a^ν acts injectively on M'
// and a^ν M' = L^ν M'.
void exceptional_on(Report& r, const FiniteRing& A, const FiniteCenter& C, const FiniteMap& iota,
                    const FiniteModule& Mp, PowerCache& cache) {
  std::size_t k = C.size();
  std::vector<Elem> all(Mp.size());
  for (std::size_t x = 0; x < Mp.size(); ++x) all[x] = Elem(x);
  std::vector<unsigned> nu(k, 0);
  bool inj = true, eq = true;
  std::string witness;
  while (true) {
    std::size_t p = 0;
    while (p < k && nu[p] == 2) nu[p++] = 0;
    if (p == k) break;
    ++nu[p];
    std::string tag = "(";
    for (std::size_t i = 0; i < k; ++i) tag += (i ? "," : "") + std::to_string(nu[i]);
    tag += ")";
    Elem an = iota[a_power(A, C, nu)];
    std::vector<Elem> img;
    for (auto x : all) {
      auto y = Mp.act(an, x);
      if (y == Mp.zero() && x != Mp.zero() && inj) {
        inj = false;
        witness = "a^" + tag + " kills " + Mp.label(x);
      }
      img.push_back(y);
    }
    img = sorted_unique(std::move(img));
    std::vector<Elem> Lnu;
    for (auto l : cache.product(nu)) Lnu.push_back(iota[l]);
    if (img != Mp.span(sorted_unique(Lnu), all) && eq) {
      eq = false;
      if (witness.empty()) witness = "a^" + tag + " M' differs from L^" + tag + " M'";
    }
  }
  r.add("a^nu acts injectively", inj, inj ? "" : witness);
  r.add("a^nu M' = L^nu M'", eq, eq ? "" : witness);
}

}  // namespace

ModuleDilatation module_dilate_oracle(const FiniteRing& A, const FiniteModule& M, const FiniteCenter& C,
                                      const FractionDilatation& Ap) {
  if (M.ring_size() != A.size()) throw InputError("module is over a different ring");
  const std::size_t k = C.size();
  const unsigned t = Ap.t;
  const Elem f = C.product(A);
  PowerCache cache(A, C);
  std::vector<Elem> allM(M.size());
  for (std::size_t x = 0; x < M.size(); ++x) allM[x] = Elem(x);

  auto level_span = [&](unsigned T) { return M.span(cache.product(std::vector<unsigned>(k, T)), allM); };
  auto count = [&](unsigned T) {
    std::vector<char> seen(M.size(), 0);
    std::size_t n = 0;
    Elem s = A.pow(f, t + T);
    for (auto x : level_span(T)) {
      auto y = M.act(s, x);
      if (!seen[y]) {
        seen[y] = 1;
        ++n;
      }
    }
    return n;
  };
  unsigned T = 0;
  while (count(T) != count(T + 1)) {
    if (++T > A.size() + M.size() + 2) throw std::logic_error("module classes do not stabilize");
  }

  const Elem key_scale = A.pow(f, t + T);
  std::vector<int> class_of_key(M.size(), -1);
  std::vector<Elem> num;
  for (auto x : level_span(T)) {
    auto key = M.act(key_scale, x);
    if (class_of_key[key] < 0) {
      class_of_key[key] = int(num.size());
      num.push_back(x);
    }
  }
  const std::size_t N = num.size();
  std::vector<Elem> add(N * N);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) add[x * N + y] = Elem(class_of_key[M.act(key_scale, M.add(num[x], num[y]))]);

  // (q/f^T_A)(x/f^T) = q x / f^(T_A + T), matched against y/f^T.
  std::vector<int> act_key(M.size(), -1);
  Elem scale = A.pow(f, t + Ap.level + T);
  for (std::size_t y = 0; y < N; ++y) act_key[M.act(scale, num[y])] = int(y);
  const std::size_t R = Ap.ring.size();
  std::vector<Elem> act(R * N);
  for (std::size_t q = 0; q < R; ++q)
    for (std::size_t x = 0; x < N; ++x) {
      auto v = act_key[M.act(key_scale, M.act(Ap.numerator[q], num[x]))];
      if (v < 0) throw std::logic_error("module action left the class set");
      act[q * N + x] = Elem(v);
    }
  std::vector<std::string> labels;
  for (auto x : num)
    labels.push_back(T == 0 ? M.label(x) : "(" + M.label(x) + ")/(" + A.label(f) + ")^" + std::to_string(T));
  Elem zero = Elem(class_of_key[M.act(key_scale, M.zero())]);
  ModuleDilatation out{FiniteModule::from_tables(Ap.ring, std::move(labels), zero, std::move(add), std::move(act)), T,
                       Report{"module dilatation"}};
  out.checks.fact("level", std::to_string(T));
  out.checks.fact("size", std::to_string(N));
  exceptional_on(out.checks, A, C, Ap.iota, out.module, cache);
  return out;
}

Report exceptional_checks(const FiniteRing& A, const FiniteCenter& C, const FractionDilatation& Ap) {
  Report r{"oracle exceptional"};
  PowerCache cache(A, C);
  exceptional_on(r, A, C, Ap.iota, FiniteModule::regular(Ap.ring), cache);
  bool inj = true;
  for (const auto& c : C.centers) inj = inj && Ap.ring.is_nzd(Ap.iota[c.a]);
  r.add("a_i regular in A'", inj);
  return r;
}

// ------------------------------------------------------ universal property

std::vector<NamedRing> zmod_catalog(unsigned max_n) {
  std::vector<NamedRing> out;
  for (unsigned n = 2; n <= max_n; ++n) out.push_back({"ZZ/" + std::to_string(n), FiniteRing::zmod(n)});
  return out;
}

Report universal_property_scan(const FiniteRing& A, const FiniteCenter& C, const FractionDilatation& Ap,
                               const std::vector<NamedRing>& catalog) {
  Report r{"universal property scan"};
  auto genA = A.generators();
  std::vector<Elem> base_imgs;
  for (auto g : genA) base_imgs.push_back(Ap.iota[g]);
  std::vector<Elem> free;
  auto closure = Ap.ring.subring_closure(base_imgs);
  auto extend_by = [&](Elem x) {
    if (contains(closure, x)) return;
    free.push_back(x);
    auto g = base_imgs;
    g.insert(g.end(), free.begin(), free.end());
    closure = Ap.ring.subring_closure(g);
  };
  for (const auto& fr : Ap.fractions)
    for (auto x : fr) extend_by(x);
  for (std::size_t x = 0; x < Ap.ring.size(); ++x) extend_by(Elem(x));

  std::size_t considered = 0, skipped = 0, max_count = 0;
  bool all_ok = true;
  std::string witness;
  for (const auto& [name, B] : catalog) {
    if (B.size() > 64) throw InputError("catalog ring " + name + " exceeds 64 elements");
    auto homs = enumerate_homs(A, B, {}, genA);
    for (std::size_t h = 0; h < homs.size(); ++h) {
      const auto& f = homs[h];
      bool regular = true;
      for (const auto& c : C.centers) regular = regular && B.is_nzd(f[c.a]);
      if (!regular) {
        ++skipped;
        continue;
      }
      ++considered;
      bool cond = true;
      for (const auto& c : C.centers) {
        std::vector<Elem> aB;
        for (std::size_t b = 0; b < B.size(); ++b) aB.push_back(B.mul(f[c.a], Elem(b)));
        aB = sorted_unique(std::move(aB));
        for (auto m : c.M) cond = cond && contains(aB, f[m]);
      }
      std::vector<std::pair<Elem, Elem>> fixed;
      for (std::size_t g = 0; g < genA.size(); ++g) fixed.emplace_back(base_imgs[g], f[genA[g]]);
      auto n = enumerate_homs(Ap.ring, B, fixed, free).size();
      max_count = std::max(max_count, n);
      if (n != (cond ? 1u : 0u) && all_ok) {
        all_ok = false;
        witness = name + " hom " + std::to_string(h + 1) + ": " + std::to_string(n) + " factorizations, expected " +
                  (cond ? "1" : "0");
      }
    }
  }
  r.add("factorization count matches containment condition", all_ok, witness);
  r.add("never two factorizations", max_count < 2);
  r.fact("homs_considered", std::to_string(considered));
  r.fact("homs_skipped", std::to_string(skipped));
  return r;
}

Report preservation_checks(const FiniteRing& A, const FiniteCenter& C, const FractionDilatation& Ap) {
  Report r{"preservation"};
  if (A.is_reduced())
    r.add("reduced base gives reduced dilatation", Ap.ring.is_reduced());
  else
    r.fact("reduced", "skipped: base not reduced");
  bool nonzero = true;
  for (const auto& c : C.centers) nonzero = nonzero && c.a != A.zero();
  if (A.is_field() && nonzero) {
    bool same = Ap.ring.size() == A.size() && sorted_unique(Ap.iota).size() == A.size();
    r.add("field base with nonzero a_i gives the base", same);
  } else {
    r.fact("field", "skipped: base is not a field or some a_i is zero");
  }
  return r;
}

// ---------------------------------------------------------- symbolic bridge

Elem AlgebraTable::element(const Polynomial& f) const {
  auto nf = algebra.reduce(f.map_to(algebra.ring()));
  const unsigned p = algebra.field().characteristic();
  std::size_t idx = 0, pw = 1;
  for (const auto& b : basis) {
    unsigned c = 0;
    for (const auto& t : nf.terms())
      if (t.mono == b.leading_monomial()) c = t.coeff.residue();
    idx += c * pw;
    pw *= p;
  }
  return Elem(idx);
}

AlgebraTable tabulate(const PresentedAlgebra& a, std::size_t cap) {
  if (a.field().is_rational()) throw InputError("finite enumeration needs a prime field");
  const unsigned p = a.field().characteristic();
  const auto& ring = a.ring();
  auto gb = a.relations().groebner();
  std::vector<Polynomial> basis;
  if (!(gb.size() == 1 && gb[0].is_constant())) {
    std::vector<Monomial> lms;
    for (const auto& g : gb) lms.push_back(g.leading_monomial());
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
      bool pure = std::any_of(lms.begin(), lms.end(), [&](const Monomial& m) {
        return m.degree() > 0 && m.degree() == m[v];
      });
      if (!pure) throw InputError("algebra is not finite-dimensional (no pure power of " + ring->vars()[v] + ")");
    }
    std::vector<Monomial> std_monos{Monomial(ring->nvars())};
    for (std::size_t k = 0; k < std_monos.size(); ++k) {
      if (std_monos.size() > cap) throw ResourceLimit("finite ring exceeds size cap " + std::to_string(cap));
      for (std::size_t v = 0; v < ring->nvars(); ++v) {
        auto m = std_monos[k] * Monomial::unit(ring->nvars(), v);
        bool reducible = std::any_of(lms.begin(), lms.end(), [&](const Monomial& l) { return l.divides(m); });
        if (!reducible && std::find(std_monos.begin(), std_monos.end(), m) == std_monos.end()) std_monos.push_back(m);
      }
    }
    std::sort(std_monos.begin(), std_monos.end(),
              [&](const Monomial& x, const Monomial& y) { return ring->order().compare(x, y) < 0; });
    for (const auto& m : std_monos) basis.push_back(Polynomial::monomial(ring, m, Scalar::one(a.field())));
  }
  checked_power(p, basis.size(), cap);
  const std::size_t d = basis.size();
  auto coords = [&](const Polynomial& f) {
    auto nf = a.reduce(f);
    std::vector<long> c(d, 0);
    for (const auto& t : nf.terms())
      for (std::size_t k = 0; k < d; ++k)
        if (t.mono == basis[k].leading_monomial()) c[k] = t.coeff.residue();
    return c;
  };
  std::vector<std::vector<std::vector<long>>> product(d, std::vector<std::vector<long>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) product[i][j] = coords(basis[i] * basis[j]);
  std::vector<std::string> labels;
  for (const auto& b : basis) labels.push_back(b.to_string());
  auto one = coords(Polynomial::constant(ring, 1));
  auto fr = d == 0 ? FiniteRing::from_structure(1, {}, {}, {}, cap)
                   : FiniteRing::from_structure(p, labels, product, one, cap);
  return AlgebraTable{a, std::move(basis), std::move(fr)};
}

namespace {

Elem evaluate(const FiniteRing& R, const Polynomial& f, const std::vector<Elem>& images) {
  Elem s = R.zero();
  for (const auto& t : f.terms()) {
    Elem v = R.integer(long(t.coeff.residue()));
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (t.mono[i]) v = R.mul(v, R.pow(images[i], unsigned(t.mono[i])));
    s = R.add(s, v);
  }
  return s;
}

}  // namespace

Report compare_with_symbolic(const MultiCenter& C, std::size_t cap) {
  Report r{"oracle vs symbolic"};
  const auto& A = C.base;
  auto TA = tabulate(A, cap);
  std::vector<std::pair<std::vector<Elem>, Elem>> gens;
  for (const auto& c : C.centers) {
    std::vector<Elem> g;
    for (const auto& m : c.M.generators()) g.push_back(TA.element(m));
    gens.emplace_back(g, TA.element(c.a));
  }
  auto FC = FiniteCenter::make(TA.ring, gens);
  auto frac = dilate_oracle_fractions(TA.ring, FC, cap);
  r.absorb(frac.certificate, "oracle: ");
  auto sub = dilate_oracle_subring(TA.ring, FC, cap);

  auto R = dilate(C);
  r.fact("symbolic", R.algebra.to_string());
  r.fact("oracle_size", std::to_string(sub.ring.size()));
  std::optional<AlgebraTable> TAp;
  try {
    TAp = tabulate(R.algebra, cap);
  } catch (const InputError& e) {
    r.add("symbolic result finite-dimensional", false, e.what());
    return r;
  }
  r.add("symbolic result finite-dimensional", true);
  r.add("sizes agree", TAp->ring.size() == sub.ring.size(),
        std::to_string(TAp->ring.size()) + " vs " + std::to_string(sub.ring.size()));

  // y -> iota(y), x_ij -> g_ij / a_i in the subring.
  const auto& Ring = R.algebra.ring();
  std::vector<Elem> images(Ring->nvars(), sub.ring.zero());
  for (std::size_t v = 0; v < A.vars().size(); ++v)
    images[*Ring->index_of(A.vars()[v])] = sub.iota[TA.element(Polynomial::variable(A.ring(), v))];
  for (const auto& fr : R.fractions) {
    auto m = TA.element(fr.numerator);
    const auto& M = FC.centers[fr.center].M;
    images[*Ring->index_of(fr.var)] = sub.fractions[fr.center][position(M, m)];
  }
  bool wd = true;
  std::string witness;
  for (const auto& g : R.algebra.relations().generators())
    if (evaluate(sub.ring, g, images) != sub.ring.zero()) {
      wd = false;
      witness = g.to_string();
      break;
    }
  r.add("fraction assignment respects relations", wd, witness);
  if (!wd) return r;

  std::vector<Elem> basis_img;
  for (const auto& b : TAp->basis) basis_img.push_back(evaluate(sub.ring, b, images));
  const unsigned p = A.field().characteristic();
  FiniteMap phi(TAp->ring.size());
  for (std::size_t x = 0; x < TAp->ring.size(); ++x) {
    Elem s = sub.ring.zero();
    std::size_t rest = x;
    for (auto bi : basis_img) {
      s = sub.ring.add(s, sub.ring.mul(sub.ring.integer(long(rest % p)), bi));
      rest /= p;
    }
    phi[x] = s;
  }
  r.add("map is a ring hom", is_ring_hom(TAp->ring, sub.ring, phi));
  r.add("map is bijective", sorted_unique(phi).size() == sub.ring.size() && phi.size() == sub.ring.size());
  r.add("zero ring agreement", R.zero_ring == sub.ring.is_zero_ring());
  return r;
}

}  // namespace dila::oracle
