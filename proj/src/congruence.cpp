#include "dila/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "dila/errors.hpp"

namespace dila::congruence {

namespace {

using u64 = std::uint64_t;

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const {
    u64 h = 1469598103934665603ull;
    for (auto x : m) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return std::size_t(h);
  }
};
using Index = std::unordered_map<Matrix, std::size_t, MatrixHash>;

Index make_index(const std::vector<Matrix>& elems) {
  Index idx;
  idx.reserve(elems.size() * 2);
  for (std::size_t k = 0; k < elems.size(); ++k) idx.emplace(elems[k], k);
  return idx;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) {
  long long r0 = q, r1 = a % q, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long k = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - k * t1);
  }
  if (r0 != 1) return 0;
  return std::uint32_t(((t0 % q) + q) % q);
}

Matrix reduce(const Matrix& x, std::uint32_t m) {
  Matrix y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] % m;
  return y;
}

Matrix minus_identity(const Matrix& g, unsigned n, std::uint32_t q) {
  Matrix z = g;
  for (unsigned a = 0; a < n; ++a) z[a * n + a] = (z[a * n + a] + q - 1) % q;
  return z;
}

Matrix add(const Matrix& x, const Matrix& y, std::uint32_t q) {
  Matrix z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) z[k] = std::uint32_t((u64(x[k]) + y[k]) % q);
  return z;
}

void check_sizes(const std::vector<Subgroup>& H, const std::vector<unsigned>& v, const GroupSpec& G,
                 const LevelRing& R) {
  if (H.empty()) throw InputError("filtration needs at least one subgroup");
  if (H.size() != v.size()) throw InputError("filtration has " + std::to_string(H.size()) + " subgroups but " +
                                             std::to_string(v.size()) + " exponents");
  for (const auto& h : H) {
    h.validate(G.n);
    if (!h.is_pattern()) throw InputError("subgroup " + h.to_string() + " cannot appear in a filtration");
  }
  for (auto x : v)
    if (x > R.N) throw InputError("exponent " + std::to_string(x) + " exceeds level N = " + std::to_string(R.N));
}

// Exponent e_ab such that entry (a, b) of g - 1 must vanish mod p^e_ab.
std::vector<unsigned> lattice_exponents(const GroupSpec& G, const std::vector<Subgroup>& H,
                                        const std::vector<unsigned>& v) {
  unsigned n = G.n;
  std::vector<unsigned> rho(n * n, 0);
  for (std::size_t i = 0; i < H.size(); ++i)
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b)
        if (H[i].forced(a, b)) rho[a * n + b] = std::max(rho[a * n + b], v[i]);
  return rho;
}

template <class F>
void enumerate_lattice(const std::vector<unsigned>& rho, const LevelRing& R, std::size_t budget, F&& visit) {
  std::uint32_t q = R.modulus();
  std::vector<std::uint32_t> step(rho.size()), count(rho.size());
  long double total = 1;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    step[k] = R.power(rho[k]);
    count[k] = q / step[k];
    total *= count[k];
  }
  if (total > static_cast<long double>(budget))
    throw ResourceLimit("enumeration needs " + std::to_string(static_cast<unsigned long long>(total)) +
                        " candidates, budget " + std::to_string(budget));
  std::vector<std::uint32_t> digit(rho.size(), 0);
  Matrix z(rho.size(), 0);
  while (true) {
    visit(static_cast<const Matrix&>(z));
    std::size_t k = 0;
    while (k < rho.size()) {
      if (++digit[k] < count[k]) {
        z[k] = digit[k] * step[k];
        break;
      }
      digit[k] = 0;
      z[k] = 0;
      ++k;
    }
    if (k == rho.size()) break;
  }
}

std::uint32_t trace(const Matrix& x, unsigned n, std::uint32_t q) {
  u64 t = 0;
  for (unsigned a = 0; a < n; ++a) t += x[a * n + a];
  return std::uint32_t(t % q);
}

// Closure, identity and inverses. Exhaustive on products up to 2^24 pairs,
// sampled beyond.
bool verify_subgroup(const std::vector<Matrix>& elems, unsigned n, std::uint32_t q, bool& exhaustive,
                     std::string& witness) {
  Index idx = make_index(elems);
  if (!idx.count(reduce(identity(n), q))) {
    witness = "identity missing";
    return false;
  }
  for (const auto& g : elems)
    if (!idx.count(inverse(g, n, q))) {
      witness = "inverse of " + to_string(g, n) + " missing";
      return false;
    }
  std::size_t N = elems.size();
  exhaustive = N * N <= (std::size_t(1) << 24);
  auto test = [&](std::size_t i, std::size_t j) {
    if (idx.count(multiply(elems[i], elems[j], n, q))) return true;
    witness = to_string(elems[i], n) + " * " + to_string(elems[j], n) + " leaves the set";
    return false;
  };
  if (exhaustive) {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (!test(i, j)) return false;
  } else {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> pick(0, N - 1);
    for (int k = 0; k < (1 << 20); ++k)
      if (!test(pick(rng), pick(rng))) return false;
  }
  return true;
}

std::string vec_string(const std::vector<unsigned>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
  return s + ")";
}

}  // namespace

LevelRing LevelRing::make(std::uint32_t p, unsigned N) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (N < 1) throw InputError("level N must be at least 1");
  u64 q = 1;
  for (unsigned k = 0; k < N; ++k) {
    q *= p;
    if (q > (u64(1) << 20)) throw InputError("p^N exceeds 2^20");
  }
  return LevelRing{p, N};
}

std::uint32_t LevelRing::modulus() const { return power(N); }

std::uint32_t LevelRing::power(unsigned k) const {
  std::uint32_t q = 1;
  for (unsigned j = 0; j < std::min(k, N); ++j) q *= p;
  return q;
}

GroupSpec GroupSpec::parse(const std::string& text) {
  GroupSpec G;
  std::string kind = text.substr(0, 2);
  if (kind == "GL")
    G.kind = GroupKind::GL;
  else if (kind == "SL")
    G.kind = GroupKind::SL;
  else
    throw InputError("unknown group '" + text + "'");
  std::size_t pos = 2;
  if (pos < text.size() && text[pos] == '_') ++pos;
  try {
    std::size_t used = 0;
    int n = std::stoi(text.substr(pos), &used);
    if (pos + used != text.size() || n < 1 || n > 4) throw InputError("");
    G.n = unsigned(n);
  } catch (const std::exception&) {
    throw InputError("group size in '" + text + "' must be 1..4");
  }
  return G;
}

std::string GroupSpec::to_string() const { return (kind == GroupKind::GL ? "GL_" : "SL_") + std::to_string(n); }

Subgroup Subgroup::parse(const std::string& text) {
  Subgroup H;
  if (text == "e")
    H.kind = Kind::Trivial;
  else if (text == "T")
    H.kind = Kind::Torus;
  else if (text == "B")
    H.kind = Kind::Borel;
  else if (text == "G")
    H.kind = Kind::Whole;
  else if (text == "Z")
    H.kind = Kind::Center;
  else if (text.size() > 3 && text[0] == 'L' && text[1] == '(' && text.back() == ')') {
    H.kind = Kind::Levi;
    std::stringstream in(text.substr(2, text.size() - 3));
    std::string part;
    while (std::getline(in, part, ',')) {
      try {
        int b = std::stoi(part);
        if (b < 1) throw InputError("");
        H.blocks.push_back(unsigned(b));
      } catch (const std::exception&) {
        throw InputError("bad Levi shape '" + text + "'");
      }
    }
  } else {
    throw InputError("unknown subgroup '" + text + "'");
  }
  return H;
}

std::string Subgroup::to_string() const {
  switch (kind) {
    case Kind::Trivial: return "e";
    case Kind::Torus: return "T";
    case Kind::Borel: return "B";
    case Kind::Whole: return "G";
    case Kind::Center: return "Z";
    case Kind::Levi: {
      std::string s = "L(";
      for (std::size_t k = 0; k < blocks.size(); ++k) s += (k ? "," : "") + std::to_string(blocks[k]);
      return s + ")";
    }
  }
  return "?";
}

bool Subgroup::forced(unsigned a, unsigned b) const {
  switch (kind) {
    case Kind::Trivial: return true;
    case Kind::Torus: return a != b;
    case Kind::Borel: return a > b;
    case Kind::Whole: return false;
    case Kind::Levi: {
      auto block = [&](unsigned x) {
        unsigned acc = 0;
        for (std::size_t k = 0; k < blocks.size(); ++k) {
          acc += blocks[k];
          if (x < acc) return k;
        }
        return blocks.size();
      };
      return block(a) != block(b);
    }
    case Kind::Center: break;
  }
  throw std::logic_error("center is not cut out by entries");
}

void Subgroup::validate(unsigned n) const {
  if (kind == Kind::Levi && std::accumulate(blocks.begin(), blocks.end(), 0u) != n)
    throw InputError("Levi shape " + to_string() + " does not sum to " + std::to_string(n));
}

Matrix identity(unsigned n) {
  Matrix I(n * n, 0);
  for (unsigned a = 0; a < n; ++a) I[a * n + a] = 1;
  return I;
}

Matrix multiply(const Matrix& x, const Matrix& y, unsigned n, std::uint32_t q) {
  Matrix z(n * n, 0);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      u64 s = 0;
      for (unsigned c = 0; c < n; ++c) s += u64(x[a * n + c]) * y[c * n + b] % q;
      z[a * n + b] = std::uint32_t(s % q);
    }
  return z;
}

std::uint32_t determinant(const Matrix& x, unsigned n, std::uint32_t q) {
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  u64 plus = 0, minus = 0;
  do {
    unsigned inversions = 0;
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    u64 term = 1 % q;
    for (unsigned a = 0; a < n; ++a) term = term * x[a * n + perm[a]] % q;
    (inversions % 2 ? minus : plus) += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::uint32_t((plus % q + q - minus % q) % q);
}

Matrix inverse(const Matrix& x, unsigned n, std::uint32_t q) {
  std::uint32_t d = determinant(x, n, q);
  std::uint32_t dinv = inverse_mod(d, q);
  if (dinv == 0 && q > 1) throw InputError("matrix is not invertible");
  if (n == 1) return Matrix{dinv % q};
  Matrix adj(n * n);
  Matrix minor((n - 1) * (n - 1));
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      unsigned k = 0;
      for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c)
          if (r != a && c != b) minor[k++] = x[r * n + c];
      std::uint32_t m = determinant(minor, n - 1, q);
      if ((a + b) % 2) m = (q - m) % q;
      adj[b * n + a] = std::uint32_t(u64(m) * dinv % q);
    }
  return adj;
}

std::string to_string(const Matrix& x, unsigned n) {
  std::string s = "[";
  for (unsigned a = 0; a < n; ++a) {
    s += a ? ", [" : "[";
    for (unsigned b = 0; b < n; ++b) s += (b ? ", " : "") + std::to_string(x[a * n + b]);
    s += "]";
  }
  return s + "]";
}

bool in_group(const GroupSpec& G, const Matrix& x, std::uint32_t q) {
  if (q == 1) return true;
  std::uint32_t d = determinant(x, G.n, q);
  return G.kind == GroupKind::SL ? d == 1 : inverse_mod(d, q) != 0;
}

bool in_subgroup(const GroupSpec& G, const Subgroup& H, const Matrix& x, std::uint32_t m) {
  if (m == 1) return true;
  unsigned n = G.n;
  Matrix y = reduce(x, m);
  if (!in_group(G, y, m)) return false;
  if (H.kind == Subgroup::Kind::Center) {
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b)
        if (a != b ? y[a * n + b] != 0 : y[a * n + a] != y[0]) return false;
    return true;
  }
  Matrix z = minus_identity(y, n, m);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      if (H.forced(a, b) && z[a * n + b] != 0) return false;
  return true;
}

EnumeratedGroup group_points(const GroupSpec& G, const std::vector<Subgroup>& H, const std::vector<unsigned>& v,
                             const LevelRing& R, std::size_t budget) {
  check_sizes(H, v, G, R);
  std::uint32_t q = R.modulus();
  unsigned n = G.n;
  EnumeratedGroup out;
  out.group = G;
  out.modulus = q;
  enumerate_lattice(lattice_exponents(G, H, v), R, budget, [&](const Matrix& z) {
    Matrix g = z;
    for (unsigned a = 0; a < n; ++a) g[a * n + a] = (g[a * n + a] + 1) % q;
    if (in_group(G, g, q)) out.elements.push_back(std::move(g));
  });
  std::string witness;
  out.closed = verify_subgroup(out.elements, n, q, out.exhaustive, witness);
  return out;
}

std::vector<Matrix> lie_points(const GroupSpec& G, const std::vector<Subgroup>& H, const std::vector<unsigned>& v,
                               const LevelRing& R, std::size_t budget) {
  check_sizes(H, v, G, R);
  std::uint32_t q = R.modulus();
  std::vector<Matrix> out;
  enumerate_lattice(lattice_exponents(G, H, v), R, budget, [&](const Matrix& z) {
    if (G.kind == GroupKind::GL || trace(z, G.n, q) == 0) out.push_back(z);
  });
  return out;
}

std::vector<Matrix> subgroup_points(const GroupSpec& G, const Subgroup& H, const LevelRing& R, unsigned m,
                                    std::size_t budget) {
  H.validate(G.n);
  unsigned n = G.n;
  std::uint32_t q = R.power(m);
  std::vector<Matrix> out;
  if (H.kind == Subgroup::Kind::Center) {
    for (std::uint32_t l = 0; l < q; ++l) {
      Matrix x(n * n, 0);
      for (unsigned a = 0; a < n; ++a) x[a * n + a] = l % q;
      if (in_group(G, x, q)) out.push_back(std::move(x));
    }
    return out;
  }
  // Free entries range over Z/p^m, forced entries of g - 1 vanish.
  LevelRing level{R.p, m};
  std::vector<unsigned> rho(n * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) rho[a * n + b] = H.forced(a, b) ? m : 0;
  if (m == 0) return {Matrix(n * n, 0)};
  enumerate_lattice(rho, level, budget, [&](const Matrix& z) {
    Matrix g = z;
    for (unsigned a = 0; a < n; ++a) g[a * n + a] = (g[a * n + a] + 1) % q;
    if (in_group(G, g, q)) out.push_back(std::move(g));
  });
  return out;
}

Report congruent_iso_check(const GroupSpec& G, const std::vector<Subgroup>& H, const std::vector<unsigned>& s,
                           const std::vector<unsigned>& r, const LevelRing& R) {
  Report rep{"congruent isomorphism"};
  check_sizes(H, s, G, R);
  if (r.size() != s.size()) throw InputError("s and r have different lengths");
  rep.fact("group", G.to_string());
  rep.fact("level", std::to_string(R.p) + "^" + std::to_string(R.N));
  rep.fact("s", vec_string(s));
  rep.fact("r", vec_string(r));

  rep.add("H_0 trivial", H[0].kind == Subgroup::Kind::Trivial, H[0].to_string());
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::string tag = " [" + std::to_string(i) + "]";
    rep.add("s_i >= s_0" + tag, s[i] >= s[0]);
    rep.add("r_i >= r_0" + tag, r[i] >= r[0]);
    rep.add("r_i >= s_i" + tag, r[i] >= s[i]);
    rep.add("r_i - s_i <= s_0" + tag, r[i] < s[i] || r[i] - s[i] <= s[0]);
    rep.add("r_i <= N" + tag, r[i] <= R.N);
  }
  if (!rep.passed()) {
    rep.refused = true;
    return rep;
  }

  unsigned n = G.n;
  std::uint32_t q = R.modulus();
  EnumeratedGroup Gs = group_points(G, H, s, R), Gr = group_points(G, H, r, R);
  rep.add("G_s is a subgroup", Gs.closed, Gs.exhaustive ? "exhaustive" : "sampled products");
  rep.add("G_r is a subgroup", Gr.closed, Gr.exhaustive ? "exhaustive" : "sampled products");
  rep.fact("order_G_s", std::to_string(Gs.elements.size()));
  rep.fact("order_G_r", std::to_string(Gr.elements.size()));

  Index idx = make_index(Gs.elements);
  {
    std::string witness;
    for (const auto& h : Gr.elements)
      if (!idx.count(h)) {
        witness = to_string(h, n);
        break;
      }
    rep.add("G_r inside G_s", witness.empty(), witness);
  }
  if (!rep.passed()) return rep;
  // Cosets g G_r.
  const std::size_t none = std::size_t(-1);
  std::vector<std::size_t> coset(Gs.elements.size(), none);
  std::vector<std::size_t> reps;
  for (std::size_t k = 0; k < Gs.elements.size(); ++k) {
    if (coset[k] != none) continue;
    std::size_t id = reps.size();
    reps.push_back(k);
    for (const auto& h : Gr.elements) {
      auto it = idx.find(multiply(Gs.elements[k], h, n, q));
      if (it != idx.end()) coset[it->second] = id;
    }
  }

  Index ridx = make_index(Gr.elements);
  {
    // Conjugation by G_r preserves G_r, so coset representatives suffice.
    std::string witness;
    for (std::size_t c : reps) {
      const Matrix& g = Gs.elements[c];
      Matrix ginv = inverse(g, n, q);
      for (const auto& h : Gr.elements)
        if (!ridx.count(multiply(multiply(g, h, n, q), ginv, n, q))) {
          witness = "g = " + to_string(g, n) + ", h = " + to_string(h, n);
          break;
        }
      if (!witness.empty()) break;
    }
    rep.add("G_r normal in G_s", witness.empty(), witness);
  }
  if (!rep.passed()) return rep;

  // Lie classes, keyed by reduction modulo the level-r lattice.
  std::vector<unsigned> rho = lattice_exponents(G, H, r);
  auto key = [&](const Matrix& x) {
    Matrix k(x.size());
    for (std::size_t e = 0; e < x.size(); ++e) k[e] = x[e] % R.power(rho[e]);
    return k;
  };
  Index lie_class;
  for (const auto& x : lie_points(G, H, s, R)) lie_class.emplace(key(x), lie_class.size());
  rep.fact("order_Q_grp", std::to_string(reps.size()));
  rep.fact("order_Q_lie", std::to_string(lie_class.size()));
  rep.add("orders equal", reps.size() == lie_class.size(),
          std::to_string(reps.size()) + " vs " + std::to_string(lie_class.size()));

  std::vector<std::size_t> image(reps.size(), none);
  std::string lands, welldef;
  for (std::size_t k = 0; k < Gs.elements.size(); ++k) {
    const Matrix& g = Gs.elements[k];
    auto it = lie_class.find(key(minus_identity(g, n, q)));
    if (it == lie_class.end()) {
      if (lands.empty()) lands = "g = " + to_string(g, n);
      continue;
    }
    std::size_t& slot = image[coset[k]];
    if (slot == none)
      slot = it->second;
    else if (slot != it->second && welldef.empty())
      welldef = "g = " + to_string(Gs.elements[reps[coset[k]]], n) + ", g' = " + to_string(g, n);
  }
  rep.add("lands in the Lie quotient", lands.empty(), lands);
  rep.add("well-defined", welldef.empty(), welldef);

  std::vector<std::size_t> hit(lie_class.size(), none);
  std::string inj;
  for (std::size_t c = 0; c < reps.size(); ++c) {
    if (image[c] == none) continue;
    if (hit[image[c]] != none && inj.empty())
      inj = "g = " + to_string(Gs.elements[reps[hit[image[c]]]], n) + ", g' = " + to_string(Gs.elements[reps[c]], n);
    hit[image[c]] = c;
  }
  bool onto = std::all_of(hit.begin(), hit.end(), [&](std::size_t c) { return c != none; });
  rep.add("bijective", inj.empty() && onto && lands.empty(), inj.empty() ? (onto ? "" : "not surjective") : inj);

  std::string hom;
  for (std::size_t c1 = 0; c1 < reps.size() && hom.empty(); ++c1)
    for (std::size_t c2 = 0; c2 < reps.size(); ++c2) {
      const Matrix& g1 = Gs.elements[reps[c1]];
      const Matrix& g2 = Gs.elements[reps[c2]];
      Matrix lhs = key(minus_identity(multiply(g1, g2, n, q), n, q));
      Matrix rhs = key(add(minus_identity(g1, n, q), minus_identity(g2, n, q), q));
      if (lhs != rhs) {
        hom = "g1 = " + to_string(g1, n) + ", g2 = " + to_string(g2, n);
        break;
      }
    }
  rep.add("homomorphism", hom.empty(), hom);
  return rep;
}

Report normalizer_check(const GroupSpec& G, const Subgroup& K, const std::vector<Subgroup>& H,
                        const std::vector<unsigned>& r, const LevelRing& R) {
  Report rep{"normalizer"};
  check_sizes(H, r, G, R);
  K.validate(G.n);
  unsigned n = G.n;
  rep.fact("group", G.to_string());
  rep.fact("K", K.to_string());
  rep.fact("level", std::to_string(R.p) + "^" + std::to_string(R.N));
  rep.fact("r", vec_string(r));

  for (std::size_t i = 0; i < H.size(); ++i) {
    std::string tag = " [" + std::to_string(i) + "]";
    std::uint32_t m = R.power(r[i]);
    auto Ks = subgroup_points(G, K, R, r[i]);
    auto Hs = subgroup_points(G, H[i], R, r[i]);
    bool exhaustive = true;
    std::string w;
    rep.add("K closed at level p^r_i" + tag, verify_subgroup(Ks, n, m, exhaustive, w), w);
    w.clear();
    rep.add("H_i closed at level p^r_i" + tag, verify_subgroup(Hs, n, m, exhaustive, w), w);
    std::string witness;
    for (const auto& k : Ks) {
      for (const auto& h : Hs)
        if (multiply(k, h, n, m) != multiply(h, k, n, m)) {
          witness = "k = " + to_string(k, n) + ", h = " + to_string(h, n);
          break;
        }
      if (!witness.empty()) break;
    }
    rep.add("hypothesis K commutes with H_i mod p^r_i" + tag, witness.empty(), witness);
  }
  if (!rep.passed()) {
    rep.refused = true;
    rep.fact("main_check", "skipped");
    return rep;
  }

  std::uint32_t q = R.modulus();
  auto KN = subgroup_points(G, K, R, R.N);
  EnumeratedGroup Gr = group_points(G, H, r, R);
  rep.fact("order_K", std::to_string(KN.size()));
  rep.fact("order_G_r", std::to_string(Gr.elements.size()));
  rep.add("G_r is a subgroup", Gr.closed, Gr.exhaustive ? "exhaustive" : "sampled products");
  Index idx = make_index(Gr.elements);
  std::string witness;
  for (const auto& k : KN) {
    Matrix kinv = inverse(k, n, q);
    for (const auto& g : Gr.elements)
      if (!idx.count(multiply(multiply(k, g, n, q), kinv, n, q))) {
        witness = "k = " + to_string(k, n) + ", g = " + to_string(g, n);
        break;
      }
    if (!witness.empty()) break;
  }
  rep.add("K normalizes G_r", witness.empty(), witness);
  rep.fact("main_check", "run");
  return rep;
}

}  // namespace dila::congruence
