#include "dila/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "dila/errors.hpp"

namespace dila {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Exponent> e) : e_(std::move(e)) {
  for (auto x : e_) {
    if (x < 0) throw InputError("negative exponent");
    deg_ += x;
  }
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var, Exponent power) {
  Monomial m(nvars);
  m.e_[var] = power;
  m.deg_ = power;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  r.deg_ = deg_ + o.deg_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  r.deg_ = deg_ - o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) {
    r.e_[i] = std::max(e_[i], o.e_[i]);
    r.deg_ += r.e_[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] && o.e_[i]) return false;
  return true;
}

// ---------------------------------------------------------- MonomialOrder

namespace {

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  int da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::GRevLex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
    case Kind::Block: {
      std::size_t lo = 0;
      for (auto sz : blocks_) {
        std::size_t hi = std::min(lo + sz, a.size());
        if (int c = grevlex_range(a, b, lo, hi)) return c;
        lo = hi;
      }
      if (lo < a.size()) return grevlex_range(a, b, lo, a.size());
      return 0;
    }
  }
  return 0;
}

std::string MonomialOrder::to_string() const {
  switch (kind_) {
    case Kind::Lex:
      return "lex";
    case Kind::GRevLex:
      return "grevlex";
    case Kind::Block: {
      std::string s = "block(";
      for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "," : "") + std::to_string(blocks_[i]);
      return s + ")";
    }
  }
  return "?";
}

// --------------------------------------------------------------- PolyRing

RingPtr PolyRing::make(Field field, std::vector<std::string> vars, MonomialOrder order) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw InputError("duplicate variable '" + vars[i] + "'");
  return RingPtr(new PolyRing(field, std::move(vars), std::move(order)));
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

RingPtr PolyRing::extended(const std::vector<std::string>& extra) const {
  auto v = vars_;
  v.insert(v.end(), extra.begin(), extra.end());
  return make(field_, std::move(v), order_.kind() == MonomialOrder::Kind::Block ? MonomialOrder::grevlex() : order_);
}

std::string PolyRing::to_string() const {
  std::string s = field_.to_string() + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? ", " : "") + vars_[i];
  return s + "]";
}

void require_same_ring(const PolyRing& a, const PolyRing& b, std::string_view what) {
  if (&a == &b) return;
  if (!a.identical(b))
    throw InputError(std::string(what) + ": registry mismatch between " + a.to_string() + " and " + b.to_string());
}

// ------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  normalize();
}

void Polynomial::normalize() {
  const auto& ord = ring_->order();
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return t.coeff.is_zero(); });
  terms_ = std::move(out);
}

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, long c) {
  auto s = Scalar::from_int(ring->field(), c);
  return constant(std::move(ring), s);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw InputError("variable index out of range");
  Polynomial p(ring);
  p.terms_.push_back({Monomial::unit(ring->nvars(), index), Scalar::one(ring->field())});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  auto i = ring->index_of(name);
  if (!i) throw InputError("unknown variable '" + std::string(name) + "' in " + ring->to_string());
  return variable(std::move(ring), *i);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, Scalar c) {
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::uses_variable(std::size_t i) const {
  for (const auto& t : terms_)
    if (t.mono[i]) return true;
  return false;
}

namespace {

// Merge of two sorted term lists: a + sign*b.
std::vector<Term> merge_terms(const MonomialOrder& ord, const std::vector<Term>& a, const std::vector<Term>& b,
                              bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : ord.compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Scalar s = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_ring(*ring_, *o.ring_, "polynomial addition");
  Polynomial r(ring_);
  r.terms_ = merge_terms(ring_->order(), terms_, o.terms_, false);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  require_same_ring(*ring_, *o.ring_, "polynomial subtraction");
  Polynomial r(ring_);
  r.terms_ = merge_terms(ring_->order(), terms_, o.terms_, true);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, t.coeff * c});
  return r;
}

Polynomial Polynomial::times_term(const Scalar& c, const Monomial& m) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::sub_mul(const Scalar& c, const Monomial& m, const Polynomial& g) const {
  const auto& ord = ring_->order();
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  const auto& a = terms_;
  const auto& b = g.terms_;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial bm = b[j].mono * m;
    int cmp = i == a.size() ? -1 : ord.compare(a[i].mono, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(bm), -(b[j].coeff * c)});
      ++j;
    } else {
      Scalar s = a[i].coeff - b[j].coeff * c;
      if (!s.is_zero()) out.push_back({std::move(bm), std::move(s)});
      ++i;
      ++j;
    }
  }
  Polynomial r(ring_);
  r.terms_ = std::move(out);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_ring(*ring_, *o.ring_, "polynomial multiplication");
  Polynomial r(ring_);
  if (is_zero() || o.is_zero()) return r;
  const Polynomial& big = size() >= o.size() ? *this : o;
  const Polynomial& small = size() >= o.size() ? o : *this;
  for (const auto& t : small.terms_) {
    auto part = big.times_term(t.coeff, t.mono);
    r.terms_ = merge_terms(ring_->order(), r.terms_, part.terms_, false);
  }
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coeff().is_one()) return *this;
  return scaled(leading_coeff().inverse());
}

void Polynomial::pop_leading() {
  if (!terms_.empty()) terms_.erase(terms_.begin());
}

Polynomial Polynomial::divide_exact(const Polynomial& d) const {
  require_same_ring(*ring_, *d.ring_, "exact division");
  if (d.is_zero()) throw InputError("division by the zero polynomial");
  Polynomial rem = *this;
  Polynomial quo(ring_);
  const auto& lm = d.leading_monomial();
  auto inv = d.leading_coeff().inverse();
  while (!rem.is_zero()) {
    const auto& t = rem.terms_.front();
    if (!lm.divides(t.mono)) throw InputError("polynomial division is not exact");
    Monomial q = t.mono / lm;
    Scalar c = t.coeff * inv;
    quo.terms_.push_back({q, c});  // quotient terms arrive in decreasing order
    rem = rem.sub_mul(c, q, d);
  }
  return quo;
}

Polynomial Polynomial::map_to(const RingPtr& target) const {
  if (target.get() == ring_.get()) return *this;
  if (!(target->field() == ring_->field())) throw InputError("map_to: field mismatch");
  std::vector<std::optional<std::size_t>> idx(ring_->nvars());
  for (std::size_t i = 0; i < ring_->nvars(); ++i) idx[i] = target->index_of(ring_->vars()[i]);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Exponent> e(target->nvars(), 0);
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (!idx[i]) throw InputError("variable '" + ring_->vars()[i] + "' is not in " + target->to_string());
      e[*idx[i]] = t.mono[i];
    }
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return Polynomial(target, std::move(out));
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images, const RingPtr& target) const {
  if (images.size() != ring_->nvars()) throw InputError("substitute: wrong number of images");
  for (const auto& im : images) require_same_ring(*im.ring(), *target, "substitute");
  // Cache powers per variable.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t v, Exponent e) -> const Polynomial& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(constant(target, 1));
    while (static_cast<Exponent>(pv.size()) <= e) pv.push_back(pv.back() * images[v]);
    return pv[e];
  };
  Polynomial acc(target);
  for (const auto& t : terms_) {
    Polynomial term = constant(target, t.coeff);
    for (std::size_t v = 0; v < images.size() && !term.is_zero(); ++v)
      if (t.mono[v]) term = term * power(v, t.mono[v]);
    acc += term;
  }
  return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!ring_->same_registry(*o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  if (ring_->order() == o.ring_->order()) {
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
  }
  return (*this - o.map_to(ring_)).is_zero();
}

namespace {

std::string monomial_string(const PolyRing& r, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += r.vars()[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = t.coeff.is_negative();
    Scalar mag = neg ? -t.coeff : t.coeff;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    std::string mono = monomial_string(*ring_, t.mono);
    if (mono.empty())
      s += mag.to_string();
    else if (mag.is_one())
      s += mono;
    else
      s += mag.to_string() + "*" + mono;
    first = false;
  }
  return s;
}

std::string to_string(std::span<const Polynomial> polys) {
  std::string s = "(";
  for (std::size_t i = 0; i < polys.size(); ++i) s += (i ? ", " : "") + polys[i].to_string();
  return s + ")";
}

// ----------------------------------------------------------------- Parser

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("polynomial syntax error at column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" +
                     std::string(text_) + "\"");
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc = acc.scaled(d.leading_coeff().inverse());
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 100000) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpq_class q(mpz_class(std::string(text_.substr(start, pos_ - start))));
      return Polynomial::constant(ring_, Scalar::from_rational(ring_->field(), q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) { return PolyParser(ring, text).parse(); }

}  // namespace dila
