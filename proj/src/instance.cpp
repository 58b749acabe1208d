#include "dila/instance.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "dila/rost.hpp"

namespace dila::cli {

namespace {

struct Piece {
  std::string text;
  std::size_t col = 0;  // 0-based column of text[0] in the line
};

Piece trimmed(std::string_view s, std::size_t col) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return {std::string(s.substr(b, e - b)), col + b};
}

// Splits at `sep` outside (), [] nesting. An all-blank input gives no pieces.
std::vector<Piece> split_top(std::string_view s, char sep, std::size_t col) {
  std::vector<Piece> out;
  if (trimmed(s, col).text.empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k == s.size() || (s[k] == sep && depth == 0)) {
      out.push_back(trimmed(s.substr(start, k - start), col + start));
      start = k + 1;
    } else if (s[k] == '(' || s[k] == '[') {
      ++depth;
    } else if (s[k] == ')' || s[k] == ']') {
      --depth;
    }
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<std::size_t> index_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& p : split_top(text, ',', 0)) {
    std::size_t used = 0;
    long v = -1;
    try {
      v = std::stol(p.text, &used);
    } catch (const std::exception&) {
    }
    if (v < 1 || used != p.text.size()) throw InputError("bad index '" + p.text + "' (indices start at 1)");
    out.push_back(std::size_t(v - 1));
  }
  return out;
}

std::vector<unsigned> unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  for (const auto& p : split_top(text, ',', 0)) {
    std::size_t used = 0;
    long v = -1;
    try {
      v = std::stol(p.text, &used);
    } catch (const std::exception&) {
    }
    if (v < 0 || used != p.text.size()) throw InputError("bad exponent '" + p.text + "'");
    out.push_back(unsigned(v));
  }
  return out;
}

// key=value arguments after the positional ones.
std::map<std::string, std::string> keyed(const std::vector<std::string>& words, std::size_t from) {
  std::map<std::string, std::string> out;
  for (std::size_t k = from; k < words.size(); ++k) {
    auto eq = words[k].find('=');
    if (eq == std::string::npos) throw InputError("expected key=value, got '" + words[k] + "'");
    out[words[k].substr(0, eq)] = words[k].substr(eq + 1);
  }
  return out;
}

std::string need(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw InputError("missing argument " + key + "=...");
  return it->second;
}

class Parser {
 public:
  Parser(std::string file) { inst_.file = std::move(file); }

  void line(const std::string& raw, int lineno) {
    lineno_ = lineno;
    std::string L = raw.substr(0, raw.find('#'));
    if (trimmed(L, 0).text.empty()) return;
    std::smatch m;
    static const std::regex ring_re(R"(^\s*ring\s+(\w+)\s*=\s*(QQ|Fp\(\s*(\d+)\s*\))\s*\[(.*)\]\s*$)");
    static const std::regex rels_re(R"(^\s*rels\s+(\w+)\s*=\s*\((.*)\)\s*$)");
    static const std::regex ideal_re(R"(^\s*ideal\s+(\w+)\s+in\s+(\w+)\s*=\s*\((.*)\)\s*$)");
    static const std::regex elem_re(R"(^\s*elem\s+(\w+)\s+in\s+(\w+)\s*=\s*(.*\S)\s*$)");
    static const std::regex center_re(R"(^\s*center\s+(\w+)\s+on\s+(\w+)\s*=\s*(.*\S)\s*$)");
    static const std::regex map_re(R"(^\s*map\s+(\w+)\s+from\s+(\w+)\s+to\s+(\w+)\s*=\s*\((.*)\)\s*$)");
    static const std::regex filt_re(R"(^\s*filtration\s+(\w+)\s*=\s*group\s+(GL|SL)\(\s*(\d+)\s*\)\s*,(.*)$)");
    static const std::regex request_re(R"(^\s*request\s+(.*\S)\s*$)");
    auto col = [&](int k) { return std::size_t(m.position(k)); };

    if (std::regex_match(L, m, ring_re)) {
      declare(m[1], col(1));
      Field field = Field::rationals();
      if (m[3].matched) {
        unsigned long p = 0;
        try {
          p = std::stoul(m[3].str());
        } catch (const std::exception&) {
          fail(col(3), "characteristic " + m[3].str() + " is out of range");
        }
        if (p >= (1ul << 31) || !is_prime(p)) fail(col(3), "characteristic " + m[3].str() + " is not prime");
        field = Field::prime(std::uint32_t(p));
      }
      std::vector<std::string> vars;
      for (const auto& v : split_top(m[4].str(), ',', col(4))) {
        if (!is_identifier(v.text)) fail(v.col, "bad variable name '" + v.text + "'");
        vars.push_back(v.text);
      }
      try {
        auto ring = PolyRing::make(field, vars);
        inst_.rings.emplace(m[1], PresentedAlgebra(ring));
      } catch (const InputError& e) {
        fail(col(4), e.what());
      }
    } else if (std::regex_match(L, m, rels_re)) {
      auto& A = ring(m[1], col(1));
      if (used_.count(m[1])) fail(col(1), "relations of '" + m[1].str() + "' given after the ring was used");
      auto gens = polys(A, m[2].str(), col(2));
      A = PresentedAlgebra(A.ring(), IdealHandle(A.ring(), gens));
    } else if (std::regex_match(L, m, ideal_re)) {
      declare(m[1], col(1));
      const auto& A = use(m[2], col(2));
      inst_.ideals.emplace(m[1], std::make_pair(m[2].str(), IdealHandle(A.ring(), polys(A, m[3].str(), col(3)))));
    } else if (std::regex_match(L, m, elem_re)) {
      declare(m[1], col(1));
      const auto& A = use(m[2], col(2));
      inst_.elems.emplace(m[1], std::make_pair(m[2].str(), poly(A, m[3].str(), col(3))));
    } else if (std::regex_match(L, m, center_re)) {
      declare(m[1], col(1));
      const auto& A = use(m[2], col(2));
      MultiCenter c{A, {}, std::nullopt};
      for (const auto& part : split_top(m[3].str(), ',', col(3))) {
        if (part.text.size() < 2 || part.text.front() != '[' || part.text.back() != ']')
          fail(part.col, "expected [IDEAL / ELEMENT]");
        Piece body = trimmed(std::string_view(part.text).substr(1, part.text.size() - 2), part.col + 1);
        std::size_t slash = std::string::npos;
        if (!body.text.empty() && body.text[0] == '(') {
          int depth = 0;
          for (std::size_t k = 0; k < body.text.size(); ++k) {
            depth += body.text[k] == '(' ? 1 : body.text[k] == ')' ? -1 : 0;
            if (depth == 0) {
              slash = body.text.find('/', k);
              break;
            }
          }
        } else {
          slash = body.text.find('/');
        }
        if (slash == std::string::npos) fail(part.col, "expected [IDEAL / ELEMENT]");
        Piece I = trimmed(std::string_view(body.text).substr(0, slash), body.col);
        Piece a = trimmed(std::string_view(body.text).substr(slash + 1), body.col + slash + 1);
        c.centers.push_back(Center{ideal_slot(m[2], A, I), elem_slot(m[2], A, a)});
      }
      if (c.centers.empty()) fail(col(3), "center needs at least one [IDEAL / ELEMENT]");
      inst_.centers.emplace(m[1], std::move(c));
    } else if (std::regex_match(L, m, map_re)) {
      declare(m[1], col(1));
      const auto& A = use(m[2], col(2));
      const auto& B = use(m[3], col(3));
      std::vector<std::pair<std::string, std::string>> images;
      for (const auto& p : split_top(m[4].str(), ',', col(4))) {
        auto arrow = p.text.find("->");
        if (arrow == std::string::npos) fail(p.col, "expected VARIABLE -> POLYNOMIAL");
        std::string v = trimmed(std::string_view(p.text).substr(0, arrow), 0).text;
        Piece img = trimmed(std::string_view(p.text).substr(arrow + 2), p.col + arrow + 2);
        if (!A.ring()->index_of(v)) fail(p.col, "'" + v + "' is not a variable of " + m[2].str());
        poly(B, img.text, img.col);  // locates syntax errors
        images.emplace_back(v, img.text);
      }
      try {
        inst_.maps.emplace(m[1], parse_hom(A, B, images));
      } catch (const InputError& e) {
        fail(col(4), e.what());
      }
    } else if (std::regex_match(L, m, filt_re)) {
      declare(m[1], col(1));
      FiltrationDecl F;
      try {
        F.group = congruence::GroupSpec::parse(m[2].str() + "_" + m[3].str());
      } catch (const InputError& e) {
        fail(col(3), e.what());
      }
      auto parts = split_top(m[4].str(), ',', col(4));
      if (parts.size() < 3) fail(col(4), "expected p, N, (H, r), ...");
      try {
        auto pN = unsigned_list(parts[0].text + "," + parts[1].text);
        F.level = congruence::LevelRing::make(pN[0], pN[1]);
      } catch (const InputError& e) {
        fail(parts[0].col, e.what());
      }
      std::size_t arity = 0;
      for (std::size_t k = 2; k < parts.size(); ++k) {
        const auto& p = parts[k];
        if (p.text.size() < 2 || p.text.front() != '(' || p.text.back() != ')') fail(p.col, "expected (H, r) or (H, s, r)");
        auto fields = split_top(std::string_view(p.text).substr(1, p.text.size() - 2), ',', p.col + 1);
        if (fields.size() != 2 && fields.size() != 3) fail(p.col, "expected (H, r) or (H, s, r)");
        if (arity && fields.size() != arity) fail(p.col, "all entries need the same shape");
        arity = fields.size();
        try {
          auto H = congruence::Subgroup::parse(fields[0].text);
          H.validate(F.group.n);
          F.H.push_back(H);
          auto nums = unsigned_list(fields[1].text + (arity == 3 ? "," + fields[2].text : ""));
          if (arity == 3) F.s.push_back(nums[0]);
          F.r.push_back(nums.back());
        } catch (const InputError& e) {
          fail(fields[0].col, e.what());
        }
      }
      inst_.filtrations.emplace(m[1], std::move(F));
    } else if (std::regex_match(L, m, request_re)) {
      Request req = parse_request(m[1].str());
      req.line = lineno;
      try {
        validate(req);
      } catch (const InputError& e) {
        fail(col(1), e.what());
      }
      inst_.requests.push_back(std::move(req));
    } else {
      std::size_t c = L.find_first_not_of(" \t");
      fail(c, "unrecognized declaration '" + trimmed(L, 0).text + "'");
    }
  }

  // Object names referenced by a request must exist with the right kind.
  void validate(const Request& req) const {
    const auto& w = req.words;
    auto arg = [&](std::size_t k) -> const std::string& {
      if (k >= w.size()) throw InputError("request '" + req.text() + "' is missing arguments");
      return w[k];
    };
    auto center = [&](std::size_t k) {
      if (!inst_.centers.count(arg(k))) throw InputError("undeclared center '" + arg(k) + "'");
    };
    const std::string& cmd = arg(0);
    if (cmd == "present" || cmd == "check" || cmd == "oracle") {
      center(1);
    } else if (cmd == "iso") {
      static const std::set<std::string> names{"monopoly", "two-stage", "localize", "open-immersion",
                                               "iterate",  "conic",     "base-change", "forget"};
      if (!names.count(arg(1))) throw InputError("unknown isomorphism '" + arg(1) + "'");
      if (arg(1) == "iterate") {
        if (!inst_.rings.count(arg(2))) throw InputError("undeclared ring '" + arg(2) + "'");
      } else {
        center(2);
      }
      if (arg(1) == "base-change" && !inst_.maps.count(arg(3))) throw InputError("undeclared map '" + arg(3) + "'");
    } else if (cmd == "universal") {
      center(1);
      if (arg(2) != "scan" && !inst_.maps.count(arg(2))) throw InputError("undeclared map '" + arg(2) + "'");
      if (w.size() > 3 && !inst_.maps.count(w[3])) throw InputError("undeclared map '" + w[3] + "'");
    } else if (cmd == "congruence" || cmd == "normalizer") {
      if (!inst_.filtrations.count(arg(1))) throw InputError("undeclared filtration '" + arg(1) + "'");
      if (cmd == "normalizer") congruence::Subgroup::parse(arg(2));
    } else if (cmd == "rost") {
      if (!inst_.rings.count(arg(1))) throw InputError("undeclared ring '" + arg(1) + "'");
      for (std::size_t k : {2, 3})
        if (!inst_.ideals.count(arg(k))) throw InputError("undeclared ideal '" + arg(k) + "'");
    } else {
      throw InputError("unknown request '" + cmd + "'");
    }
  }

  Instance take() { return std::move(inst_); }

 private:
  Instance inst_;
  int lineno_ = 0;
  std::set<std::string> names_, used_;

  [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
    throw ParseError(inst_.file, lineno_, int(col) + 1, msg);
  }

  void declare(const std::string& name, std::size_t col) {
    if (!names_.insert(name).second) fail(col, "'" + name + "' is already declared");
  }

  PresentedAlgebra& ring(const std::string& name, std::size_t col) {
    auto it = inst_.rings.find(name);
    if (it == inst_.rings.end()) fail(col, "undeclared ring '" + name + "'");
    return it->second;
  }

  const PresentedAlgebra& use(const std::string& name, std::size_t col) {
    auto& A = ring(name, col);
    used_.insert(name);
    return A;
  }

  Polynomial poly(const PresentedAlgebra& A, const std::string& text, std::size_t col) const {
    try {
      return A.parse(text);
    } catch (const InputError& e) {
      fail(col, e.what());
    }
  }

  std::vector<Polynomial> polys(const PresentedAlgebra& A, const std::string& body, std::size_t col) const {
    std::vector<Polynomial> out;
    for (const auto& p : split_top(body, ',', col)) out.push_back(poly(A, p.text, p.col));
    return out;
  }

  IdealHandle ideal_slot(const std::string& ringname, const PresentedAlgebra& A, const Piece& p) const {
    if (!p.text.empty() && p.text.front() == '(' && p.text.back() == ')')
      return IdealHandle(A.ring(), polys(A, p.text.substr(1, p.text.size() - 2), p.col + 1));
    auto it = inst_.ideals.find(p.text);
    if (it == inst_.ideals.end()) fail(p.col, "undeclared ideal '" + p.text + "'");
    if (it->second.first != ringname) fail(p.col, "ideal '" + p.text + "' lives in " + it->second.first);
    return it->second.second;
  }

  Polynomial elem_slot(const std::string& ringname, const PresentedAlgebra& A, const Piece& p) const {
    auto it = inst_.elems.find(p.text);
    if (it == inst_.elems.end()) return poly(A, p.text, p.col);
    if (it->second.first != ringname) fail(p.col, "element '" + p.text + "' lives in " + it->second.first);
    return it->second.second;
  }
};

const MultiCenter& center_of(const Instance& inst, const std::string& name) {
  auto it = inst.centers.find(name);
  if (it == inst.centers.end()) throw InputError("undeclared center '" + name + "'");
  return it->second;
}

const AlgebraHom& map_of(const Instance& inst, const std::string& name) {
  auto it = inst.maps.find(name);
  if (it == inst.maps.end()) throw InputError("undeclared map '" + name + "'");
  return it->second;
}

std::string join(const std::vector<Polynomial>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : ", ") + p.to_string();
  return s;
}

std::string machine_key(const std::string& name) {
  std::string k;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == ':' && i + 1 < name.size() && name[i + 1] == ' ') {
      k += '/';
      ++i;
    } else if (name[i] == ' ' || name[i] == ':') {
      k += '_';
    } else {
      k += name[i];
    }
  }
  return k;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void describe(Outcome& out, const DilatationResult& R) {
  out.machine["relations"] = join(R.algebra.relations().groebner());
  out.machine["variables"] = [&] {
    std::string s;
    for (const auto& v : R.algebra.vars()) s += (s.empty() ? "" : ", ") + v;
    return s;
  }();
  out.machine["zero_ring"] = R.zero_ring ? "true" : "false";
  out.machine["saturation_changed"] = R.saturation_changed ? "true" : "false";
  std::string fr;
  for (const auto& f : R.fractions)
    fr += (fr.empty() ? "" : "; ") + f.var + " = (" + f.numerator.to_string() + ")/(" + f.denominator.to_string() + ")";
  out.machine["fractions"] = fr;
  out.human.push_back("center: " + R.center.to_string());
  out.human.push_back("presentation: " + R.algebra.to_string());
  out.human.push_back("fractions: " + fr);
  out.human.push_back(std::string("zero ring: ") + (R.zero_ring ? "yes" : "no"));
}

void run_dispatch(const Instance& inst, const Request& req, const Options& opt, Outcome& out, std::string& key) {
  const auto& w = req.words;
  auto arg = [&](std::size_t k) -> const std::string& {
    if (k >= w.size()) throw InputError("request '" + req.text() + "' is missing arguments");
    return w[k];
  };
  const std::string& cmd = arg(0);
  key = cmd;
  if (cmd == "present") {
    describe(out, dilate(normalize_center(center_of(inst, arg(1)))));
  } else if (cmd == "check") {
    auto R = dilate(normalize_center(center_of(inst, arg(1))));
    describe(out, R);
    out.reports.push_back(check_exceptional(R));
  } else if (cmd == "iso") {
    const std::string& name = arg(1);
    key = name;
    if (name == "iterate") {
      const auto& A = inst.rings.at(arg(2));
      auto kv = keyed(w, 3);
      std::vector<IdealHandle> ideals;
      for (const auto& p : split_top(need(kv, "ideals"), ',', 0)) {
        auto it = inst.ideals.find(p.text);
        if (it == inst.ideals.end() || it->second.first != arg(2)) throw InputError("undeclared ideal '" + p.text + "'");
        ideals.push_back(it->second.second);
      }
      std::string atext = need(kv, "a");
      auto e = inst.elems.find(atext);
      Polynomial a = e != inst.elems.end() ? e->second.second : A.parse(atext);
      auto t = unsigned_list(need(kv, "t"));
      if (t.size() != 1) throw InputError("t= takes one value");
      out.reports.push_back(iterate_iso(A, a, ideals, unsigned_list(need(kv, "s")), t[0]));
      return;
    }
    const MultiCenter& c = center_of(inst, arg(2));
    if (name == "monopoly") {
      auto r = monopoly_iso(c);
      out.human.push_back("mono center: " + r.mono.to_string());
      out.reports.push_back(r.report);
    } else if (name == "two-stage") {
      out.reports.push_back(two_stage_iso(c, index_list(arg(3))));
    } else if (name == "localize") {
      out.reports.push_back(localize_compare(c));
    } else if (name == "open-immersion") {
      auto kv = keyed(w, 3);
      std::map<std::size_t, std::size_t> assign;
      for (const auto& p : split_top(need(kv, "assign"), ',', 0)) {
        auto colon = p.text.find(':');
        if (colon == std::string::npos) throw InputError("assign= takes i:k pairs");
        assign[index_list(p.text.substr(0, colon)).at(0)] = index_list(p.text.substr(colon + 1)).at(0);
      }
      out.reports.push_back(open_immersion_iso(c, index_list(need(kv, "keep")), assign));
    } else if (name == "conic") {
      out.reports.push_back(conic_iso(c));
    } else if (name == "base-change") {
      out.reports.push_back(base_change_compare(c, map_of(inst, arg(3))));
    } else if (name == "forget") {
      auto r = forget_map(c, index_list(need(keyed(w, 3), "keep")));
      out.human.push_back("map: " + r.map.to_string());
      out.reports.push_back(r.report);
    } else {
      throw InputError("unknown isomorphism '" + name + "'");
    }
  } else if (cmd == "oracle") {
    out.reports.push_back(oracle::compare_with_symbolic(center_of(inst, arg(1)), opt.oracle_cap));
  } else if (cmd == "universal") {
    const MultiCenter& c = center_of(inst, arg(1));
    if (arg(2) == "scan") {
      auto tab = oracle::tabulate(c.base, opt.oracle_cap);
      std::vector<std::pair<std::vector<oracle::Elem>, oracle::Elem>> gens;
      for (const auto& ce : c.centers) {
        std::vector<oracle::Elem> M;
        for (const auto& g : ce.M.generators()) M.push_back(tab.element(g));
        gens.emplace_back(M, tab.element(ce.a));
      }
      auto FC = oracle::FiniteCenter::make(tab.ring, gens);
      auto Ap = oracle::dilate_oracle_fractions(tab.ring, FC, opt.oracle_cap);
      out.reports.push_back(oracle::universal_property_scan(tab.ring, FC, Ap, oracle::zmod_catalog(12)));
    } else {
      std::optional<AlgebraHom> candidate;
      if (w.size() > 3) candidate = map_of(inst, w[3]);
      auto r = universal_factor(c, map_of(inst, arg(2)), candidate);
      if (r.factor) out.human.push_back("factor: " + r.factor->to_string());
      out.reports.push_back(r.report);
    }
  } else if (cmd == "congruence") {
    const auto& F = inst.filtrations.at(arg(1));
    if (F.s.empty()) throw InputError("filtration '" + arg(1) + "' needs (H, s, r) entries");
    out.reports.push_back(congruence::congruent_iso_check(F.group, F.H, F.s, F.r, F.level));
  } else if (cmd == "normalizer") {
    const auto& F = inst.filtrations.at(arg(1));
    out.reports.push_back(
        congruence::normalizer_check(F.group, congruence::Subgroup::parse(arg(2)), F.H, F.r, F.level));
  } else if (cmd == "rost") {
    const auto& A = inst.rings.at(arg(1));
    RostInput R{A, inst.ideals.at(arg(2)).second, inst.ideals.at(arg(3)).second};
    R.validate();
    auto D = rost_space(R);
    describe(out, D);
    out.reports.push_back(rost_subalgebra_check(R, opt.bidegree_bound));
  } else {
    throw InputError("unknown request '" + cmd + "'");
  }
}

}  // namespace

ParseError::ParseError(const std::string& file, int line_, int column_, const std::string& message)
    : InputError(file + ":" + std::to_string(line_) + ":" + std::to_string(column_) + ": " + message),
      line(line_),
      column(column_) {}

std::string Request::text() const {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s;
}

Request parse_request(const std::string& text) {
  Request r;
  std::istringstream in(text);
  std::string w;
  while (in >> w) r.words.push_back(w);
  if (r.words.empty()) throw InputError("empty request");
  return r;
}

Instance parse_instance(std::string_view text, const std::string& file) {
  Parser p(file);
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) p.line(line, ++lineno);
  return p.take();
}

Outcome run_request(const Instance& inst, const Request& req, const Options& opt) {
  Outcome out;
  out.title = req.text();
  std::string key = req.words.empty() ? "request" : req.words[0];
  try {
    set_default_gb_limits(opt.limits);
    run_dispatch(inst, req, opt, out, key);
  } catch (const ResourceLimit& e) {
    out.code = kResourceLimit;
    out.machine["error"] = one_line(e.what());
    out.machine["status"] = "resource-limit";
    out.machine[key] = "resource-limit";
    return out;
  } catch (const InputError& e) {
    out.code = kParseError;
    out.machine["error"] = one_line(e.what());
    out.machine["status"] = "error";
    out.machine[key] = "error";
    return out;
  }
  bool ok = true;
  for (const auto& r : out.reports) {
    ok = ok && r.passed();
    if (r.refused) out.machine["refused"] = "true";
    for (const auto& c : r.checks) {
      std::string k = "check." + machine_key(c.name);
      // Repeated names (rare) keep the worst outcome.
      if (!out.machine.count(k) || !c.passed) out.machine[k] = c.passed ? "pass" : "fail";
    }
    for (const auto& [k, v] : r.facts) out.machine["fact." + machine_key(k)] = one_line(v);
  }
  out.code = ok ? kPass : kFail;
  out.machine["status"] = ok ? "pass" : "fail";
  out.machine[key] = ok ? "pass" : "fail";
  return out;
}

int run_text(std::string_view text, const std::string& file, const std::vector<Request>& override, const Options& opt,
             std::ostream& out, std::ostream& err) {
  Instance inst;
  std::vector<Request> requests;
  try {
    inst = parse_instance(text, file);
    if (override.empty()) {
      requests = inst.requests;
    } else {
      Parser check(file);
      std::istringstream in{std::string(text)};
      std::string line;
      int lineno = 0;
      while (std::getline(in, line)) check.line(line, ++lineno);
      for (const auto& r : override) {
        check.validate(r);
        requests.push_back(r);
      }
    }
  } catch (const InputError& e) {
    err << e.what() << "\n";
    return kParseError;
  }
  if (requests.empty()) {
    err << file << ": no requests\n";
    return kPass;
  }

  std::vector<Outcome> outcomes(requests.size());
  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, unsigned(requests.size())));
  if (jobs == 1) {
    for (std::size_t k = 0; k < requests.size(); ++k) outcomes[k] = run_request(inst, requests[k], opt);
  } else {
    // Each worker parses its own copy so no ideal caches are shared.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        Instance local = parse_instance(text, file);
        for (std::size_t k; (k = next++) < requests.size();) outcomes[k] = run_request(local, requests[k], opt);
      });
    for (auto& t : pool) t.join();
  }

  if (!opt.machine_only) {
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      const auto& o = outcomes[k];
      out << "== [" << k + 1 << "] " << o.title << " ==\n";
      for (const auto& h : o.human) out << h << "\n";
      for (const auto& r : o.reports) {
        if (r.refused) out << "refused: a hypothesis does not hold\n";
        for (const auto& c : r.checks)
          out << (c.passed ? "  pass  " : "  FAIL  ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        for (const auto& [fk, fv] : r.facts) out << "  fact  " << fk << " = " << fv << "\n";
      }
      if (o.machine.count("error")) out << "error: " << o.machine.at("error") << "\n";
      out << "result: " << o.machine.at("status") << "\n\n";
    }
    out << "--- machine ---\n";
  }
  int code = kPass;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    out << "[" << k + 1 << "] " << outcomes[k].title << "\n";
    for (const auto& [mk, mv] : outcomes[k].machine) out << mk << ": " << mv << "\n";
    int c = outcomes[k].code;
    if (c == kResourceLimit || (c == kParseError && code != kResourceLimit) || (c == kFail && code == kPass)) code = c;
  }
  return code;
}

}  // namespace dila::cli
