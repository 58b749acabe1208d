#pragma once

// Line-oriented instance files and the request runner behind the `dila` tool.
//
//   ring A = QQ[a, g]            # or Fp(5)[x, y]
//   rels A = (g^2 - a^3)
//   ideal M in A = (g)
//   elem b in A = a^2
//   center C on A = [M / a], [(a, g) / b]
//   map h from A to B = (a -> u, g -> u^2)
//   filtration F = group SL(2), 2, 4, (e, 1, 2), (T, 2, 3)
//   request iso monopoly C

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dila/congruence.hpp"
#include "dila/dilatation.hpp"
#include "dila/errors.hpp"
#include "dila/groebner.hpp"
#include "dila/oracle.hpp"

namespace dila::cli {

class ParseError : public InputError {
 public:
  ParseError(const std::string& file, int line, int column, const std::string& message);
  int line = 0, column = 0;
};

struct FiltrationDecl {
  congruence::GroupSpec group;
  congruence::LevelRing level;
  std::vector<congruence::Subgroup> H;
  std::vector<unsigned> s, r;  // s is empty for (H, r) pairs
};

struct Request {
  std::vector<std::string> words;
  int line = 0;
  std::string text() const;
};

struct Instance {
  std::string file;
  std::map<std::string, PresentedAlgebra> rings;
  std::map<std::string, std::pair<std::string, IdealHandle>> ideals;  // ring name, ideal
  std::map<std::string, std::pair<std::string, Polynomial>> elems;
  std::map<std::string, MultiCenter> centers;
  std::map<std::string, AlgebraHom> maps;
  std::map<std::string, FiltrationDecl> filtrations;
  std::vector<Request> requests;
};

/// Throws ParseError naming the line and column.
Instance parse_instance(std::string_view text, const std::string& file = "<input>");
/// Splits a command line such as "iso two-stage C 1,2" into a request.
Request parse_request(const std::string& text);

struct Options {
  GbLimits limits;
  std::size_t oracle_cap = oracle::kDefaultSizeCap;
  int bidegree_bound = 4;
  unsigned jobs = 1;
  bool machine_only = false;
};

enum ExitCode { kPass = 0, kFail = 1, kParseError = 2, kResourceLimit = 3 };

struct Outcome {
  std::string title;
  std::vector<Report> reports;
  std::vector<std::string> human;  // extra human-readable lines
  std::map<std::string, std::string> machine;
  int code = kPass;
};

/// Runs one request; input problems and budget overruns are folded into the
/// outcome (codes 2 and 3) rather than thrown.
Outcome run_request(const Instance& inst, const Request& req, const Options& opt);

/// Parses `text`, runs its requests (or `override` when non-empty) and prints
/// the report. Returns the process exit code.
int run_text(std::string_view text, const std::string& file, const std::vector<Request>& override,
             const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace dila::cli
