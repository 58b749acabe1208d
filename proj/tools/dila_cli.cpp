#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dila/instance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Construct multi-centered dilatations and verify their structural isomorphisms."};
  std::string path;
  std::vector<std::string> command;
  dila::cli::Options opt;
  app.add_option("file", path, "instance file")->required();
  app.add_option("command", command, "request to run instead of the file's requests, e.g. 'iso monopoly C'");
  app.add_option("--degree-cap", opt.limits.degree_cap, "Groebner S-pair degree cap")->capture_default_str();
  app.add_option("--pair-cap", opt.limits.pair_cap, "Groebner S-pair count cap")->capture_default_str();
  app.add_option("--oracle-size-cap", opt.oracle_cap, "largest finite ring the oracle enumerates")
      ->capture_default_str();
  app.add_option("--bidegree-bound", opt.bidegree_bound, "bidegree bound for rost requests (<= 4)")
      ->check(CLI::Range(0, 4))
      ->capture_default_str();
  app.add_option("--jobs", opt.jobs, "requests run in parallel")->check(CLI::Range(1u, 256u))->capture_default_str();
  app.add_flag("--machine-only", opt.machine_only, "print only the key: value section");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dila::cli::kParseError;
  }

  std::ifstream in(path);
  if (!in) {
    std::cerr << path << ": cannot read file\n";
    return dila::cli::kParseError;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  std::vector<dila::cli::Request> override;
  if (!command.empty()) {
    std::string text;
    for (const auto& w : command) text += w + " ";
    try {
      override.push_back(dila::cli::parse_request(text));
    } catch (const dila::InputError& e) {
      std::cerr << e.what() << "\n";
      return dila::cli::kParseError;
    }
  }
  return dila::cli::run_text(buf.str(), path, override, opt, std::cout, std::cerr);
}
