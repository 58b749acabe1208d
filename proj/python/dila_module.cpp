#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dila/congruence.hpp"
#include "dila/dilatation.hpp"
#include "dila/errors.hpp"
#include "dila/instance.hpp"
#include "dila/oracle.hpp"

namespace py = pybind11;
using namespace dila;

namespace {

py::dict report_dict(const Report& r) {
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["passed"] = c.passed;
    d["detail"] = c.detail;
    checks.append(d);
  }
  py::dict facts;
  for (const auto& [k, v] : r.facts) facts[py::str(k)] = v;
  py::dict out;
  out["name"] = r.name;
  out["passed"] = r.passed();
  out["refused"] = r.refused;
  out["checks"] = checks;
  out["facts"] = facts;
  return out;
}

PresentedAlgebra algebra(const std::vector<std::string>& vars, const std::vector<std::string>& rels,
                         std::uint32_t p) {
  auto ring = PolyRing::make(p == 0 ? Field::rationals() : Field::prime(p), vars);
  std::vector<Polynomial> g;
  for (const auto& s : rels) g.push_back(parse_polynomial(ring, s));
  return PresentedAlgebra(ring, IdealHandle(ring, std::move(g)));
}

using Pairs = std::vector<std::pair<std::vector<std::string>, std::string>>;

py::dict dilate_py(const std::vector<std::string>& vars, const Pairs& centers, const std::vector<std::string>& rels,
                   std::uint32_t p) {
  DilatationResult R = [&] {
    py::gil_scoped_release release;
    return dilate(normalize_center(make_center(algebra(vars, rels, p), centers)));
  }();
  py::list fractions;
  for (const auto& f : R.fractions)
    fractions.append(py::make_tuple(f.var, f.numerator.to_string(), f.denominator.to_string()));
  std::vector<std::string> gb;
  for (const auto& g : R.algebra.relations().groebner()) gb.push_back(g.to_string());
  py::dict out;
  out["variables"] = R.algebra.vars();
  out["relations"] = gb;
  out["fractions"] = fractions;
  out["zero_ring"] = R.zero_ring;
  out["saturation_changed"] = R.saturation_changed;
  return out;
}

py::tuple run_py(const std::string& text, const std::vector<std::string>& commands, unsigned jobs,
                 bool machine_only) {
  cli::Options opt;
  opt.jobs = jobs;
  opt.machine_only = machine_only;
  std::vector<cli::Request> reqs;
  for (const auto& c : commands) reqs.push_back(cli::parse_request(c));
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::run_text(text, "<python>", reqs, opt, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(dila, m) {
  m.doc() = "Dilatations of commutative algebras: symbolic engine, finite oracle and verification reports";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

  m.def("dilate", &dilate_py, py::arg("variables"), py::arg("centers"), py::arg("relations") = std::vector<std::string>{},
        py::arg("characteristic") = 0,
        "Dilatation of k[variables]/(relations) at centers [(gens), a]; characteristic 0 means QQ.");

  m.def(
      "check_exceptional",
      [](const std::vector<std::string>& vars, const Pairs& centers, const std::vector<std::string>& rels,
         std::uint32_t p) {
        Report r;
        {
          py::gil_scoped_release release;
          r = check_exceptional(dilate(make_center(algebra(vars, rels, p), centers)));
        }
        return report_dict(r);
      },
      py::arg("variables"), py::arg("centers"), py::arg("relations") = std::vector<std::string>{},
      py::arg("characteristic") = 0);

  m.def(
      "monopoly",
      [](const std::vector<std::string>& vars, const Pairs& centers, const std::vector<std::string>& rels,
         std::uint32_t p) {
        MonopolyResult r = [&] {
          py::gil_scoped_release release;
          return monopoly_iso(make_center(algebra(vars, rels, p), centers));
        }();
        py::dict d = report_dict(r.report);
        d["single_center"] = r.mono.to_string();
        return d;
      },
      py::arg("variables"), py::arg("centers"), py::arg("relations") = std::vector<std::string>{},
      py::arg("characteristic") = 0);

  m.def(
      "oracle_zmod",
      [](unsigned n, const std::vector<std::pair<std::vector<unsigned>, unsigned>>& centers) {
        auto A = oracle::FiniteRing::zmod(n);
        std::vector<std::pair<std::vector<oracle::Elem>, oracle::Elem>> c;
        for (const auto& [gens, a] : centers) {
          std::vector<oracle::Elem> g;
          for (auto x : gens) g.push_back(oracle::Elem(x % n));
          c.push_back({g, oracle::Elem(a % n)});
        }
        auto F = oracle::dilate_oracle_fractions(A, oracle::FiniteCenter::make(A, c));
        py::dict d = report_dict(F.certificate);
        d["size"] = F.ring.size();
        return d;
      },
      py::arg("n"), py::arg("centers"), "Brute-force dilatation of Z/n; returns the certificate and the ring size.");

  m.def(
      "congruence",
      [](const std::string& group, const std::vector<std::string>& H, const std::vector<unsigned>& s,
         const std::vector<unsigned>& r, std::uint32_t p, unsigned N) {
        std::vector<congruence::Subgroup> subs;
        for (const auto& h : H) subs.push_back(congruence::Subgroup::parse(h));
        auto G = congruence::GroupSpec::parse(group);
        auto R = congruence::LevelRing::make(p, N);
        Report rep;
        {
          py::gil_scoped_release release;
          rep = congruence::congruent_iso_check(G, subs, s, r, R);
        }
        return report_dict(rep);
      },
      py::arg("group"), py::arg("subgroups"), py::arg("s"), py::arg("r"), py::arg("p"), py::arg("N"));

  m.def("run", &run_py, py::arg("text"), py::arg("commands") = std::vector<std::string>{}, py::arg("jobs") = 1,
        py::arg("machine_only") = true,
        "Runs an instance file's requests (or `commands`); returns (exit code, stdout, stderr).");
}
