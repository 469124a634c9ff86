#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "juniper/classify.hpp"
#include "juniper/divisor_graph.hpp"
#include "juniper/errors.hpp"
#include "juniper/pairing.hpp"
#include "juniper/primes.hpp"
#include "juniper/solver.hpp"
#include "juniper/strategy.hpp"

namespace py = pybind11;
using namespace juniper;

namespace {

const PrimeTable& primes() {
  static const PrimeTable table(kDefaultPrimeLimit);
  return table;
}

py::dict report_dict(const ClassificationReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["symbol"] = r.symbol();
  d["verdict"] = r.verdict ? py::cast(std::string(1, to_gp(*r.verdict))) : py::none();
  d["method"] = to_string(r.method);
  d["verified"] = r.verified;
  d["script"] = r.is_script();
  d["opening"] = r.opening() ? py::cast(*r.opening()) : py::none();
  d["detail"] = r.detail;
  return d;
}

py::dict certificate_dict(const PairingCertificate& c) {
  py::dict d;
  d["n"] = c.n;
  d["pairs"] = c.pairs;
  d["first_move"] = c.first_move ? py::cast(*c.first_move) : py::none();
  d["excluded"] = c.excluded;
  d["claim"] = std::string(1, to_gp(c.claim));
  d["text"] = format_certificate(c);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Juniper Green game engine";

  py::register_exception<Error>(m, "JuniperError", PyExc_ValueError);

  m.def(
      "solve",
      [](int n, bool even_rule) -> std::string {
        if (even_rule) return std::string(1, to_gp(*solve_initial(n).verdict));
        return std::string(1, to_gp(*solve_position(DivisorGraph(n), initial_position(n, false)).verdict));
      },
      py::arg("n"), py::arg("even_rule") = true, "G if the first player wins JG-n, otherwise P.");

  m.def("principal_line", &principal_line, py::arg("n"), "A full game with both sides playing best moves.");

  m.def(
      "legal_moves",
      [](int n, const std::vector<int>& moves, bool even_rule) {
        return legal_moves(DivisorGraph(n), replay(n, even_rule, moves));
      },
      py::arg("n"), py::arg("moves") = std::vector<int>{}, py::arg("even_rule") = true);

  m.def(
      "best_move",
      [](int n, const std::vector<int>& moves) -> std::optional<int> {
        const DivisorGraph g(n);
        return best_move(g, replay(n, true, moves));
      },
      py::arg("n"), py::arg("moves") = std::vector<int>{});

  m.def(
      "classify",
      [](int n, bool verified) {
        ClassifierOptions options;
        options.effort = verified ? Effort::Verified : Effort::Fast;
        return report_dict(Classifier(options).classify(n));
      },
      py::arg("n"), py::arg("verified") = false);

  m.def(
      "table",
      [](int max_n, bool verified) {
        py::list rows;
        for (const auto& r : full_table(max_n, verified ? Effort::Verified : Effort::Fast)) rows.append(report_dict(r));
        return rows;
      },
      py::arg("max_n"), py::arg("verified") = false);

  m.def(
      "forced_pairs",
      [](int n) {
        const ForcedPairing f = forced_pairs(n, primes());
        py::dict d;
        d["pairs"] = f.pairs;
        d["residual"] = f.residual.to_vector();
        d["isolated"] = f.isolated;
        return d;
      },
      py::arg("n"));

  m.def(
      "greedy_pairing",
      [](int n) -> py::object {
        const auto c = greedy_pairing(n, primes());
        return c ? py::object(certificate_dict(*c)) : py::none();
      },
      py::arg("n"));

  m.def(
      "verify_certificate",
      [](const std::string& text, bool closure_cut) {
        py::list out;
        for (const auto& c : parse_appendix(text, primes())) {
          py::dict d = certificate_dict(c);
          const ValidationResult v = validate_certificate(c, primes());
          d["validation"] = to_string(v.rule);
          if (v.ok()) {
            PairingVerifyOptions o;
            o.closure_cut = closure_cut;
            d["simulation"] = describe(verify_pairing_strategy(c, o));
          }
          out.append(d);
        }
        return out;
      },
      py::arg("text"), py::arg("closure_cut") = true);

  m.def(
      "three_prime_plan",
      [](int n) -> py::object {
        const auto plan = three_prime_strategy(n, primes());
        if (!plan) return py::none();
        py::dict d;
        d["primes"] = std::vector<int>{plan->p, plan->q, plan->r};
        d["opening"] = plan->opening;
        d["simulation"] = describe(simulate_strategy(n, plan->opening, three_prime_policy(*plan)));
        return d;
      },
      py::arg("n"));

  m.def(
      "interval_bounds",
      [] {
        const AppendixBoundsReport r = verify_appendix_bounds(primes());
        py::dict d;
        d["two_prime_exceptions"] = r.two_prime_exceptions;
        d["three_prime_exceptions"] = r.three_prime_exceptions;
        d["checked_up_to"] = r.checked_up_to;
        return d;
      },
      "Numbers with too few primes in (n/2, n] or (n/4, n/3].");
}
