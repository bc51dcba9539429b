#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triesat/error.hpp"
#include "triesat/harness.hpp"

namespace py = pybind11;
using namespace triesat;

namespace {

// Results cross the boundary as JSON text; the Python side decodes them.
std::string dumps(const Json& j) { return j.dump(); }

PipelineOptions options(const std::string& ordering, int algorithm) {
  PipelineOptions o;
  o.ordering = OrderingPolicy::parse(ordering);
  if (algorithm != 1 && algorithm != 3) throw Error(ErrorKind::InvalidArgument, "algorithm must be 1 or 3");
  o.algorithm = algorithm == 1 ? Algorithm::Alg1 : Algorithm::Alg3;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  // messages start with the error kind, e.g. "MalformedHeader: ..."
  py::register_exception<Error>(m, "TriesatError", PyExc_ValueError);

  m.def("render_cnf", [](const std::string& text) { return render_cnf(parse_cnf(text)); });

  m.def(
      "oracle",
      [](const std::string& text, std::size_t cap, unsigned threads) {
        const CnfFormula f = parse_cnf(text);
        py::gil_scoped_release release;
        return dumps(to_json(oracle_max_sat(f, {cap, threads}), f.variables));
      },
      py::arg("cnf"), py::arg("cap") = 24, py::arg("threads") = 1);

  m.def(
      "pipeline",
      [](const std::string& text, const std::string& ordering, int algorithm) {
        const PipelineOptions o = options(ordering, algorithm);
        return dumps(answer_json(run_pipeline(parse_cnf(text), o)));
      },
      py::arg("cnf"), py::arg("ordering") = "frequency", py::arg("algorithm") = 1);

  m.def(
      "export_stages",
      [](const std::string& text, const std::vector<std::string>& stages, const std::string& format,
         const std::string& ordering, int algorithm) {
        const PipelineOptions o = options(ordering, algorithm);
        return export_stages(run_pipeline(parse_cnf(text), o), stages, format);
      },
      py::arg("cnf"), py::arg("stages"), py::arg("format") = "json", py::arg("ordering") = "frequency",
      py::arg("algorithm") = 1);

  m.def(
      "audit",
      [](const std::string& text, const std::string& ordering, int algorithm) {
        return dumps(audit_bounds(parse_cnf(text), options(ordering, algorithm)).to_json());
      },
      py::arg("cnf"), py::arg("ordering") = "frequency", py::arg("algorithm") = 1);

  m.def(
      "repro",
      [](const std::string& name) {
        auto spec = find_builtin(name);
        if (!spec) throw Error(ErrorKind::InvalidArgument, "unknown builtin '" + name + "'");
        return dumps(run_counterexample(*spec).to_json());
      },
      py::arg("name"));

  m.def("builtin_names", [] {
    std::vector<std::string> out;
    for (const auto& s : builtin_counterexamples()) out.push_back(s.name);
    return out;
  });

  m.def(
      "fuzz",
      [](std::uint64_t seed, std::size_t iterations, std::size_t max_n0, std::size_t max_m0, unsigned threads) {
        FuzzParams p;
        p.max_n0 = max_n0;
        p.max_m0 = max_m0;
        p.threads = threads;
        std::vector<Mismatch> ms;
        {
          py::gil_scoped_release release;
          ms = fuzz(seed, iterations, p);
        }
        Json list = Json::array();
        for (const auto& x : ms) list.push_back(x.to_json());
        return dumps(list);
      },
      py::arg("seed"), py::arg("iterations"), py::arg("max_n0") = 4, py::arg("max_m0") = 3, py::arg("threads") = 1);

  m.def(
      "close_spans",
      [](const std::vector<bool>& starred) {
        VarSequence s{"s", {SeqItem::start()}};
        for (std::size_t i = 0; i < starred.size(); ++i) {
          const auto v = static_cast<VarId>(i);
          s.items.push_back(starred[i] ? SeqItem::starred(v) : SeqItem::present(v));
        }
        s.items.push_back(SeqItem::end());
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const Span& sp : close_spans(build_pgraph(s)).closed_spans) out.emplace_back(sp.from, sp.to);
        return out;
      },
      py::arg("starred"), "Closed spans of #, the given interior items, $. Positions include the sentinels.");
}
