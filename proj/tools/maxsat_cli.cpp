// maxsat: command-line front end for the pipeline, oracle and harness.
//
// Exit codes: 0 ok, 1 negative result (decision false, expectation missed,
// bound violated), 2 bad input, 3 resource cap hit.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "triesat/error.hpp"
#include "triesat/harness.hpp"

using namespace triesat;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kCapExceeded = 3;

struct Input {
  CnfFormula formula;
  std::optional<CounterexampleSpec> builtin;
};

Input load_input(const std::string& src) {
  Input in;
  if (src.rfind("builtin:", 0) == 0) {
    const std::string name = src.substr(8);
    in.builtin = find_builtin(name);
    if (!in.builtin) throw Error(ErrorKind::InvalidArgument, "unknown builtin '" + name + "'");
    in.formula = in.builtin->formula;
    return in;
  }
  std::string text;
  if (src == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (src.rfind("p cnf", 0) == 0) {
    text = src;
    std::replace(text.begin(), text.end(), ';', '\n');
  } else {
    std::ifstream f(src);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read '" + src + "'");
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  in.formula = parse_cnf(text);
  return in;
}

OrderingPolicy pick_policy(const std::string& flag, const Input& in) {
  if (!flag.empty()) return OrderingPolicy::parse(flag);
  if (in.builtin) return in.builtin->ordering;
  return OrderingPolicy::frequency();
}

Algorithm parse_algorithm(int a) {
  if (a == 1) return Algorithm::Alg1;
  if (a == 3) return Algorithm::Alg3;
  throw Error(ErrorKind::InvalidArgument, "algorithm must be 1 or 3");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void emit(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

Json write_stages(const PipelineRun& run, const std::vector<std::string>& stages, const std::string& format,
                  const std::string& dir) {
  std::filesystem::create_directories(dir);
  Json written = Json::array();
  for (const auto& [name, content] : export_stages(run, stages, format)) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
    out << content;
    written.push_back(path.string());
  }
  return written;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::TooManyVariables:
    case ErrorKind::SearchBudgetExceeded: return kCapExceeded;
    case ErrorKind::ExpectationFailed: return kNegative;
    default: return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-MAXSAT trie pipeline, exact oracle and refutation harness"};
  app.require_subcommand(1);

  unsigned threads = 1;
  std::size_t cap = 24;
  std::uint64_t max_states = SearchLimits{}.max_states;
  app.add_option("--threads", threads, "Worker threads for oracle and fuzz")->envname("MAXSAT_THREADS");
  app.add_option("--cap", cap, "Oracle variable cap")->envname("MAXSAT_CAP");
  app.add_option("--max-states", max_states, "Rooted-subgraph search budget")->envname("MAXSAT_MAX_STATES");

  std::string input;
  std::string ordering;
  int algorithm = 1;
  std::string format = "dot";
  std::string out_dir = ".";
  std::string report;

  auto* oracle = app.add_subcommand("oracle", "Exact maximum by enumeration");
  std::size_t k = 0;
  oracle->add_option("input", input, "CNF file, '-', inline 'p cnf ...' or builtin:NAME")->required();
  oracle->add_option("--k", k, "Decide whether at least k clauses can hold");

  auto* pipeline = app.add_subcommand("pipeline", "Run the trie pipeline and report its answer");
  std::string export_list;
  pipeline->add_option("input", input)->required();
  pipeline->add_option("--ordering", ordering, "frequency | frequency:id | lexical | explicit:A>B | A>B tie list")
      ->envname("MAXSAT_ORDERING");
  pipeline->add_option("--algorithm", algorithm, "1 or 3")->envname("MAXSAT_ALGORITHM");
  pipeline->add_option("--export", export_list, "Comma-separated stages to write");
  pipeline->add_option("--format", format, "dot or json")->envname("MAXSAT_FORMAT");
  pipeline->add_option("--out-dir", out_dir)->envname("MAXSAT_OUT_DIR");

  auto* repro = app.add_subcommand("repro", "Replay builtin counterexamples");
  std::string which = "all";
  std::size_t family_n = 4;
  repro->add_option("name", which, "ce1, ce2, ce3, running, family(N) or all");
  repro->add_option("--family", family_n, "n used for the family entry of 'all'");
  repro->add_option("--report", report);

  auto* fuzzc = app.add_subcommand("fuzz", "Random formulas against the oracle");
  std::uint64_t seed = 0;
  std::size_t iters = 100;
  FuzzParams params;
  std::string algos = "1";
  std::size_t shrink_count = 0;
  fuzzc->add_option("--seed", seed)->envname("MAXSAT_SEED");
  fuzzc->add_option("--iters", iters)->envname("MAXSAT_ITERS");
  fuzzc->add_option("--min-n0", params.min_n0);
  fuzzc->add_option("--max-n0", params.max_n0);
  fuzzc->add_option("--max-m0", params.max_m0);
  fuzzc->add_option("--orderings", params.orderings_per_formula, "Tie-consistent orderings per formula");
  fuzzc->add_option("--dup-prob", params.duplicate_literal_probability);
  fuzzc->add_flag("--distinct", params.distinct_vars_only, "Never repeat a variable inside a clause");
  fuzzc->add_option("--algorithms", algos, "e.g. 1 or 1,3");
  fuzzc->add_option("--shrink", shrink_count, "Shrink the first N mismatches");
  fuzzc->add_option("--report", report);

  auto* audit = app.add_subcommand("audit", "Measure stage sizes against the size bounds");
  std::size_t random_count = 0;
  audit->add_option("input", input);
  audit->add_option("--ordering", ordering)->envname("MAXSAT_ORDERING");
  audit->add_option("--algorithm", algorithm)->envname("MAXSAT_ALGORITHM");
  audit->add_option("--random", random_count, "Audit N random formulas instead of an input");
  audit->add_option("--seed", seed)->envname("MAXSAT_SEED");
  audit->add_option("--report", report);

  auto* exportc = app.add_subcommand("export", "Write stage graphs without searching");
  std::string stages = "trie-like,layered";
  exportc->add_option("input", input)->required();
  exportc->add_option("--stages", stages);
  exportc->add_option("--ordering", ordering)->envname("MAXSAT_ORDERING");
  exportc->add_option("--algorithm", algorithm)->envname("MAXSAT_ALGORITHM");
  exportc->add_option("--format", format)->envname("MAXSAT_FORMAT");
  exportc->add_option("--out-dir", out_dir)->envname("MAXSAT_OUT_DIR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const OracleOptions oopts{cap, threads};
    SearchLimits limits;
    limits.max_states = max_states;

    if (oracle->parsed()) {
      const Input in = load_input(input);
      const OracleResult r = oracle_max_sat(in.formula, oopts);
      Json j = to_json(r, in.formula.variables);
      if (oracle->count("--k")) {
        if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
        const bool yes = r.max_count >= k;
        j["k"] = k;
        j["decision"] = yes;
        emit(j, "");
        return yes ? kOk : kNegative;
      }
      emit(j, "");
      return kOk;
    }

    if (pipeline->parsed() || exportc->parsed()) {
      const Input in = load_input(input);
      PipelineOptions o;
      o.ordering = pick_policy(ordering, in);
      o.algorithm = parse_algorithm(algorithm);
      o.limits = limits;
      if (exportc->parsed()) {
        const auto list = split_list(stages);
        o.find_answer = std::find(list.begin(), list.end(), "answer") != list.end() ||
                        std::find(list.begin(), list.end(), "layered") != list.end();
        const PipelineRun run = run_pipeline(in.formula, o);
        emit(Json{{"written", write_stages(run, list, format, out_dir)}}, "");
        return kOk;
      }
      const PipelineRun run = run_pipeline(in.formula, o);
      Json j = answer_json(run);
      if (!export_list.empty()) j["written"] = write_stages(run, split_list(export_list), format, out_dir);
      emit(j, "");
      return kOk;
    }

    if (repro->parsed()) {
      std::vector<CounterexampleSpec> specs;
      if (which == "all") {
        specs = builtin_counterexamples(family_n);
      } else {
        auto s = find_builtin(which);
        if (!s) throw Error(ErrorKind::InvalidArgument, "unknown builtin '" + which + "'");
        specs.push_back(*s);
      }
      Json reps = Json::array();
      bool ok = true;
      for (const auto& s : specs) {
        const CounterexampleReport rep = run_counterexample(s, false, oopts);
        ok = ok && rep.passed();
        reps.push_back(rep.to_json());
        std::cerr << (rep.passed() ? "ok   " : "FAIL ") << s.name << "\n";
      }
      emit(Json{{"passed", ok}, {"reports", reps}}, report);
      return ok ? kOk : kNegative;
    }

    if (fuzzc->parsed()) {
      params.algorithms.clear();
      for (const auto& a : split_list(algos)) params.algorithms.push_back(parse_algorithm(std::stoi(a)));
      params.threads = threads;
      const auto ms = fuzz(seed, iters, params);
      Json list = Json::array();
      for (const auto& m : ms) list.push_back(m.to_json());
      Json algs = Json::array();
      for (Algorithm a : params.algorithms) algs.push_back(to_string(a));
      Json j{{"seed", seed},
             {"iterations", iters},
             {"params",
              {{"min_n0", params.min_n0},
               {"max_n0", params.max_n0},
               {"max_m0", params.max_m0},
               {"orderings_per_formula", params.orderings_per_formula},
               {"duplicate_literal_probability", params.duplicate_literal_probability},
               {"distinct_vars_only", params.distinct_vars_only},
               {"algorithms", algs}}},
             {"mismatch_count", ms.size()},
             {"mismatches", list}};
      if (shrink_count > 0) {
        Json shrunk = Json::array();
        for (std::size_t i = 0; i < ms.size() && i < shrink_count; ++i) shrunk.push_back(shrink(ms[i]).to_json());
        j["shrunk"] = shrunk;
      }
      emit(j, report);
      return kOk;
    }

    if (audit->parsed()) {
      PipelineOptions o;
      o.algorithm = parse_algorithm(algorithm);
      o.limits = limits;
      if (random_count > 0) {
        FuzzParams p;
        p.max_n0 = 8;
        p.max_m0 = 8;
        std::size_t failures = 0;
        Json worst = Json::array();
        for (std::size_t i = 0; i < random_count; ++i) {
          const CnfFormula f = random_formula(seed + i, p);
          o.ordering = ordering.empty() ? OrderingPolicy::frequency() : OrderingPolicy::parse(ordering);
          const AuditReport r = audit_bounds(f, o);
          if (!r.passed()) {
            ++failures;
            if (worst.size() < 5) worst.push_back({{"formula", render_cnf(f)}, {"report", r.to_json()}});
          }
        }
        emit(Json{{"formulas", random_count}, {"failures", failures}, {"examples", worst}}, report);
        return failures == 0 ? kOk : kNegative;
      }
      if (input.empty()) throw Error(ErrorKind::InvalidArgument, "audit needs an input or --random N");
      const Input in = load_input(input);
      o.ordering = pick_policy(ordering, in);
      const AuditReport r = audit_bounds(in.formula, o);
      emit(r.to_json(), report);
      return r.passed() ? kOk : kNegative;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
