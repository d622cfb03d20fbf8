#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tecss/harness.hpp"

using namespace tecss;
namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string alpha = "5/4";
  std::uint64_t seed = 1;
  bool trace = false;
  int oracle_vertex_cap = 22;
  double oracle_time_cap = 120;
  long long max_guesses = 0;
  bool first_feasible = false;
  std::string report;
  bool timing = false;
  bool with_oracle = false;
  std::string algorithm = "tecss";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolveOptions solve_options(const Flags& f) {
  SolveOptions o;
  try {
    o.alpha = parse_rational(f.alpha);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.alpha <= Rational(1)) throw UsageError("--alpha must exceed 1");
  o.max_guesses = f.max_guesses;
  o.first_feasible = f.first_feasible;
  o.check_structured = true;
  return o;
}

OracleBudget oracle_budget(const Flags& f) {
  OracleBudget b;
  b.vertex_cap = f.oracle_vertex_cap;
  b.time_cap_seconds = f.oracle_time_cap;
  return b;
}

// Exact optimum, or nullopt when the instance is over the caps.
std::optional<EdgeSet> run_oracle(const Graph& g, const Flags& f) {
  try {
    return min_2ecss(g, oracle_budget(f));
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

void emit(const nlohmann::json& j, const Flags& f) {
  std::string text = j.dump(2) + "\n";
  if (f.report.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.report);
  if (!out) throw UsageError("cannot write " + f.report);
  out << text;
}

nlohmann::json plain_report(const Instance& inst, const std::string& algorithm, const EdgeSet& edges,
                            std::uint64_t seed, const std::optional<int>& opt) {
  nlohmann::json j;
  j["instance"] = {{"name", inst.name},
                   {"hash", instance_hash(inst.graph)},
                   {"n", inst.graph.num_vertices()},
                   {"m", inst.graph.num_edges()}};
  j["algorithm"] = algorithm;
  j["seed"] = seed;
  j["solution"] = edges;
  j["size"] = edges.size();
  j["feasible"] = verify(inst.graph, edges).verdict == Verdict::ok;
  if (opt) {
    j["opt"] = *opt;
    j["ratio"] = to_string(Rational(static_cast<long long>(edges.size()), *opt));
  }
  return j;
}

void dump_counterexamples(const Monitors& m) {
  for (const std::string& c : m.counterexamples) std::cerr << "counterexample:\n" << c << "\n";
}

int cmd_gen(const GeneratorSpec& spec, const std::string& out, bool as_json) {
  Graph g;
  try {
    g = generate(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream family;
  family << "family " << spec.family << " n " << spec.n << " density " << spec.density << " seed " << spec.seed;
  Instance inst{spec.family + "-" + std::to_string(spec.n) + "-" + std::to_string(spec.seed), g, {family.str()}};
  std::string text = as_json ? instance_json(inst).dump(2) + "\n" : format_instance(g, inst.comments);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
  }
  return kExitOk;
}

int cmd_solve(const std::string& path, const Flags& f) {
  Instance inst = read_instance(path);
  auto t0 = std::chrono::steady_clock::now();
  std::optional<int> opt;
  if (f.with_oracle)
    if (auto o = run_oracle(inst.graph, f)) opt = static_cast<int>(o->size());
  if (f.algorithm == "dfs2approx") {
    nlohmann::json j = plain_report(inst, "dfs2approx", baseline_dfs2(inst.graph), f.seed, opt);
    if (f.timing) j["wall_seconds"] = seconds_since(t0);
    emit(j, f);
    return kExitOk;
  }
  if (f.algorithm != "tecss") throw UsageError("unknown algorithm '" + f.algorithm + "'");
  SolveOptions so = solve_options(f);
  SolveResult r = solve(inst.graph, so);
  ReportOptions ro;
  ro.include_trace = f.trace;
  ro.include_timing = f.timing;
  ro.wall_seconds = seconds_since(t0);
  emit(solve_report(inst, r, so, f.seed, opt, ro), f);
  if (!r.monitors.clean()) dump_counterexamples(r.monitors);
  if (verify(inst.graph, r.edges).verdict != Verdict::ok) return kExitInternal;
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& solution_path, const Flags& f) {
  Instance inst = read_instance(path);
  std::ifstream in(solution_path);
  if (!in) throw ParseError("cannot open " + solution_path);
  EdgeSet sol = parse_solution(in);
  Verification v = verify(inst.graph, sol);
  nlohmann::json j;
  j["instance"] = {{"name", inst.name}, {"hash", instance_hash(inst.graph)}};
  j["verdict"] = to_string(v.verdict);
  if (v.witness_edge) j["witness_edge"] = *v.witness_edge;
  if (v.witness_vertex) j["witness_vertex"] = *v.witness_vertex;
  j["size"] = sol.size();
  if (f.with_oracle && v.verdict == Verdict::ok)
    if (auto o = run_oracle(inst.graph, f)) {
      j["opt"] = o->size();
      j["ratio"] = to_string(Rational(static_cast<long long>(sol.size()), static_cast<long long>(o->size())));
    }
  emit(j, f);
  return v.verdict == Verdict::ok ? kExitOk : kExitInfeasible;
}

int cmd_oracle(const std::string& path, const Flags& f) {
  Instance inst = read_instance(path);
  if (!is_2ec(inst.graph)) throw InfeasibleError("graph is not 2-edge-connected");
  auto t0 = std::chrono::steady_clock::now();
  auto o = run_oracle(inst.graph, f);
  nlohmann::json j;
  if (o) {
    j = plain_report(inst, "oracle", *o, f.seed, static_cast<int>(o->size()));
  } else {
    j = plain_report(inst, "oracle", {}, f.seed, std::nullopt);
    j.erase("solution");
    j.erase("size");
    j.erase("feasible");
    j["timeout"] = true;
  }
  if (f.timing) j["wall_seconds"] = seconds_since(t0);
  emit(j, f);
  return kExitOk;
}

struct BenchRow {
  std::string name;
  int n = 0, m = 0;
  int size = -1, baseline = -1;
  std::optional<int> opt;
  double seconds = 0;
  std::string error;
};

std::vector<std::string> corpus_files(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const std::string& p : inputs) {
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path().string());
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_bench(const std::vector<std::string>& inputs, int jobs, const Flags& f) {
  std::vector<std::string> files = corpus_files(inputs);
  std::vector<BenchRow> rows(files.size());
  SolveOptions so = solve_options(f);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < files.size(); i = next++) {
      BenchRow& row = rows[i];
      row.name = files[i];
      try {
        Instance inst = read_instance(files[i]);
        row.n = inst.graph.num_vertices();
        row.m = inst.graph.num_edges();
        auto t0 = std::chrono::steady_clock::now();
        SolveResult r = solve(inst.graph, so);
        row.seconds = seconds_since(t0);
        row.size = static_cast<int>(r.edges.size());
        row.baseline = static_cast<int>(baseline_dfs2(inst.graph).size());
        if (f.with_oracle)
          if (auto o = run_oracle(inst.graph, f)) row.opt = static_cast<int>(o->size());
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream table;
  table << "instance\tn\tm\ttecss\tdfs2approx\topt\ttecss_ratio\tdfs2approx_ratio";
  if (f.timing) table << "\tseconds";
  table << "\n";
  nlohmann::json agg = nlohmann::json::array();
  bool failed = false;
  for (const BenchRow& row : rows) {
    nlohmann::json j{{"instance", row.name}, {"n", row.n}, {"m", row.m}};
    if (!row.error.empty()) {
      failed = true;
      table << row.name << "\terror: " << row.error << "\n";
      j["error"] = row.error;
      agg.push_back(j);
      continue;
    }
    std::string r1 = "-", r2 = "-", o = "-";
    if (row.opt) {
      o = std::to_string(*row.opt);
      r1 = to_string(Rational(row.size, *row.opt));
      r2 = to_string(Rational(row.baseline, *row.opt));
      j["opt"] = *row.opt;
      j["tecss_ratio"] = r1;
      j["dfs2approx_ratio"] = r2;
    }
    table << row.name << '\t' << row.n << '\t' << row.m << '\t' << row.size << '\t' << row.baseline << '\t' << o << '\t'
          << r1 << '\t' << r2;
    if (f.timing) table << '\t' << row.seconds;
    table << "\n";
    j["tecss"] = row.size;
    j["dfs2approx"] = row.baseline;
    if (f.timing) j["seconds"] = row.seconds;
    agg.push_back(j);
  }
  std::cout << table.str();
  if (!f.report.empty()) {
    std::ofstream out(f.report);
    if (!out) throw UsageError("cannot write " + f.report);
    out << nlohmann::json{{"seed", f.seed}, {"alpha", f.alpha}, {"rows", agg}}.dump(2) << "\n";
  }
  return failed ? kExitInternal : kExitOk;
}

int cmd_compare(const std::string& path, const Flags& f) {
  Instance inst = read_instance(path);
  SolveOptions so = solve_options(f);
  SolveResult r = solve(inst.graph, so);
  EdgeSet base = baseline_dfs2(inst.graph);
  std::optional<EdgeSet> o = run_oracle(inst.graph, f);
  std::optional<int> opt;
  if (o) opt = static_cast<int>(o->size());
  nlohmann::json j;
  j["instance"] = {{"name", inst.name}, {"hash", instance_hash(inst.graph)}};
  j["tecss"] = solve_report(inst, r, so, f.seed, opt, {});
  j["dfs2approx"] = plain_report(inst, "dfs2approx", base, f.seed, opt);
  if (o) j["oracle"] = plain_report(inst, "oracle", *o, f.seed, opt);
  emit(j, f);
  return kExitOk;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--alpha", f.alpha, "approximation target of the reduction, e.g. 5/4");
  cmd->add_option("--seed", f.seed, "seed recorded in the report");
  cmd->add_option("--oracle-vertex-cap", f.oracle_vertex_cap, "largest graph the exact oracle attempts");
  cmd->add_option("--oracle-time-cap", f.oracle_time_cap, "oracle wall-clock cap in seconds (0: none)");
  cmd->add_option("--max-guesses", f.max_guesses, "stop after this many guesses (uncertified)");
  cmd->add_flag("--first-feasible", f.first_feasible, "stop at the first completed guess (uncertified)");
  cmd->add_option("--report", f.report, "write the JSON report here instead of stdout");
  cmd->add_flag("--timing", f.timing, "include wall-clock seconds (breaks byte-identical reports)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-edge-connected spanning subgraph solver"};
  app.require_subcommand(1);
  Flags f;

  GeneratorSpec spec;
  std::string gen_out;
  bool gen_json = false;
  auto* gen = app.add_subcommand("gen", "generate a random 2EC instance");
  gen->add_option("--family", spec.family, "gnp_2ec, hamiltonian_plus_chords, cycle_of_cliques, dumbbell, structured_stress");
  gen->add_option("--n", spec.n, "vertex count");
  gen->add_option("--density", spec.density, "family-specific density parameter");
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("-o,--output", gen_out, "output path (default stdout)");
  gen->add_flag("--json", gen_json, "emit the JSON mirror instead of the edge list");

  std::string instance, solution;
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance and print a run report");
  solve_cmd->add_option("instance", instance, "instance file")->required();
  solve_cmd->add_flag("--trace", f.trace, "include every move in the report");
  solve_cmd->add_flag("--with-oracle", f.with_oracle, "also run the exact oracle and report the ratio");
  solve_cmd->add_option("--algorithm", f.algorithm, "tecss or dfs2approx");
  add_common(solve_cmd, f);

  auto* verify_cmd = app.add_subcommand("verify", "check a solution file against an instance");
  verify_cmd->add_option("instance", instance, "instance file")->required();
  verify_cmd->add_option("solution", solution, "solution file (edge ids)")->required();
  verify_cmd->add_flag("--with-oracle", f.with_oracle, "compare against the exact optimum");
  add_common(verify_cmd, f);

  auto* oracle_cmd = app.add_subcommand("oracle", "exact minimum 2ECSS of a small instance");
  oracle_cmd->add_option("instance", instance, "instance file")->required();
  add_common(oracle_cmd, f);

  std::vector<std::string> corpus;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* bench = app.add_subcommand("bench", "solve a corpus and print a table");
  bench->add_option("corpus", corpus, "instance files or directories of .txt instances");
  bench->add_option("-j,--jobs", jobs, "worker threads");
  bench->add_flag("--with-oracle", f.with_oracle, "add the exact optimum where within the caps");
  add_common(bench, f);

  auto* compare = app.add_subcommand("compare", "solver, baseline and oracle side by side");
  compare->add_option("instance", instance, "instance file")->required();
  add_common(compare, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(spec, gen_out, gen_json);
    if (*solve_cmd) return cmd_solve(instance, f);
    if (*verify_cmd) return cmd_verify(instance, solution, f);
    if (*oracle_cmd) return cmd_oracle(instance, f);
    if (*bench) return cmd_bench(corpus, jobs, f);
    if (*compare) return cmd_compare(instance, f);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
