#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tecss/graph.hpp"
#include "tecss/rational.hpp"
#include "tecss/solver.hpp"

namespace tecss {

// ---- exit codes of the command-line tool ----
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitParse = 3,
  kExitInternal = 4,
};

// ---- instance files ----
// Plain text: "c ..." comment lines, one header "p <n> <m>", then m lines
// "e <u> <v>" with 0-based vertices. Loops and repeated pairs are rejected.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  std::string name;
  Graph graph;
  std::vector<std::string> comments;
};

Instance parse_instance(std::istream& in, const std::string& name = "");
Instance read_instance(const std::string& path);
std::string format_instance(const Graph& g, const std::vector<std::string>& comments = {});
// FNV-1a over the formatted edge list, as 16 hex digits.
std::string instance_hash(const Graph& g);
nlohmann::json instance_json(const Instance& inst);

// Solution files: whitespace-separated edge ids (the e-line index).
EdgeSet parse_solution(std::istream& in);

// ---- random source ----
// Bounded draws by rejection on a 64-bit Mersenne twister, so sequences do
// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int uniform(int lo, int hi);  // inclusive
  bool chance(double p);
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[uniform(0, i)]);
  }

 private:
  std::mt19937_64 eng_;
};

// ---- generators ----
struct GeneratorSpec {
  // gnp_2ec, hamiltonian_plus_chords, cycle_of_cliques, dumbbell,
  // structured_stress
  std::string family = "gnp_2ec";
  int n = 20;
  // gnp_2ec: edge probability; hamiltonian_plus_chords and dumbbell:
  // chords per vertex; cycle_of_cliques: extra edge probability between
  // neighbouring cliques; structured_stress: chords per core vertex.
  double density = 0.3;
  std::uint64_t seed = 1;
};

// Simple 2EC graph; throws std::invalid_argument for unknown families or
// sizes the family cannot produce.
Graph generate(const GeneratorSpec& spec);

Graph gnp_2ec(int n, double p, Rng& rng);
Graph hamiltonian_plus_chords(int n, int chords, Rng& rng);
Graph cycle_of_cliques(int n, double extra, Rng& rng);
Graph dumbbell(int n, int chords, Rng& rng);
Graph structured_stress(int n, double chords, Rng& rng);

// ---- baseline ----
// DFS tree plus, for every non-root vertex, the back edge from its subtree
// reaching highest towards the root. Throws InfeasibleError if g is not 2EC.
EdgeSet baseline_dfs2(const Graph& g);

// ---- verification ----
enum class Verdict { ok, invalid_edge, spanning_fail, not_2ec };
std::string to_string(Verdict v);  // OK, INVALID_EDGE, SPANNING_FAIL, NOT_2EC

struct Verification {
  Verdict verdict = Verdict::ok;
  std::optional<EdgeId> witness_edge;     // a bridge, or an unknown id
  std::optional<Vertex> witness_vertex;   // an uncovered vertex
};
Verification verify(const Graph& g, const EdgeSet& solution);

// ---- reports ----
struct ReportOptions {
  bool include_trace = false;
  bool include_timing = false;
  double wall_seconds = 0;
};

// Digest of the reduction steps and every recorded move, for determinism
// checks without shipping the whole trace.
std::string trace_digest(const SolveResult& r);

nlohmann::json solve_report(const Instance& inst, const SolveResult& r, const SolveOptions& opt, std::uint64_t seed,
                            const std::optional<int>& opt_value, const ReportOptions& ro = {});
nlohmann::json move_json(const MoveRecord& m);
nlohmann::json monitors_json(const Monitors& m);

}  // namespace tecss
