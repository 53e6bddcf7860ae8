// Concrete languages, formulas and reductions, each with a direct oracle.

#ifndef PEBBLEKIT_GALLERY_HPP_
#define PEBBLEKIT_GALLERY_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pebblekit/data_word.hpp"
#include "pebblekit/ltl.hpp"
#include "pebblekit/pebble_automaton.hpp"

namespace pebblekit {

// Named languages: L_sim, L_sim_nondet, L_inc, L_inc_plus1, L_inc_minus1,
// R_plus_m (parameter m >= 1) and R_plus. The first five are over {a,b},
// the R languages over {s}.
std::vector<std::string> named_languages();
const Alphabet& named_alphabet(const std::string& name);

/// Ground-truth membership. Throws ModelError for unknown names, a missing
/// or invalid m, or a word over a different alphabet.
bool recognize_named(const std::string& name, int m, const DataWord& w);

/// Hand-built weak PA for the name; R_plus_m compiles ψ_m.
WeakPA build_named_pa(const std::string& name, int m = 0);

/// Deterministic weak 2-PA for L_sim over any alphabet.
WeakPA build_lsim_pa(const Alphabet& alphabet);

/// Membership in R⁺_m over a one-letter alphabet (labels are ignored).
bool in_r_plus_m(const std::vector<DataValue>& data, int m);

/// Unbounded top-view PA accepting words whose adjacent data differ.
UnboundedTopViewPA build_adjacent_differ(const Alphabet& alphabet = {"s"});

FormulaPtr build_phi(int k);
FormulaPtr build_psi(int k);

// Post correspondence instances over {a,b}.
struct PCPInstance {
  std::vector<std::pair<std::string, std::string>> pairs;
};

void validate_pcp(const PCPInstance& p);
/// {"1",...,"n","a","b","$"}.
Alphabet pcp_alphabet(const PCPInstance& p);
bool is_pcp_solution(const PCPInstance& p, const std::vector<int>& indices);
/// The two-sided encoding of the index sequence, canonicalized.
DataWord encode_pcp_solution(const PCPInstance& p, const std::vector<int>& indices);
/// Alternating weak 3-PA accepting exactly the well-formed encodings of
/// solutions.
WeakPA pcp_to_pa(const PCPInstance& p);

// Incrementing counter automata.
enum class CounterOp { kInc, kDec, kIfz };
const char* counter_op_name(CounterOp op);

struct IcaTransition {
  int from = 0;
  std::optional<int> symbol;  // nullopt is an ε-move
  CounterOp op = CounterOp::kInc;
  int counter = 1;            // 1-based
  int to = 0;
};

struct IncrementingCA {
  Alphabet alphabet;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> final_states;
  int counters = 1;
  std::vector<IcaTransition> transitions;

  int ensure_state(const std::string& name);
  void add(const std::string& from, std::optional<std::string> symbol, CounterOp op, int counter,
           const std::string& to);
};

void validate_ica(const IncrementingCA& c);

struct IcaOptions {
  int slack = 0;               // total erroneous increase before each step
  std::optional<int> counter_cap;  // default derived from the input size
};

/// Counters may grow spuriously by a total of at most `slack` before every
/// operation. Search is exhaustive below the counter cap.
bool ica_run(const IncrementingCA& c, const std::vector<std::string>& word, const IcaOptions& opt);

/// (q,1)(σ,2) followed by v(j) positions labelled c_j with fresh data.
DataWord encode_ca_config(const std::string& state, const std::string& symbol,
                          const std::vector<int>& valuation, int counters);

// Graph coloring reductions.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based
};

void validate_graph(const Graph& g);

struct LabellingReduction {
  WeakPA pa;
  std::vector<DataValue> data;
};

LabellingReduction coloring_labelling_reduction(const Graph& g);

struct ConstrainedReduction {
  WeakPA pa;
  std::vector<std::string> labels;
  bool trivially_empty = false;
};

ConstrainedReduction coloring_constrained_reduction(const Graph& g, int n_red, int n_green, int n_blue);

}  // namespace pebblekit

#endif  // PEBBLEKIT_GALLERY_HPP_
