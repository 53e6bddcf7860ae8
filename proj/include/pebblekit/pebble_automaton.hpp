// Weak k-pebble automata over data words and the unbounded top-view variant.

#ifndef PEBBLEKIT_PEBBLE_AUTOMATON_HPP_
#define PEBBLEKIT_PEBBLE_AUTOMATON_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pebblekit/data_word.hpp"
#include "pebblekit/fixpoint.hpp"

namespace pebblekit {

/// Symbols are label indices; the two markers get negative codes.
inline constexpr int kLeftEnd = -1;
inline constexpr int kRightEnd = -2;

/// Largest pebble count the evaluators support.
inline constexpr int kMaxPebbles = static_cast<int>(ConfigKey::kMaxSlots);

enum class Action { kStay, kRight, kPlace, kLift };

/// How the comparison set V is computed: against every higher pebble, or only
/// against pebble i+1.
enum class View { kGeneral, kTop };

enum class Mode { kAlternating, kNondeterministic, kDeterministic };

const char* action_name(Action a);
std::optional<Action> parse_action(const std::string& name);
const char* mode_name(Mode m);

/// Bit j of a comparison mask stands for pebble j.
using PebbleMask = std::uint32_t;

struct PATransition {
  int pebble = 1;
  int symbol = kLeftEnd;
  PebbleMask compare = 0;
  int from = 0;
  int to = 0;
  Action action = Action::kStay;

  friend bool operator==(const PATransition&, const PATransition&) = default;
};

struct WeakPA {
  Alphabet alphabet;
  int k = 1;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> final_states;
  std::vector<bool> universal;
  std::vector<PATransition> transitions;
  View view = View::kGeneral;

  int state_index(const std::string& name) const;  // -1 if absent
  int add_state(const std::string& name, bool is_final = false, bool is_universal = false);
  /// Returns the existing index or creates the state.
  int ensure_state(const std::string& name);
  int symbol_code(const std::string& name) const;  // throws ModelError
  std::string symbol_name(int code) const;
  /// Convenience for hand-built automata; states are created on demand.
  void add(int pebble, const std::string& symbol, std::vector<int> compare,
           const std::string& from, const std::string& to, Action action);
  std::size_t size() const { return states.size(); }
};

std::string describe(const WeakPA& a, const PATransition& t);
PebbleMask mask_of(const std::vector<int>& pebbles);
std::vector<int> pebbles_of(PebbleMask mask);

struct Classification {
  Mode mode = Mode::kAlternating;
  bool top_view = false;
};

/// Throws ModelError naming the offending transition when a structural
/// invariant is violated.
Classification validate(const WeakPA& a);

/// [i, q, θ]; placement[j-1] is θ(j) for j = head..k, other entries unused.
struct PebbleConfig {
  int head = 1;
  int state = 0;
  std::vector<std::size_t> placement;

  friend bool operator==(const PebbleConfig&, const PebbleConfig&) = default;
};

PebbleConfig initial_config(const WeakPA& a);

/// Symbol code at position p of ◁w▷.
int symbol_at(const DataWord& w, std::size_t p);

/// The comparison set V of the head pebble in configuration c.
PebbleMask comparison_set(const WeakPA& a, const DataWord& w, const PebbleConfig& c);

std::vector<PATransition> applicable(const WeakPA& a, const DataWord& w, const PebbleConfig& c);

PebbleConfig step(const WeakPA& a, const DataWord& w, const PebbleConfig& c,
                  const PATransition& t);

/// Acceptance evaluator reusable across words.
class PAEvaluator {
 public:
  explicit PAEvaluator(const WeakPA& a);
  bool accepts(const DataWord& w) const;
  /// Budgeted variant; the budget counts expanded configurations.
  FixpointResult run(const DataWord& w, std::size_t budget) const;

 private:
  WeakPA a_;
  std::vector<std::vector<std::uint32_t>> by_key_;  // (state, pebble, symbol) -> transitions
  std::size_t key(int state, int pebble, int symbol) const;
};

bool accepts(const WeakPA& a, const DataWord& w);

struct UTransition {
  int symbol = kLeftEnd;
  int chi = 0;
  int from = 0;
  int to = 0;
  Action action = Action::kRight;

  friend bool operator==(const UTransition&, const UTransition&) = default;
};

/// Pebbles are numbered upward from 1; the head is the highest placed pebble
/// and χ compares it with the pebble directly below.
struct UnboundedTopViewPA {
  Alphabet alphabet;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<bool> final_states;
  std::vector<UTransition> transitions;

  int state_index(const std::string& name) const;
  int ensure_state(const std::string& name);
  void add(const std::string& symbol, int chi, const std::string& from, const std::string& to,
           Action action);
};

void validate(const UnboundedTopViewPA& a);

bool accepts_unbounded(const UnboundedTopViewPA& a, const DataWord& w);

}  // namespace pebblekit

#endif  // PEBBLEKIT_PEBBLE_AUTOMATON_HPP_
