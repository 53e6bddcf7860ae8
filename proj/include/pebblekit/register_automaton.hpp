// One-way alternating register automata.

#ifndef PEBBLEKIT_REGISTER_AUTOMATON_HPP_
#define PEBBLEKIT_REGISTER_AUTOMATON_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pebblekit/data_word.hpp"
#include "pebblekit/fixpoint.hpp"
#include "pebblekit/pebble_automaton.hpp"

namespace pebblekit {

inline constexpr int kMaxRegisters = static_cast<int>(ConfigKey::kMaxSlots);

enum class RAKind { kMarker, kRead, kStore, kBranch, kMove };
enum class Junction { kAnd, kOr };
enum class Direction { kRight, kLeft };

const char* ra_kind_name(RAKind k);

/// Bit j stands for register j (1-based).
using RegisterMask = std::uint32_t;

struct RATransition {
  RAKind kind = RAKind::kMove;
  int from = 0;
  int to = 0;                // marker, read, store, move
  int symbol = kLeftEnd;     // marker (◁/▷ code) or read (label index)
  RegisterMask registers = 0;  // V for read, I for store
  Junction junction = Junction::kOr;
  std::vector<int> targets;  // branch
  Direction direction = Direction::kRight;

  friend bool operator==(const RATransition&, const RATransition&) = default;
};

struct AlternatingRA {
  Alphabet alphabet;
  int k = 1;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<std::optional<DataValue>> u0;  // empty slot is std::nullopt
  std::vector<bool> final_states;
  std::vector<RATransition> transitions;

  int state_index(const std::string& name) const;
  int ensure_state(const std::string& name);

  void add_marker(const std::string& from, const std::string& marker, const std::string& to);
  void add_read(const std::string& from, const std::string& label, std::vector<int> v, const std::string& to);
  void add_store(const std::string& from, std::vector<int> registers, const std::string& to);
  void add_branch(const std::string& from, Junction j, const std::vector<std::string>& targets);
  void add_move(const std::string& from, const std::string& to, Direction d = Direction::kRight);
};

enum class RAMode { kAlternating, kNondeterministic };
const char* ra_mode_name(RAMode m);

/// Throws ModelError on structural problems, including two-way moves.
RAMode ra_validate(const AlternatingRA& a);

class RAEvaluator {
 public:
  explicit RAEvaluator(const AlternatingRA& a);
  bool accepts(const DataWord& w) const;
  FixpointResult run(const DataWord& w, std::size_t budget) const;

 private:
  AlternatingRA a_;
  std::vector<std::vector<std::uint32_t>> by_state_;
};

bool ra_accepts(const AlternatingRA& a, const DataWord& w);

}  // namespace pebblekit

#endif  // PEBBLEKIT_REGISTER_AUTOMATON_HPP_
