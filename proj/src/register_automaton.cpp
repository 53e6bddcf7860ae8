#include "pebblekit/register_automaton.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace pebblekit {

const char* ra_kind_name(RAKind k) {
  switch (k) {
    case RAKind::kMarker: return "marker";
    case RAKind::kRead: return "read";
    case RAKind::kStore: return "store";
    case RAKind::kBranch: return "branch";
    case RAKind::kMove: return "move";
  }
  return "?";
}

const char* ra_mode_name(RAMode m) { return m == RAMode::kAlternating ? "alternating" : "nondeterministic"; }

int AlternatingRA::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int AlternatingRA::ensure_state(const std::string& name) {
  int idx = state_index(name);
  if (idx >= 0) return idx;
  states.push_back(name);
  final_states.push_back(false);
  return static_cast<int>(states.size()) - 1;
}

namespace {

RegisterMask register_mask(const std::vector<int>& regs) {
  RegisterMask m = 0;
  for (int r : regs) {
    if (r < 1 || r >= 32) throw ModelError("register index " + std::to_string(r) + " out of range");
    m |= RegisterMask{1} << r;
  }
  return m;
}

}  // namespace

void AlternatingRA::add_marker(const std::string& from, const std::string& marker, const std::string& to) {
  RATransition t;
  t.kind = RAKind::kMarker;
  if (marker == kLeftMarkerName) {
    t.symbol = kLeftEnd;
  } else if (marker == kRightMarkerName) {
    t.symbol = kRightEnd;
  } else {
    throw ModelError("'" + marker + "' is not an end marker");
  }
  t.from = ensure_state(from);
  t.to = ensure_state(to);
  transitions.push_back(t);
}

void AlternatingRA::add_read(const std::string& from, const std::string& label, std::vector<int> v,
                             const std::string& to) {
  RATransition t;
  t.kind = RAKind::kRead;
  t.symbol = label_index(alphabet, label);
  if (t.symbol < 0) throw ModelError("label '" + label + "' is not in the alphabet");
  t.registers = register_mask(v);
  t.from = ensure_state(from);
  t.to = ensure_state(to);
  transitions.push_back(t);
}

void AlternatingRA::add_store(const std::string& from, std::vector<int> registers, const std::string& to) {
  RATransition t;
  t.kind = RAKind::kStore;
  t.registers = register_mask(registers);
  t.from = ensure_state(from);
  t.to = ensure_state(to);
  transitions.push_back(t);
}

void AlternatingRA::add_branch(const std::string& from, Junction j, const std::vector<std::string>& targets) {
  RATransition t;
  t.kind = RAKind::kBranch;
  t.junction = j;
  t.from = ensure_state(from);
  for (const auto& s : targets) t.targets.push_back(ensure_state(s));
  transitions.push_back(t);
}

void AlternatingRA::add_move(const std::string& from, const std::string& to, Direction d) {
  RATransition t;
  t.kind = RAKind::kMove;
  t.direction = d;
  t.from = ensure_state(from);
  t.to = ensure_state(to);
  transitions.push_back(t);
}

RAMode ra_validate(const AlternatingRA& a) {
  check_alphabet(a.alphabet);
  if (a.k < 1) throw ModelError("register count must be at least 1");
  if (a.k > kMaxRegisters)
    throw ModelError("register count " + std::to_string(a.k) + " exceeds the supported maximum " +
                     std::to_string(kMaxRegisters));
  const std::size_t n = a.states.size();
  if (n == 0) throw ModelError("automaton has no states");
  if (a.final_states.size() != n) throw ModelError("final flags do not match the state list");
  if (std::set<std::string>(a.states.begin(), a.states.end()).size() != n)
    throw ModelError("duplicate state names");
  if (a.initial < 0 || static_cast<std::size_t>(a.initial) >= n) throw ModelError("initial state out of range");
  if (a.u0.size() != static_cast<std::size_t>(a.k)) throw ModelError("u0 must list one entry per register");
  RegisterMask allowed = 0;
  for (int r = 1; r <= a.k; ++r) allowed |= RegisterMask{1} << r;
  bool alternating = false;
  auto ok_state = [n](int s) { return s >= 0 && static_cast<std::size_t>(s) < n; };
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    auto fail = [&](const std::string& why) {
      throw ModelError(std::string(ra_kind_name(t.kind)) + " transition #" + std::to_string(i) + ": " + why);
    };
    if (!ok_state(t.from)) fail("unknown source state");
    switch (t.kind) {
      case RAKind::kMarker:
        if (t.symbol != kLeftEnd && t.symbol != kRightEnd) fail("marker reads must use < or >");
        if (!ok_state(t.to)) fail("unknown target state");
        break;
      case RAKind::kRead:
        if (t.symbol < 0 || static_cast<std::size_t>(t.symbol) >= a.alphabet.size()) fail("unknown label");
        if (t.registers & ~allowed) fail("register set outside 1..k");
        if (!ok_state(t.to)) fail("unknown target state");
        break;
      case RAKind::kStore:
        if (t.registers & ~allowed) fail("register set outside 1..k");
        if (!ok_state(t.to)) fail("unknown target state");
        break;
      case RAKind::kBranch:
        if (t.targets.empty()) fail("branch without targets");
        for (int s : t.targets)
          if (!ok_state(s)) fail("unknown branch target");
        if (t.junction == Junction::kAnd) alternating = true;
        break;
      case RAKind::kMove:
        if (t.direction == Direction::kLeft) fail("two-way moves are not supported");
        if (!ok_state(t.to)) fail("unknown target state");
        break;
    }
  }
  return alternating ? RAMode::kAlternating : RAMode::kNondeterministic;
}

RAEvaluator::RAEvaluator(const AlternatingRA& a) : a_(a), by_state_(a.states.size()) {
  ra_validate(a);
  for (std::size_t t = 0; t < a.transitions.size(); ++t)
    by_state_[static_cast<std::size_t>(a.transitions[t].from)].push_back(static_cast<std::uint32_t>(t));
}

FixpointResult RAEvaluator::run(const DataWord& w, std::size_t budget) const {
  if (w.size() + 1 > 0xFFFF) throw ModelError("word too long for the evaluator");
  // Register values are stored as 1-based ids into `values`; 0 is empty.
  std::vector<DataValue> values;
  std::unordered_map<DataValue, std::uint16_t> ids;
  auto id_of = [&](DataValue d) {
    auto [it, inserted] = ids.try_emplace(d, static_cast<std::uint16_t>(values.size() + 1));
    if (inserted) values.push_back(d);
    return it->second;
  };
  const std::size_t n = w.size();
  std::vector<std::uint16_t> letter_id(n);
  for (std::size_t p = 0; p < n; ++p) letter_id[p] = id_of(w.letters()[p].datum);
  ConfigKey root;
  root.state = static_cast<std::uint32_t>(a_.initial);
  root.head = 0;
  for (int r = 1; r <= a_.k; ++r) {
    const auto& v = a_.u0[static_cast<std::size_t>(r - 1)];
    root.slots[static_cast<std::size_t>(r - 1)] = v ? id_of(*v) : 0;
  }
  const int k = a_.k;
  auto expand = [&](const ConfigKey& c, Expansion<ConfigKey>& out) {
    const auto q = static_cast<std::size_t>(c.state);
    if (a_.final_states[q]) {
      out.accept();
      return;
    }
    const std::size_t j = c.head;
    const bool marker = j == 0 || j == n + 1;
    const int sym = j == 0 ? kLeftEnd : j == n + 1 ? kRightEnd : w.letters()[j - 1].label;
    const std::uint16_t here = marker ? 0 : letter_id[j - 1];
    for (auto ti : by_state_[q]) {
      const auto& t = a_.transitions[ti];
      ConfigKey next = c;
      next.state = static_cast<std::uint32_t>(t.to);
      switch (t.kind) {
        case RAKind::kMarker:
          if (t.symbol == sym) out.add_alternative(next);
          break;
        case RAKind::kRead: {
          if (marker || t.symbol != sym) break;
          RegisterMask v = 0;
          for (int r = 1; r <= k; ++r)
            if (c.slots[static_cast<std::size_t>(r - 1)] == here) v |= RegisterMask{1} << r;
          if (v == t.registers) out.add_alternative(next);
          break;
        }
        case RAKind::kStore:
          for (int r = 1; r <= k; ++r)
            if (t.registers & (RegisterMask{1} << r)) next.slots[static_cast<std::size_t>(r - 1)] = here;
          out.add_alternative(next);
          break;
        case RAKind::kBranch:
          if (t.junction == Junction::kAnd) {
            out.begin_alternative();
            for (int s : t.targets) {
              next.state = static_cast<std::uint32_t>(s);
              out.add(next);
            }
          } else {
            for (int s : t.targets) {
              next.state = static_cast<std::uint32_t>(s);
              out.add_alternative(next);
            }
          }
          break;
        case RAKind::kMove:
          if (j <= n) {
            next.head = static_cast<std::uint16_t>(j + 1);
            out.add_alternative(next);
          }
          break;
      }
    }
  };
  return solve_least_fixpoint<ConfigKey, ConfigKeyHash>(root, expand, budget);
}

bool RAEvaluator::accepts(const DataWord& w) const {
  return run(w, std::numeric_limits<std::size_t>::max()).status == FixpointStatus::kAccepted;
}

bool ra_accepts(const AlternatingRA& a, const DataWord& w) { return RAEvaluator(a).accepts(w); }

}  // namespace pebblekit
