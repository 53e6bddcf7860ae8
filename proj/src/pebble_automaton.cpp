#include "pebblekit/pebble_automaton.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace pebblekit {

const char* action_name(Action a) {
  switch (a) {
    case Action::kStay: return "stay";
    case Action::kRight: return "right";
    case Action::kPlace: return "place-pebble";
    case Action::kLift: return "lift-pebble";
  }
  return "?";
}

std::optional<Action> parse_action(const std::string& name) {
  if (name == "stay") return Action::kStay;
  if (name == "right") return Action::kRight;
  if (name == "place-pebble" || name == "place") return Action::kPlace;
  if (name == "lift-pebble" || name == "lift") return Action::kLift;
  return std::nullopt;
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kAlternating: return "alternating";
    case Mode::kNondeterministic: return "nondeterministic";
    case Mode::kDeterministic: return "deterministic";
  }
  return "?";
}

int WeakPA::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int WeakPA::add_state(const std::string& name, bool is_final, bool is_universal) {
  if (state_index(name) >= 0) throw ModelError("duplicate state '" + name + "'");
  states.push_back(name);
  final_states.push_back(is_final);
  universal.push_back(is_universal);
  return static_cast<int>(states.size()) - 1;
}

int WeakPA::ensure_state(const std::string& name) {
  int idx = state_index(name);
  return idx >= 0 ? idx : add_state(name);
}

int WeakPA::symbol_code(const std::string& name) const {
  if (name == kLeftMarkerName) return kLeftEnd;
  if (name == kRightMarkerName) return kRightEnd;
  int idx = label_index(alphabet, name);
  if (idx < 0) throw ModelError("symbol '" + name + "' is not in the alphabet");
  return idx;
}

std::string WeakPA::symbol_name(int code) const {
  if (code == kLeftEnd) return kLeftMarkerName;
  if (code == kRightEnd) return kRightMarkerName;
  return alphabet.at(static_cast<std::size_t>(code));
}

void WeakPA::add(int pebble, const std::string& symbol, std::vector<int> compare,
                 const std::string& from, const std::string& to, Action action) {
  PATransition t;
  t.pebble = pebble;
  t.symbol = symbol_code(symbol);
  t.compare = mask_of(compare);
  t.from = ensure_state(from);
  t.to = ensure_state(to);
  t.action = action;
  transitions.push_back(t);
}

PebbleMask mask_of(const std::vector<int>& pebbles) {
  PebbleMask m = 0;
  for (int p : pebbles) {
    if (p < 0 || p >= 32) throw ModelError("pebble index " + std::to_string(p) + " out of range");
    m |= PebbleMask{1} << p;
  }
  return m;
}

std::vector<int> pebbles_of(PebbleMask mask) {
  std::vector<int> out;
  for (int p = 0; p < 32; ++p)
    if (mask & (PebbleMask{1} << p)) out.push_back(p);
  return out;
}

std::string describe(const WeakPA& a, const PATransition& t) {
  std::string v = "{";
  for (int p : pebbles_of(t.compare)) v += (v.size() > 1 ? "," : "") + std::to_string(p);
  v += "}";
  auto name = [&](int s) {
    return s >= 0 && static_cast<std::size_t>(s) < a.states.size() ? a.states[static_cast<std::size_t>(s)]
                                                                   : "#" + std::to_string(s);
  };
  std::string sym;
  try {
    sym = a.symbol_name(t.symbol);
  } catch (const std::out_of_range&) {
    sym = "#" + std::to_string(t.symbol);
  }
  return "(" + std::to_string(t.pebble) + "," + sym + "," + v + "," + name(t.from) + ") -> (" +
         name(t.to) + "," + action_name(t.action) + ")";
}

Classification validate(const WeakPA& a) {
  check_alphabet(a.alphabet);
  if (a.k < 1) throw ModelError("pebble count k must be at least 1");
  if (a.k > kMaxPebbles)
    throw ModelError("pebble count k=" + std::to_string(a.k) + " exceeds the supported maximum " +
                     std::to_string(kMaxPebbles));
  const std::size_t n = a.states.size();
  if (n == 0) throw ModelError("automaton has no states");
  if (a.final_states.size() != n || a.universal.size() != n)
    throw ModelError("final/universal flags do not match the state list");
  {
    std::set<std::string> seen(a.states.begin(), a.states.end());
    if (seen.size() != n) throw ModelError("duplicate state names");
  }
  if (a.initial < 0 || static_cast<std::size_t>(a.initial) >= n)
    throw ModelError("initial state out of range");
  for (std::size_t q = 0; q < n; ++q)
    if (a.final_states[q] && a.universal[q])
      throw ModelError("state '" + a.states[q] + "' is both final and universal");

  bool top_view = true;
  bool any_universal = std::any_of(a.universal.begin(), a.universal.end(), [](bool b) { return b; });
  std::set<std::tuple<int, int, PebbleMask, int>> keys;
  bool deterministic = !any_universal;
  for (const auto& t : a.transitions) {
    auto fail = [&](const std::string& why) { throw ModelError("transition " + describe(a, t) + ": " + why); };
    if (t.pebble < 1 || t.pebble > a.k) fail("pebble index outside 1..k");
    if (t.symbol != kLeftEnd && t.symbol != kRightEnd &&
        (t.symbol < 0 || static_cast<std::size_t>(t.symbol) >= a.alphabet.size()))
      fail("unknown symbol");
    if (t.from < 0 || static_cast<std::size_t>(t.from) >= n || t.to < 0 ||
        static_cast<std::size_t>(t.to) >= n)
      fail("unknown state");
    PebbleMask allowed = 0;
    for (int l = t.pebble + 1; l <= a.k; ++l) allowed |= PebbleMask{1} << l;
    if (t.compare & ~allowed) fail("comparison set must be a subset of {i+1,...,k}");
    if (t.action == Action::kPlace && t.pebble < 2) fail("place-pebble needs i >= 2");
    if (t.action == Action::kLift && t.pebble > a.k - 1) fail("lift-pebble needs i <= k-1");
    if (t.action == Action::kRight && t.symbol == kRightEnd) fail("cannot move right from the right marker");
    bool tv = t.compare == 0 || t.compare == (PebbleMask{1} << (t.pebble + 1));
    if (!tv) {
      if (a.view == View::kTop) fail("top-view automaton compares against a pebble other than i+1");
      top_view = false;
    }
    if (!keys.emplace(t.pebble, t.symbol, t.compare, t.from).second) deterministic = false;
  }
  Classification c;
  c.top_view = top_view;
  c.mode = any_universal ? Mode::kAlternating : deterministic ? Mode::kDeterministic : Mode::kNondeterministic;
  return c;
}

PebbleConfig initial_config(const WeakPA& a) {
  PebbleConfig c;
  c.head = a.k;
  c.state = a.initial;
  c.placement.assign(static_cast<std::size_t>(a.k), 0);
  return c;
}

int symbol_at(const DataWord& w, std::size_t p) {
  if (p == 0) return kLeftEnd;
  if (p == w.size() + 1) return kRightEnd;
  return w.at(p).label;
}

namespace {

bool same_datum(const DataWord& w, std::size_t p, std::size_t q) {
  const std::size_t n = w.size();
  if (p == 0 || q == 0 || p > n || q > n) return false;
  return w.letters()[p - 1].datum == w.letters()[q - 1].datum;
}

void check_config(const WeakPA& a, const DataWord& w, const PebbleConfig& c) {
  if (c.head < 1 || c.head > a.k) throw ModelError("configuration head outside 1..k");
  if (c.placement.size() != static_cast<std::size_t>(a.k))
    throw ModelError("configuration placement must have k entries");
  if (c.state < 0 || static_cast<std::size_t>(c.state) >= a.states.size())
    throw ModelError("configuration state out of range");
  for (int j = c.head; j <= a.k; ++j)
    if (c.placement[static_cast<std::size_t>(j - 1)] > w.size() + 1)
      throw ModelError("pebble position outside 0..n+1");
}

}  // namespace

PebbleMask comparison_set(const WeakPA& a, const DataWord& w, const PebbleConfig& c) {
  check_config(a, w, c);
  const std::size_t here = c.placement[static_cast<std::size_t>(c.head - 1)];
  PebbleMask v = 0;
  int last = a.view == View::kTop ? std::min(c.head + 1, a.k) : a.k;
  for (int l = c.head + 1; l <= last; ++l)
    if (same_datum(w, here, c.placement[static_cast<std::size_t>(l - 1)])) v |= PebbleMask{1} << l;
  return v;
}

std::vector<PATransition> applicable(const WeakPA& a, const DataWord& w, const PebbleConfig& c) {
  PebbleMask v = comparison_set(a, w, c);
  int sym = symbol_at(w, c.placement[static_cast<std::size_t>(c.head - 1)]);
  std::vector<PATransition> out;
  for (const auto& t : a.transitions)
    if (t.pebble == c.head && t.from == c.state && t.symbol == sym && t.compare == v) out.push_back(t);
  return out;
}

PebbleConfig step(const WeakPA& a, const DataWord& w, const PebbleConfig& c, const PATransition& t) {
  if (t.action == Action::kPlace && t.pebble < 2) throw ModelError("cannot place a pebble below pebble 1");
  if (t.action == Action::kLift && t.pebble >= a.k) throw ModelError("cannot lift pebble k");
  auto app = applicable(a, w, c);
  if (std::find(app.begin(), app.end(), t) == app.end())
    throw ModelError("transition " + describe(a, t) + " does not apply to the configuration");
  PebbleConfig next = c;
  next.state = t.to;
  const auto i = static_cast<std::size_t>(c.head - 1);
  switch (t.action) {
    case Action::kStay: break;
    case Action::kRight:
      if (c.placement[i] > w.size()) throw ModelError("cannot move right from the right marker");
      ++next.placement[i];
      break;
    case Action::kPlace:
      next.head = c.head - 1;
      next.placement[i - 1] = c.placement[i];
      break;
    case Action::kLift:
      next.head = c.head + 1;
      next.placement[i] = 0;
      break;
  }
  return next;
}

PAEvaluator::PAEvaluator(const WeakPA& a) : a_(a) {
  validate(a);
  by_key_.resize(a.states.size() * static_cast<std::size_t>(a.k + 1) * (a.alphabet.size() + 2));
  for (std::size_t t = 0; t < a.transitions.size(); ++t) {
    const auto& tr = a.transitions[t];
    by_key_[key(tr.from, tr.pebble, tr.symbol)].push_back(static_cast<std::uint32_t>(t));
  }
}

std::size_t PAEvaluator::key(int state, int pebble, int symbol) const {
  return (static_cast<std::size_t>(state) * static_cast<std::size_t>(a_.k + 1) + static_cast<std::size_t>(pebble)) *
             (a_.alphabet.size() + 2) +
         static_cast<std::size_t>(symbol + 2);
}

FixpointResult PAEvaluator::run(const DataWord& w, std::size_t budget) const {
  if (w.size() + 1 > 0xFFFF) throw ModelError("word too long for the evaluator");
  const int k = a_.k;
  const std::size_t n = w.size();
  const auto& letters = w.letters();
  const bool top = a_.view == View::kTop;
  auto expand = [&](const ConfigKey& c, Expansion<ConfigKey>& out) {
    const int q = static_cast<int>(c.state);
    if (a_.final_states[static_cast<std::size_t>(q)]) {
      out.accept();
      return;
    }
    const int i = c.head;
    const std::size_t here = c.slots[static_cast<std::size_t>(i - 1)];
    int sym = here == 0 ? kLeftEnd : here == n + 1 ? kRightEnd : letters[here - 1].label;
    PebbleMask v = 0;
    if (here != 0 && here != n + 1) {
      int last = top ? std::min(i + 1, k) : k;
      for (int l = i + 1; l <= last; ++l) {
        std::size_t p = c.slots[static_cast<std::size_t>(l - 1)];
        if (p != 0 && p != n + 1 && letters[p - 1].datum == letters[here - 1].datum) v |= PebbleMask{1} << l;
      }
    }
    const bool univ = a_.universal[static_cast<std::size_t>(q)];
    if (univ) out.begin_alternative();
    for (auto ti : by_key_[key(q, i, sym)]) {
      const auto& t = a_.transitions[ti];
      if (t.compare != v) continue;
      ConfigKey next = c;
      next.state = static_cast<std::uint32_t>(t.to);
      switch (t.action) {
        case Action::kStay: break;
        case Action::kRight: ++next.slots[static_cast<std::size_t>(i - 1)]; break;
        case Action::kPlace:
          next.head = static_cast<std::uint16_t>(i - 1);
          next.slots[static_cast<std::size_t>(i - 2)] = static_cast<std::uint16_t>(here);
          break;
        case Action::kLift:
          next.head = static_cast<std::uint16_t>(i + 1);
          next.slots[static_cast<std::size_t>(i - 1)] = 0;
          break;
      }
      if (univ) {
        out.add(next);
      } else {
        out.add_alternative(next);
      }
    }
  };
  ConfigKey root;
  root.state = static_cast<std::uint32_t>(a_.initial);
  root.head = static_cast<std::uint16_t>(k);
  return solve_least_fixpoint<ConfigKey, ConfigKeyHash>(root, expand, budget);
}

bool PAEvaluator::accepts(const DataWord& w) const {
  return run(w, std::numeric_limits<std::size_t>::max()).status == FixpointStatus::kAccepted;
}

bool accepts(const WeakPA& a, const DataWord& w) { return PAEvaluator(a).accepts(w); }

int UnboundedTopViewPA::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int UnboundedTopViewPA::ensure_state(const std::string& name) {
  int idx = state_index(name);
  if (idx >= 0) return idx;
  states.push_back(name);
  final_states.push_back(false);
  return static_cast<int>(states.size()) - 1;
}

void UnboundedTopViewPA::add(const std::string& symbol, int chi, const std::string& from,
                             const std::string& to, Action action) {
  UTransition t;
  if (symbol == kLeftMarkerName) {
    t.symbol = kLeftEnd;
  } else if (symbol == kRightMarkerName) {
    t.symbol = kRightEnd;
  } else {
    t.symbol = label_index(alphabet, symbol);
    if (t.symbol < 0) throw ModelError("symbol '" + symbol + "' is not in the alphabet");
  }
  t.chi = chi;
  t.from = ensure_state(from);
  t.to = ensure_state(to);
  t.action = action;
  transitions.push_back(t);
}

void validate(const UnboundedTopViewPA& a) {
  check_alphabet(a.alphabet);
  const std::size_t n = a.states.size();
  if (n == 0) throw ModelError("automaton has no states");
  if (a.final_states.size() != n) throw ModelError("final flags do not match the state list");
  if (a.initial < 0 || static_cast<std::size_t>(a.initial) >= n) throw ModelError("initial state out of range");
  for (const auto& t : a.transitions) {
    std::string where = "transition from state #" + std::to_string(t.from) + ": ";
    if (t.from < 0 || static_cast<std::size_t>(t.from) >= n || t.to < 0 || static_cast<std::size_t>(t.to) >= n)
      throw ModelError(where + "unknown state");
    if (t.symbol != kLeftEnd && t.symbol != kRightEnd &&
        (t.symbol < 0 || static_cast<std::size_t>(t.symbol) >= a.alphabet.size()))
      throw ModelError(where + "unknown symbol");
    if (t.chi != 0 && t.chi != 1) throw ModelError(where + "chi must be 0 or 1");
    if (t.action == Action::kStay) throw ModelError(where + "stay is not an unbounded-PA action");
    if (t.action == Action::kRight && t.symbol == kRightEnd)
      throw ModelError(where + "cannot move right from the right marker");
  }
}

// Pushdown-style summaries. A frame is (state, position of the pebble below,
// head position); the pebble below is kNone when the head is pebble 1.
// acc[q][b][p]: the frame reaches a final state before lifting its pebble.
// exits[q][b][p]: states in which the frame's pebble can be lifted.
bool accepts_unbounded(const UnboundedTopViewPA& a, const DataWord& w) {
  validate(a);
  const std::size_t n = w.size();
  const std::size_t positions = n + 2;
  const std::size_t below_slots = positions + 1;  // last slot encodes "no pebble below"
  const std::size_t none = positions;
  const std::size_t nq = a.states.size();
  auto idx = [&](std::size_t q, std::size_t b, std::size_t p) { return (q * below_slots + b) * positions + p; };
  std::vector<char> acc(nq * below_slots * positions, 0);
  std::vector<std::vector<char>> exits(nq * below_slots * positions, std::vector<char>(nq, 0));

  std::vector<std::vector<const UTransition*>> by_state(nq);
  for (const auto& t : a.transitions) by_state[static_cast<std::size_t>(t.from)].push_back(&t);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t b = 0; b < below_slots; ++b) {
        for (std::size_t p = 0; p < positions; ++p) {
          const std::size_t me = idx(q, b, p);
          auto set_acc = [&] {
            if (!acc[me]) acc[me] = 1, changed = true;
          };
          auto add_exit = [&](std::size_t r) {
            if (!exits[me][r]) exits[me][r] = 1, changed = true;
          };
          auto inherit = [&](std::size_t other) {
            if (acc[other]) set_acc();
            for (std::size_t r = 0; r < nq; ++r)
              if (exits[other][r]) add_exit(r);
          };
          if (a.final_states[q]) {
            set_acc();
            continue;
          }
          int sym = symbol_at(w, p);
          int chi = (b != none && same_datum(w, b, p)) ? 1 : 0;
          for (const UTransition* t : by_state[q]) {
            if (t->symbol != sym || t->chi != chi) continue;
            const auto to = static_cast<std::size_t>(t->to);
            switch (t->action) {
              case Action::kRight:
                if (p + 1 < positions) inherit(idx(to, b, p + 1));
                break;
              case Action::kPlace: {
                const std::size_t child = idx(to, p, p);
                if (acc[child]) set_acc();
                for (std::size_t r = 0; r < nq; ++r)
                  if (exits[child][r]) inherit(idx(r, b, p));
                break;
              }
              case Action::kLift:
                if (b != none) add_exit(to);
                break;
              case Action::kStay: break;
            }
          }
        }
      }
    }
  }
  return acc[idx(static_cast<std::size_t>(a.initial), none, 0)] != 0;
}

}  // namespace pebblekit
