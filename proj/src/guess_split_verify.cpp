#include <map>
#include <set>

#include "pebblekit/transforms.hpp"
#include "transform_util.hpp"

namespace pebblekit {

using detail::TransitionIndex;
using detail::all_symbols;
using detail::views_for;

namespace {

constexpr std::size_t kMaxGuesses = 4096;

class Simulator {
 public:
  Simulator(const WeakPA& a, bool single) : a_(a), idx_(a), single_(single) {
    alternating_ = validate(a).mode == Mode::kAlternating;
    out_.alphabet = a.alphabet;
    out_.k = single ? 1 : a.k - 1;
    out_.u0.assign(static_cast<std::size_t>(out_.k), std::nullopt);
    for (int i = 1; i < a.k; ++i) {
      std::set<int> targets;
      for (const auto& t : a.transitions)
        if (t.pebble == i && t.action == Action::kLift) targets.insert(t.to);
      guesses_[i + 1] = family(std::vector<int>(targets.begin(), targets.end()));
    }
  }

  AlternatingRA run() {
    out_.initial = out_.state_index(state(a_.k, a_.initial, {}));
    accept_ = out_.ensure_state("(p,p)");
    out_.final_states[static_cast<std::size_t>(accept_)] = true;
    while (!todo_.empty()) {
      auto [i, q, p] = todo_.back();
      todo_.pop_back();
      expand(i, q, p);
    }
    return std::move(out_);
  }

 private:
  using Key = std::tuple<int, int, std::vector<int>>;

  const WeakPA& a_;
  TransitionIndex idx_;
  bool single_;
  bool alternating_ = false;
  AlternatingRA out_;
  int accept_ = 0;
  std::map<int, std::vector<std::vector<int>>> guesses_;
  std::map<Key, int> ids_;
  std::vector<Key> todo_;

  std::vector<std::vector<int>> family(const std::vector<int>& targets) const {
    std::vector<std::vector<int>> out{{}};
    if (!alternating_) {
      for (int p : targets) out.push_back({p});
      return out;
    }
    if (targets.size() >= 63 || (std::size_t{1} << targets.size()) > kMaxGuesses)
      throw ModelError("too many lift targets to guess exit sets");
    for (std::size_t m = 1; m < (std::size_t{1} << targets.size()); ++m) {
      std::vector<int> s;
      for (std::size_t b = 0; b < targets.size(); ++b)
        if (m >> b & 1) s.push_back(targets[b]);
      out.push_back(s);
    }
    return out;
  }

  std::string name_of(int i, int q, const std::vector<int>& p) const {
    const auto& qn = a_.states[static_cast<std::size_t>(q)];
    if (i == a_.k) return qn + "@" + std::to_string(i);
    return "(" + qn + "," + detail::join_names(a_, p) + ")@" + std::to_string(i);
  }

  std::string state(int i, int q, const std::vector<int>& p) {
    Key key{i, q, p};
    std::string name = name_of(i, q, p);
    if (ids_.emplace(key, 0).second) {
      int n = out_.ensure_state(name);
      ids_[key] = n;
      out_.final_states[static_cast<std::size_t>(n)] = a_.final_states[static_cast<std::size_t>(q)];
      todo_.push_back(key);
    }
    return name;
  }

  // Register sets a read may see for comparison set v at pebble i.
  std::vector<std::vector<int>> register_sets(int i, PebbleMask v) const {
    std::vector<int> fixed;
    std::vector<int> free;
    if (single_) {
      if (i == a_.k) return {{}};
      if (v) fixed.push_back(1);
      return {fixed};
    }
    for (int j : pebbles_of(v)) fixed.push_back(j - 1);
    for (int r = 1; r < a_.k; ++r) {
      bool stale = r <= i - 1;
      bool unseen = a_.view == View::kTop && r >= i + 1;
      if (stale || unseen) free.push_back(r);
    }
    std::vector<std::vector<int>> out;
    for (std::size_t m = 0; m < (std::size_t{1} << free.size()); ++m) {
      auto s = fixed;
      for (std::size_t b = 0; b < free.size(); ++b)
        if (m >> b & 1) s.push_back(free[b]);
      out.push_back(s);
    }
    return out;
  }

  void read(const std::string& from, int i, int sym, PebbleMask v, const std::string& to) {
    if (sym == kLeftEnd || sym == kRightEnd) {
      out_.add_marker(from, a_.symbol_name(sym), to);
      return;
    }
    for (const auto& regs : register_sets(i, v)) out_.add_read(from, a_.symbol_name(sym), regs, to);
  }

  std::string place(int i, int t, const std::vector<int>& p) {
    std::string base = "place:" + name_of(i, t, p);
    std::string guess = base + "?";
    if (out_.state_index(guess) >= 0) return single_ ? guess : base;
    out_.ensure_state(guess);
    std::vector<std::string> options;
    for (const auto& g : guesses_[i]) {
      std::string sub = state(i - 1, t, g);
      if (single_) {
        std::string stored = "store:" + sub;
        if (out_.state_index(stored) < 0) out_.add_store(stored, {1}, sub);
        sub = stored;
      }
      std::vector<std::string> conj{sub};
      for (int q : g) conj.push_back(state(i, q, p));
      std::string split = base + "&" + detail::join_names(a_, g);
      out_.add_branch(split, Junction::kAnd, conj);
      options.push_back(split);
    }
    out_.add_branch(guess, Junction::kOr, options);
    if (single_) return guess;
    out_.add_store(base, {i - 1}, guess);
    return base;
  }

  void expand(int i, int q, const std::vector<int>& p) {
    if (a_.final_states[static_cast<std::size_t>(q)]) return;
    const std::string me = name_of(i, q, p);
    const bool universal = a_.universal[static_cast<std::size_t>(q)];
    for (int sym : all_symbols(a_)) {
      for (auto v : views_for(a_, i, sym)) {
        const auto& ts = idx_.at(q, i, sym, v);
        if (ts.empty()) {
          if (universal) read(me, i, sym, v, "(p,p)");
          continue;
        }
        std::vector<std::string> succ;
        for (const auto* t : ts) {
          switch (t->action) {
            case Action::kStay: succ.push_back(state(i, t->to, p)); break;
            case Action::kRight: {
              std::string target = state(i, t->to, p);
              std::string step = ">" + target;
              if (out_.state_index(step) < 0) out_.add_move(step, target);
              succ.push_back(step);
              break;
            }
            case Action::kLift:
              if (std::find(p.begin(), p.end(), t->to) != p.end()) {
                succ.push_back("(p,p)");
              } else {
                out_.ensure_state("dead");
                succ.push_back("dead");
              }
              break;
            case Action::kPlace: succ.push_back(place(i, t->to, p)); break;
          }
        }
        std::string dispatch = me + "/" + a_.symbol_name(sym) + "/" + detail::mask_string(v);
        out_.add_branch(dispatch, universal ? Junction::kAnd : Junction::kOr, succ);
        read(me, i, sym, v, dispatch);
      }
    }
  }
};

}  // namespace

AlternatingRA pa_to_ra(const WeakPA& a) {
  validate(a);
  if (a.k < 2) throw ModelError("the register simulation needs at least two pebbles");
  return Simulator(a, false).run();
}

AlternatingRA top_view_to_1ra(const WeakPA& a) {
  validate(a);
  if (a.view != View::kTop && a.k > 2) throw ModelError("single-register simulation needs a top-view automaton");
  return Simulator(a, true).run();
}

}  // namespace pebblekit
