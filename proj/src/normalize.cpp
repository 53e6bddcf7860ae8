#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "pebblekit/transforms.hpp"
#include "transform_util.hpp"

namespace pebblekit {

using detail::TransitionIndex;
using detail::all_symbols;
using detail::views_for;

NormalizationReport check_normal_form(const WeakPA& a) {
  validate(a);
  TransitionIndex idx(a);
  NormalizationReport r;
  r.n1 = r.n2 = r.n3 = r.n4 = r.n5 = true;
  auto flag = [&](bool& f, const std::string& why) {
    f = false;
    if (r.violations.size() < 20) r.violations.push_back(why);
  };
  auto state = [&](int q) { return a.states[static_cast<std::size_t>(q)]; };

  std::set<std::pair<int, int>> seen{{a.initial, a.k}};
  std::vector<std::pair<int, int>> work{{a.initial, a.k}};
  while (!work.empty()) {
    auto [q, i] = work.back();
    work.pop_back();
    if (a.final_states[static_cast<std::size_t>(q)]) continue;
    for (int sym : all_symbols(a)) {
      for (auto v : views_for(a, i, sym)) {
        const auto& ts = idx.at(q, i, sym, v);
        if (ts.empty())
          flag(r.n1, "n1: no transition for pebble " + std::to_string(i) + " in '" + state(q) + "' on " +
                         a.symbol_name(sym) + " " + detail::mask_string(v));
        for (const auto* t : ts) {
          int level = t->action == Action::kPlace ? i - 1 : t->action == Action::kLift ? i + 1 : i;
          if (seen.insert({t->to, level}).second) work.push_back({t->to, level});
        }
      }
    }
  }

  if (a.final_states[static_cast<std::size_t>(a.initial)]) flag(r.n2, "n2: initial state is final");
  for (const auto& t : a.transitions) {
    if (a.final_states[static_cast<std::size_t>(t.to)] && (t.pebble != a.k || t.symbol != kRightEnd))
      flag(r.n2, "n2: " + describe(a, t) + " enters a final state");
    if (t.action == Action::kLift && t.symbol != kRightEnd) flag(r.n4, "n4: " + describe(a, t) + " lifts before >");
  }
  for (const auto& t : a.transitions) {
    if (t.action == Action::kRight && t.pebble >= 2) {
      for (const auto& u : a.transitions)
        if (u.from == t.to && u.pebble == t.pebble && u.symbol != kRightEnd && u.action != Action::kPlace)
          flag(r.n3, "n3: " + describe(a, u) + " follows a right move without placing");
    }
    if (t.action == Action::kLift) {
      for (const auto& u : a.transitions)
        if (u.from == t.to && u.pebble == t.pebble + 1 && u.symbol != kRightEnd && u.action != Action::kRight)
          flag(r.n5, "n5: " + describe(a, u) + " follows a lift without moving right");
    }
  }
  return r;
}

namespace {

constexpr int kOuter = -1;  // start label of the outermost level
constexpr int kAcc = -1;    // outcome: a final state was reached
int lift_code(int p) { return -2 - p; }
int lifted(int code) { return -2 - code; }

// (start state of the thread, current state or outcome)
using Item = std::pair<int, int>;
using Frame = std::vector<Item>;
using SubFn = std::function<std::vector<int>(int)>;

struct Macro {
  std::vector<Frame> frames;  // outermost level first; back() is the head
  bool post = false;          // the head has just got its pebble back
  Frame sub;                  // outcomes of that pass, by start state

  friend auto operator<=>(const Macro&, const Macro&) = default;
};

Frame tidy(Frame f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  std::set<int> done;
  for (const auto& [s, x] : f)
    if (x == kAcc) done.insert(s);
  std::erase_if(f, [&](const Item& it) { return done.count(it.first) && it.second != kAcc; });
  return f;
}

class Normalizer {
 public:
  explicit Normalizer(const WeakPA& a) : a_(a), idx_(a) {}

  std::pair<WeakPA, NormalizationReport> run() {
    out_.alphabet = a_.alphabet;
    out_.k = a_.k;
    out_.view = a_.view;
    accept_ = out_.add_state("accept", true);
    sink_ = out_.add_state("sink");
    sources_.resize(2);
    Macro init;
    init.frames.push_back({{kOuter, a_.initial}});
    out_.initial = id(init);
    for (int i = 1; i <= a_.k; ++i)
      for (int sym : all_symbols(a_))
        for (auto v : views_for(a_, i, sym)) out_.transitions.push_back({i, sym, v, sink_, sink_, Action::kStay});
    while (!todo_.empty()) {
      auto [m, me] = todo_.back();
      todo_.pop_back();
      expand(m, me);
    }
    NormalizationReport r = check_normal_form(out_);
    r.target_sources = sources_;
    r.source_targets.resize(a_.states.size());
    for (std::size_t t = 0; t < sources_.size(); ++t)
      for (int s : sources_[t]) r.source_targets[static_cast<std::size_t>(s)].push_back(static_cast<int>(t));
    return {std::move(out_), std::move(r)};
  }

 private:
  const WeakPA& a_;
  TransitionIndex idx_;
  WeakPA out_;
  int accept_ = 0;
  int sink_ = 0;
  std::map<Macro, int> ids_;
  std::vector<std::pair<Macro, int>> todo_;
  std::vector<std::vector<int>> sources_;
  std::map<std::pair<int, int>, std::vector<int>> summary_;
  std::map<std::tuple<int, int, PebbleMask>, Frame> place_targets_;

  std::string item_name(const Item& it) const {
    auto name = [&](int q) { return a_.states[static_cast<std::size_t>(q)]; };
    std::string x = it.second == kAcc ? "ACC" : it.second < 0 ? "^" + name(lifted(it.second)) : name(it.second);
    return it.first == kOuter ? x : name(it.first) + ">" + x;
  }
  std::string frame_name(const Frame& f) const {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + item_name(f[i]);
    return s + "}";
  }

  int id(const Macro& m) {
    auto it = ids_.find(m);
    if (it != ids_.end()) return it->second;
    std::string name;
    for (std::size_t i = 0; i < m.frames.size(); ++i) name += (i ? "|" : "") + frame_name(m.frames[i]);
    if (m.post) name += "<=" + frame_name(m.sub);
    int n = out_.add_state(name);
    ids_.emplace(m, n);
    todo_.emplace_back(m, n);
    std::set<int> src;
    auto note = [&](const Frame& f) {
      for (const auto& [s, x] : f) {
        if (s >= 0) src.insert(s);
        if (x >= 0) src.insert(x);
        if (x < kAcc) src.insert(lifted(x));
      }
    };
    for (const auto& f : m.frames) note(f);
    note(m.sub);
    sources_.emplace_back(src.begin(), src.end());
    return n;
  }

  Frame close(int level, int sym, PebbleMask v, const Frame& frame, const SubFn& sub) {
    Frame out;
    std::map<int, std::vector<int>> by_start;
    for (const auto& [s, x] : frame) {
      if (x < 0) out.push_back({s, x});
      else by_start[s].push_back(x);
    }
    for (auto& [s, init] : by_start) {
      std::set<int> seen(init.begin(), init.end());
      std::vector<int> work(init.begin(), init.end());
      while (!work.empty()) {
        int q = work.back();
        work.pop_back();
        if (a_.final_states[static_cast<std::size_t>(q)]) {
          out.push_back({s, kAcc});
          continue;
        }
        for (const auto* t : idx_.at(q, level, sym, v)) {
          switch (t->action) {
            case Action::kStay:
              if (seen.insert(t->to).second) work.push_back(t->to);
              break;
            case Action::kRight: out.push_back({s, t->to}); break;
            case Action::kLift: out.push_back({s, lift_code(t->to)}); break;
            case Action::kPlace:
              for (int o : sub(t->to)) {
                if (o == kAcc) {
                  out.push_back({s, kAcc});
                } else if (seen.insert(lifted(o)).second) {
                  work.push_back(lifted(o));
                }
              }
              break;
          }
        }
      }
    }
    return tidy(out);
  }

  // Outcomes of a level-`level` thread started in t at >.
  std::vector<int> summary(int level, int t) {
    auto key = std::make_pair(level, t);
    auto it = summary_.find(key);
    if (it != summary_.end()) return it->second;
    SubFn below = level >= 2 ? SubFn([this, level](int u) { return summary(level - 1, u); }) : SubFn();
    Frame res = close(level, kRightEnd, 0, {{t, t}}, below);
    std::vector<int> outcomes;
    for (const auto& [s, x] : res) outcomes.push_back(x);
    summary_[key] = outcomes;
    return outcomes;
  }

  const Frame& place_targets(int level, int sym, PebbleMask v) {
    auto key = std::make_tuple(level, sym, v);
    auto it = place_targets_.find(key);
    if (it != place_targets_.end()) return it->second;
    Frame f;
    for (int q = 0; q < static_cast<int>(a_.states.size()); ++q)
      for (const auto* t : idx_.at(q, level, sym, v))
        if (t->action == Action::kPlace) f.push_back({t->to, t->to});
    return place_targets_[key] = tidy(f);
  }

  void expand(const Macro& m, int me) {
    const int i = a_.k - static_cast<int>(m.frames.size()) + 1;
    for (int sym : all_symbols(a_)) {
      for (auto v : views_for(a_, i, sym)) {
        Action act = Action::kStay;
        int target = sink_;
        const Frame& head = m.frames.back();
        if (m.post) {
          if (sym != kRightEnd) {
            Frame sub = m.sub;
            SubFn from_pass = [&sub](int t) {
              std::vector<int> o;
              for (const auto& [s, x] : sub)
                if (s == t) o.push_back(x);
              return o;
            };
            Macro next;
            next.frames = m.frames;
            next.frames.back() = close(i, sym, v, head, from_pass);
            act = Action::kRight;
            target = id(next);
          }
        } else if (sym == kRightEnd) {
          SubFn below = i >= 2 ? SubFn([this, i](int u) { return summary(i - 1, u); }) : SubFn();
          Frame res = close(i, sym, v, head, below);
          if (i == a_.k) {
            target = std::binary_search(res.begin(), res.end(), Item{kOuter, kAcc}) ? accept_ : sink_;
          } else {
            Macro up;
            up.frames.assign(m.frames.begin(), m.frames.end() - 1);
            up.post = true;
            up.sub = res;
            act = Action::kLift;
            target = id(up);
          }
        } else if (i >= 2) {
          Macro down = m;
          down.frames.push_back(place_targets(i, sym, v));
          act = Action::kPlace;
          target = id(down);
        } else {
          Macro next = m;
          next.frames.back() = close(i, sym, v, head, SubFn());
          act = Action::kRight;
          target = id(next);
        }
        out_.transitions.push_back({i, sym, v, me, target, act});
      }
    }
  }
};

std::optional<WeakPA> powerset(const WeakPA& a) {
  TransitionIndex idx(a);
  WeakPA out;
  out.alphabet = a.alphabet;
  out.k = a.k;
  out.view = a.view;
  std::map<std::vector<int>, int> ids;
  auto id = [&](const std::vector<int>& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    bool fin = std::any_of(s.begin(), s.end(), [&](int q) { return a.final_states[static_cast<std::size_t>(q)]; });
    int n = out.add_state(detail::join_names(a, s), fin);
    ids.emplace(s, n);
    return n;
  };
  std::set<std::pair<std::vector<int>, int>> seen;
  std::vector<std::pair<std::vector<int>, int>> work{{{a.initial}, a.k}};
  out.initial = id({a.initial});
  seen.insert(work.front());
  while (!work.empty()) {
    auto [s, i] = work.back();
    work.pop_back();
    const int from = id(s);
    for (int sym : all_symbols(a)) {
      for (auto v : views_for(a, i, sym)) {
        std::set<int> e;
        std::optional<Action> act;
        for (int q : s) {
          for (const auto* t : idx.at(q, i, sym, v)) {
            if (act && *act != t->action) return std::nullopt;
            act = t->action;
            e.insert(t->to);
          }
        }
        if (e.empty()) continue;
        std::vector<int> next(e.begin(), e.end());
        int level = *act == Action::kPlace ? i - 1 : *act == Action::kLift ? i + 1 : i;
        out.transitions.push_back({i, sym, v, from, id(next), *act});
        if (seen.insert({next, level}).second) work.push_back({next, level});
      }
    }
  }
  return out;
}

}  // namespace

std::pair<WeakPA, NormalizationReport> normalize(const WeakPA& a) {
  if (validate(a).mode == Mode::kAlternating) throw ModelError("normalize needs a non-alternating automaton");
  return Normalizer(a).run();
}

WeakPA determinize(const WeakPA& a) {
  if (validate(a).mode == Mode::kAlternating) throw ModelError("determinize needs a non-alternating automaton");
  if (check_normal_form(a).all())
    if (auto d = powerset(a)) return *d;
  auto d = powerset(normalize(a).first);
  if (!d) throw std::logic_error("subset construction failed on a normalized automaton");
  return *d;
}

}  // namespace pebblekit
