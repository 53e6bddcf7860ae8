#include <map>
#include <set>

#include "pebblekit/transforms.hpp"
#include "transform_util.hpp"

namespace pebblekit {

using detail::TransitionIndex;
using detail::all_symbols;
using detail::views_for;

namespace {

// Universal states keep only stay transitions; every other move goes through a
// fresh existential state that repeats it on the same key.
WeakPA split_universal_moves(const WeakPA& a) {
  WeakPA b = a;
  std::vector<PATransition> kept;
  int fresh = 0;
  for (const auto& t : a.transitions) {
    if (!a.universal[static_cast<std::size_t>(t.from)] || t.action == Action::kStay) {
      kept.push_back(t);
      continue;
    }
    int aux = b.add_state(a.states[static_cast<std::size_t>(t.from)] + "~" + std::to_string(fresh++));
    PATransition via = t;
    via.to = aux;
    via.action = Action::kStay;
    kept.push_back(via);
    PATransition act = t;
    act.from = aux;
    kept.push_back(act);
  }
  b.transitions = std::move(kept);
  return b;
}

using Entry = std::pair<int, bool>;  // (state, already moved right)
using Level = std::vector<Entry>;
using Tuple = std::vector<Level>;    // pebble k first; back() is the head

Level sorted(Level l) {
  std::sort(l.begin(), l.end());
  l.erase(std::unique(l.begin(), l.end()), l.end());
  return l;
}

class Dealternator {
 public:
  explicit Dealternator(const WeakPA& a) : a_(a), idx_(a) {}

  WeakPA run() {
    out_.alphabet = a_.alphabet;
    out_.k = a_.k;
    out_.view = a_.view;
    out_.initial = id({{{a_.initial, false}}});
    accept_ = out_.add_state("ACC", true);
    while (!todo_.empty()) {
      auto [m, me] = todo_.back();
      todo_.pop_back();
      expand(m, me);
    }
    return std::move(out_);
  }

 private:
  const WeakPA& a_;
  TransitionIndex idx_;
  WeakPA out_;
  int accept_ = 0;
  std::map<Tuple, int> ids_;
  std::vector<std::pair<Tuple, int>> todo_;

  int id(const Tuple& m) {
    auto it = ids_.find(m);
    if (it != ids_.end()) return it->second;
    std::string name = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) name += "|";
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        if (j) name += ",";
        name += a_.states[static_cast<std::size_t>(m[i][j].first)];
        if (m[i][j].second) name += "'";
      }
    }
    int n = out_.add_state(name + "]");
    ids_.emplace(m, n);
    todo_.emplace_back(m, n);
    return n;
  }

  void emit(int i, int sym, PebbleMask v, int from, const Tuple& to, Action act) {
    out_.transitions.push_back({i, sym, v, from, id(to), act});
  }

  void expand(const Tuple& m, int me) {
    const int i = a_.k - static_cast<int>(m.size()) + 1;
    const Level& head = m.back();
    auto pick = std::find_if(head.begin(), head.end(), [](const Entry& e) { return !e.second; });
    for (int sym : all_symbols(a_)) {
      for (auto v : views_for(a_, i, sym)) {
        if (head.empty()) {
          if (i == a_.k) {
            out_.transitions.push_back({i, sym, v, me, accept_, Action::kStay});
          } else {
            emit(i, sym, v, me, Tuple(m.begin(), m.end() - 1), Action::kLift);
          }
          continue;
        }
        if (pick == head.end()) {
          if (sym == kRightEnd) continue;
          Tuple next = m;
          for (auto& e : next.back()) e.second = false;
          emit(i, sym, v, me, next, Action::kRight);
          continue;
        }
        const int q = pick->first;
        Level rest = head;
        rest.erase(rest.begin() + (pick - head.begin()));
        auto with = [&](Level l) {
          Tuple next = m;
          next.back() = sorted(std::move(l));
          return next;
        };
        if (a_.final_states[static_cast<std::size_t>(q)]) {
          emit(i, sym, v, me, with(rest), Action::kStay);
          continue;
        }
        const auto& ts = idx_.at(q, i, sym, v);
        if (a_.universal[static_cast<std::size_t>(q)]) {
          Level l = rest;
          for (const auto* t : ts) l.push_back({t->to, false});
          emit(i, sym, v, me, with(l), Action::kStay);
          continue;
        }
        for (const auto* t : ts) {
          Level l = rest;
          switch (t->action) {
            case Action::kStay:
              l.push_back({t->to, false});
              emit(i, sym, v, me, with(l), Action::kStay);
              break;
            case Action::kRight:
              l.push_back({t->to, true});
              emit(i, sym, v, me, with(l), Action::kStay);
              break;
            case Action::kLift: {
              Tuple next = with(l);
              auto& up = next[next.size() - 2];
              up.push_back({t->to, false});
              up = sorted(up);
              emit(i, sym, v, me, next, Action::kStay);
              break;
            }
            case Action::kPlace: {
              Tuple next = with(l);
              next.push_back({{t->to, false}});
              emit(i, sym, v, me, next, Action::kPlace);
              break;
            }
          }
        }
      }
    }
  }
};

}  // namespace

WeakPA dealternate(const WeakPA& a) {
  validate(a);
  return Dealternator(split_universal_moves(a)).run();
}

}  // namespace pebblekit
