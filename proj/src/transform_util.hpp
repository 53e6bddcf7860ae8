// Helpers shared by the construction files.

#ifndef PEBBLEKIT_SRC_TRANSFORM_UTIL_HPP_
#define PEBBLEKIT_SRC_TRANSFORM_UTIL_HPP_

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pebblekit/pebble_automaton.hpp"

namespace pebblekit::detail {

/// Transitions grouped by (from, pebble, symbol, V).
class TransitionIndex {
 public:
  explicit TransitionIndex(const WeakPA& a) {
    for (const auto& t : a.transitions) by_key_[{t.from, t.pebble, t.symbol, t.compare}].push_back(&t);
  }
  const std::vector<const PATransition*>& at(int from, int pebble, int symbol, PebbleMask v) const {
    auto it = by_key_.find({from, pebble, symbol, v});
    return it == by_key_.end() ? empty_ : it->second;
  }

 private:
  std::map<std::tuple<int, int, int, PebbleMask>, std::vector<const PATransition*>> by_key_;
  std::vector<const PATransition*> empty_;
};

/// Every symbol code: <, the labels, >.
inline std::vector<int> all_symbols(const WeakPA& a) {
  std::vector<int> out{kLeftEnd};
  for (int s = 0; s < static_cast<int>(a.alphabet.size()); ++s) out.push_back(s);
  out.push_back(kRightEnd);
  return out;
}

/// Comparison sets pebble i can observe; markers only ever see the empty set.
inline std::vector<PebbleMask> views_for(const WeakPA& a, int i, int symbol) {
  std::vector<PebbleMask> out{0};
  if (symbol == kLeftEnd || symbol == kRightEnd) return out;
  if (a.view == View::kTop) {
    if (i < a.k) out.push_back(PebbleMask{1} << (i + 1));
    return out;
  }
  for (int l = i + 1; l <= a.k; ++l) {
    auto n = out.size();
    for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] | (PebbleMask{1} << l));
  }
  return out;
}

inline std::string mask_string(PebbleMask v) {
  std::string s = "{";
  bool first = true;
  for (int j : pebbles_of(v)) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

inline std::string join_names(const WeakPA& a, const std::vector<int>& states) {
  std::string s = "{";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) s += ",";
    s += a.states[static_cast<std::size_t>(states[i])];
  }
  return s + "}";
}

}  // namespace pebblekit::detail

#endif  // PEBBLEKIT_SRC_TRANSFORM_UTIL_HPP_
