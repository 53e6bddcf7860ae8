// Least-fixpoint acceptance over finite AND/OR configuration graphs.
//
// A node either accepts outright or offers a list of alternatives; it leads to
// acceptance iff some alternative has all of its successors leading to
// acceptance. An alternative with no successors is satisfied vacuously, a node
// with no alternatives never accepts. Cycles do not accept.

#ifndef PEBBLEKIT_FIXPOINT_HPP_
#define PEBBLEKIT_FIXPOINT_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_map>
#include <vector>

namespace pebblekit {

/// Configuration key shared by the pebble and register evaluators: a state,
/// a head index or position, and up to kMaxSlots small integers.
struct ConfigKey {
  static constexpr std::size_t kMaxSlots = 10;
  std::uint32_t state = 0;
  std::uint16_t head = 0;
  std::array<std::uint16_t, kMaxSlots> slots{};

  friend bool operator==(const ConfigKey&, const ConfigKey&) = default;
};

struct ConfigKeyHash {
  std::size_t operator()(const ConfigKey& key) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(key.state);
    mix(key.head);
    for (auto s : key.slots) mix(s);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// What an expansion callback reports for one node.
template <class Key>
class Expansion {
 public:
  void accept() { accepting_ = true; }
  void begin_alternative() { ends_.push_back(succ_.size()); }
  /// Adds a successor to the alternative opened last.
  void add(const Key& k) { succ_.push_back(k); }
  /// Shorthand for an alternative with a single successor.
  void add_alternative(const Key& k) {
    begin_alternative();
    add(k);
  }

  bool accepting() const { return accepting_; }
  std::size_t alternatives() const { return ends_.size(); }
  std::size_t alt_begin(std::size_t a) const { return ends_[a]; }
  std::size_t alt_end(std::size_t a) const {
    return a + 1 < ends_.size() ? ends_[a + 1] : succ_.size();
  }
  const Key& successor(std::size_t idx) const { return succ_[idx]; }

  void clear() {
    accepting_ = false;
    ends_.clear();
    succ_.clear();
  }

 private:
  bool accepting_ = false;
  std::vector<std::size_t> ends_;  // start offset of each alternative
  std::vector<Key> succ_;
};

enum class FixpointStatus { kAccepted, kRejected, kBudgetExhausted };

struct FixpointResult {
  FixpointStatus status = FixpointStatus::kRejected;
  std::size_t expansions = 0;
  std::size_t nodes = 0;
};

/// Explores every configuration reachable from `root` and propagates
/// acceptance backwards (linear in the size of the explored graph).
/// `expand(key, expansion)` fills in the node's verdict or alternatives.
/// `budget` caps the number of expanded nodes.
template <class Key, class Hash, class Expand>
FixpointResult solve_least_fixpoint(const Key& root, Expand&& expand,
                                    std::size_t budget = std::numeric_limits<std::size_t>::max()) {
  struct Alt {
    std::uint32_t node;
    std::uint32_t pending;
  };
  std::unordered_map<Key, std::uint32_t, Hash> index;
  std::vector<Key> keys;
  std::vector<char> accepted;
  std::vector<Alt> alts;
  // Edge list successor -> alternative, turned into CSR after exploration.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> watch;
  std::deque<std::uint32_t> frontier;
  std::vector<std::uint32_t> ready;  // nodes known to accept

  auto intern = [&](const Key& k) -> std::uint32_t {
    auto [it, inserted] = index.try_emplace(k, static_cast<std::uint32_t>(keys.size()));
    if (inserted) {
      keys.push_back(k);
      accepted.push_back(0);
      frontier.push_back(it->second);
    }
    return it->second;
  };

  FixpointResult result;
  intern(root);
  Expansion<Key> exp;
  std::vector<std::uint32_t> ids;
  while (!frontier.empty()) {
    if (result.expansions >= budget) {
      result.status = FixpointStatus::kBudgetExhausted;
      result.nodes = keys.size();
      return result;
    }
    std::uint32_t node = frontier.front();
    frontier.pop_front();
    ++result.expansions;
    exp.clear();
    Key key = keys[node];
    expand(key, exp);
    if (exp.accepting()) {
      accepted[node] = 1;
      ready.push_back(node);
      if (node == 0) break;  // root verdict is settled
      continue;
    }
    for (std::size_t a = 0; a < exp.alternatives(); ++a) {
      ids.clear();
      for (std::size_t s = exp.alt_begin(a); s < exp.alt_end(a); ++s) ids.push_back(intern(exp.successor(s)));
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      auto alt_id = static_cast<std::uint32_t>(alts.size());
      alts.push_back({node, static_cast<std::uint32_t>(ids.size())});
      if (ids.empty()) {
        if (!accepted[node]) {
          accepted[node] = 1;
          ready.push_back(node);
        }
      }
      for (auto id : ids) watch.emplace_back(id, alt_id);
    }
  }
  result.nodes = keys.size();
  if (accepted[0]) {
    result.status = FixpointStatus::kAccepted;
    return result;
  }

  std::vector<std::uint32_t> offsets(keys.size() + 1, 0);
  for (auto& [succ, alt] : watch) ++offsets[succ + 1];
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<std::uint32_t> watchers(watch.size());
  {
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (auto& [succ, alt] : watch) watchers[fill[succ]++] = alt;
  }
  while (!ready.empty()) {
    std::uint32_t node = ready.back();
    ready.pop_back();
    for (std::uint32_t e = offsets[node]; e < offsets[node + 1]; ++e) {
      Alt& alt = alts[watchers[e]];
      if (alt.pending == 0) continue;
      if (--alt.pending == 0 && !accepted[alt.node]) {
        accepted[alt.node] = 1;
        if (alt.node == 0) {
          result.status = FixpointStatus::kAccepted;
          return result;
        }
        ready.push_back(alt.node);
      }
    }
  }
  result.status = accepted[0] ? FixpointStatus::kAccepted : FixpointStatus::kRejected;
  return result;
}

}  // namespace pebblekit

#endif  // PEBBLEKIT_FIXPOINT_HPP_
