// Brute-force search over canonical words: bounded emptiness and equivalence,
// plus the labelling and data-membership problems.

#ifndef PEBBLEKIT_ANALYSIS_HPP_
#define PEBBLEKIT_ANALYSIS_HPP_

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pebblekit/data_word.hpp"
#include "pebblekit/pebble_automaton.hpp"
#include "pebblekit/register_automaton.hpp"

namespace pebblekit {

/// kNoneWithinBound only means nothing was found up to the length bound.
enum class SearchStatus { kFound, kNoneWithinBound, kBudgetExhausted };
const char* search_status_name(SearchStatus s);

struct EmptinessResult {
  SearchStatus status = SearchStatus::kNoneWithinBound;
  std::optional<DataWord> witness;
  std::size_t words = 0;       // words whose verdict was settled
  std::size_t expansions = 0;  // configurations expanded over all settled words
};

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// First accepted canonical word in enumeration order. The budget bounds the
/// total number of configuration expansions. With jobs > 1 words are
/// evaluated concurrently but the result is that of the sequential search.
EmptinessResult bounded_emptiness(const WeakPA& a, std::size_t max_len, std::size_t budget = kUnlimited,
                                  int jobs = 1);
EmptinessResult bounded_emptiness(const AlternatingRA& a, std::size_t max_len, std::size_t budget = kUnlimited,
                                  int jobs = 1);

using WordPredicate = std::function<bool(const DataWord&)>;

WordPredicate acceptor(const WeakPA& a);
WordPredicate acceptor(const AlternatingRA& a);

struct EquivResult {
  std::optional<DataWord> counterexample;
  bool left = false;  // verdicts on the counterexample
  bool right = false;
  std::size_t words = 0;
};

/// First canonical word over sigma of length <= max_len where the two
/// predicates disagree.
EquivResult bounded_equiv(const WordPredicate& a, const WordPredicate& b, const Alphabet& sigma,
                          std::size_t max_len, int jobs = 1);

/// Labels for the given data, trying label sequences in lexicographic order.
std::optional<std::vector<std::string>> solve_labelling(const WeakPA& a, const std::vector<DataValue>& data);

/// Data for the given labels, trying restricted-growth strings in
/// lexicographic order.
std::optional<std::vector<DataValue>> solve_data_membership(const WeakPA& a,
                                                            const std::vector<std::string>& labels);

}  // namespace pebblekit

#endif  // PEBBLEKIT_ANALYSIS_HPP_
