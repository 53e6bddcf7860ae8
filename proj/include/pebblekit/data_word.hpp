// Data words over a finite label alphabet and an infinite, equality-only
// domain of data values.

#ifndef PEBBLEKIT_DATA_WORD_HPP_
#define PEBBLEKIT_DATA_WORD_HPP_

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pebblekit {

/// Raised when an automaton, formula or word violates a structural invariant.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input document (JSON, formula text) cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using DataValue = std::uint64_t;

/// Reserved names of the end markers; they may never occur inside a word.
inline constexpr const char* kLeftMarkerName = "<";
inline constexpr const char* kRightMarkerName = ">";

using Alphabet = std::vector<std::string>;

/// Checks that labels are non-empty, unique and never a reserved marker name.
void check_alphabet(const Alphabet& alphabet);

/// Index of `label` in `alphabet`, or -1.
int label_index(const Alphabet& alphabet, const std::string& label);

struct Letter {
  int label = 0;  // index into the word's alphabet
  DataValue datum = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A finite sequence of (label, datum) pairs. Positions are 1-based in the
/// automaton semantics: position 0 is the left marker and n+1 the right one,
/// neither of which is stored.
class DataWord {
 public:
  DataWord() = default;
  explicit DataWord(Alphabet alphabet);
  DataWord(Alphabet alphabet, std::vector<Letter> letters);

  /// Builds a word from label names; every name must belong to `alphabet`.
  static DataWord from_pairs(Alphabet alphabet,
                             const std::vector<std::pair<std::string, DataValue>>& pairs);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// 1-based access.
  const Letter& at(std::size_t position) const;
  const std::string& label_name(std::size_t position) const;

  void push_back(const std::string& label, DataValue datum);
  void push_back(Letter letter);

  std::string to_string() const;

  friend bool operator==(const DataWord&, const DataWord&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

enum class Axis { kLabels, kData };

/// Proj_Σ / Proj_D.
std::vector<std::string> project_labels(const DataWord& w);
std::vector<DataValue> project_data(const DataWord& w);

/// Cont_Σ / Cont_D.
std::set<std::string> content_labels(const DataWord& w);
std::set<DataValue> content_data(const DataWord& w);

/// Renames data values to 1,2,3,... in order of first occurrence.
DataWord canonicalize(const DataWord& w);

bool is_canonical(const DataWord& w);

/// Bell numbers B(0..n) computed with the Bell triangle.
std::vector<std::uint64_t> bell_numbers(std::size_t n);

/// Streams every canonical word of length <= max_len exactly once, ordered by
/// length, then label sequence (lexicographic in alphabet order), then the
/// restricted-growth string of the data (lexicographic). The visitor returns
/// false to stop early; the function returns false iff it was stopped.
bool for_each_canonical(const Alphabet& alphabet, std::size_t max_len,
                        const std::function<bool(const DataWord&)>& visit);

/// Same order, restricted to exactly `length` positions.
bool for_each_canonical_of_length(const Alphabet& alphabet, std::size_t length,
                                  const std::function<bool(const DataWord&)>& visit);

/// All canonical words of length <= max_len, materialized.
std::vector<DataWord> enumerate_canonical(const Alphabet& alphabet, std::size_t max_len);

/// Restricted-growth strings of length n in lexicographic order (values 1-based).
bool for_each_restricted_growth(std::size_t n,
                                const std::function<bool(const std::vector<DataValue>&)>& visit);

}  // namespace pebblekit

#endif  // PEBBLEKIT_DATA_WORD_HPP_
