#include "pebblekit/data_word.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace pebblekit {

void check_alphabet(const Alphabet& alphabet) {
  std::set<std::string> seen;
  for (const auto& label : alphabet) {
    if (label.empty()) throw ModelError("alphabet contains an empty label");
    if (label == kLeftMarkerName || label == kRightMarkerName)
      throw ModelError("label '" + label + "' is reserved for an end marker");
    if (!seen.insert(label).second) throw ModelError("duplicate label '" + label + "'");
  }
}

int label_index(const Alphabet& alphabet, const std::string& label) {
  auto it = std::find(alphabet.begin(), alphabet.end(), label);
  return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

DataWord::DataWord(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
  check_alphabet(alphabet_);
}

DataWord::DataWord(Alphabet alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  check_alphabet(alphabet_);
  for (const auto& l : letters_)
    if (l.label < 0 || static_cast<std::size_t>(l.label) >= alphabet_.size())
      throw ModelError("letter label index out of range");
}

DataWord DataWord::from_pairs(Alphabet alphabet,
                              const std::vector<std::pair<std::string, DataValue>>& pairs) {
  DataWord w(std::move(alphabet));
  for (const auto& [label, datum] : pairs) w.push_back(label, datum);
  return w;
}

const Letter& DataWord::at(std::size_t position) const {
  if (position == 0 || position > letters_.size())
    throw std::out_of_range("data word position " + std::to_string(position) + " out of range");
  return letters_[position - 1];
}

const std::string& DataWord::label_name(std::size_t position) const {
  return alphabet_[static_cast<std::size_t>(at(position).label)];
}

void DataWord::push_back(const std::string& label, DataValue datum) {
  int idx = label_index(alphabet_, label);
  if (idx < 0) throw ModelError("label '" + label + "' is not in the word's alphabet");
  letters_.push_back({idx, datum});
}

void DataWord::push_back(Letter letter) {
  if (letter.label < 0 || static_cast<std::size_t>(letter.label) >= alphabet_.size())
    throw ModelError("letter label index out of range");
  letters_.push_back(letter);
}

std::string DataWord::to_string() const {
  if (letters_.empty()) return "eps";
  std::ostringstream out;
  for (const auto& l : letters_)
    out << '(' << alphabet_[static_cast<std::size_t>(l.label)] << ',' << l.datum << ')';
  return out.str();
}

std::vector<std::string> project_labels(const DataWord& w) {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (const auto& l : w.letters()) out.push_back(w.alphabet()[static_cast<std::size_t>(l.label)]);
  return out;
}

std::vector<DataValue> project_data(const DataWord& w) {
  std::vector<DataValue> out;
  out.reserve(w.size());
  for (const auto& l : w.letters()) out.push_back(l.datum);
  return out;
}

std::set<std::string> content_labels(const DataWord& w) {
  auto labels = project_labels(w);
  return {labels.begin(), labels.end()};
}

std::set<DataValue> content_data(const DataWord& w) {
  auto data = project_data(w);
  return {data.begin(), data.end()};
}

DataWord canonicalize(const DataWord& w) {
  std::unordered_map<DataValue, DataValue> renaming;
  std::vector<Letter> letters;
  letters.reserve(w.size());
  for (const auto& l : w.letters()) {
    auto [it, inserted] = renaming.try_emplace(l.datum, renaming.size() + 1);
    letters.push_back({l.label, it->second});
  }
  return DataWord(w.alphabet(), std::move(letters));
}

bool is_canonical(const DataWord& w) {
  DataValue next = 1;
  for (const auto& l : w.letters()) {
    if (l.datum == next) {
      ++next;
    } else if (l.datum == 0 || l.datum > next) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> bell_numbers(std::size_t n) {
  std::vector<std::uint64_t> bell{1};
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    bell.push_back(next.front());
    row = std::move(next);
  }
  return bell;
}

bool for_each_restricted_growth(std::size_t n,
                                const std::function<bool(const std::vector<DataValue>&)>& visit) {
  std::vector<DataValue> rgs(n, 1);
  if (n == 0) return visit(rgs);
  // prefix_max[i] = max(rgs[0..i])
  std::vector<DataValue> prefix_max(n, 1);
  while (true) {
    if (!visit(rgs)) return false;
    // find rightmost position that can still be incremented
    std::size_t pos = n;
    for (std::size_t j = n; j-- > 1;) {
      if (rgs[j] <= prefix_max[j - 1]) { pos = j; break; }
    }
    if (pos == n) return true;
    ++rgs[pos];
    prefix_max[pos] = std::max(prefix_max[pos - 1], rgs[pos]);
    for (std::size_t j = pos + 1; j < n; ++j) {
      rgs[j] = 1;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
}

bool for_each_canonical_of_length(const Alphabet& alphabet, std::size_t length,
                                  const std::function<bool(const DataWord&)>& visit) {
  check_alphabet(alphabet);
  if (alphabet.empty()) {
    if (length == 0) return visit(DataWord(alphabet));
    return true;
  }
  std::vector<int> labels(length, 0);
  const int sigma = static_cast<int>(alphabet.size());
  while (true) {
    bool keep_going = for_each_restricted_growth(length, [&](const std::vector<DataValue>& rgs) {
      std::vector<Letter> letters(length);
      for (std::size_t i = 0; i < length; ++i) letters[i] = {labels[i], rgs[i]};
      return visit(DataWord(alphabet, std::move(letters)));
    });
    if (!keep_going) return false;
    std::size_t i = length;
    while (i > 0 && labels[i - 1] == sigma - 1) labels[--i] = 0;
    if (i == 0) return true;
    ++labels[i - 1];
  }
}

bool for_each_canonical(const Alphabet& alphabet, std::size_t max_len,
                        const std::function<bool(const DataWord&)>& visit) {
  for (std::size_t n = 0; n <= max_len; ++n)
    if (!for_each_canonical_of_length(alphabet, n, visit)) return false;
  return true;
}

std::vector<DataWord> enumerate_canonical(const Alphabet& alphabet, std::size_t max_len) {
  std::vector<DataWord> out;
  for_each_canonical(alphabet, max_len, [&](const DataWord& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace pebblekit
