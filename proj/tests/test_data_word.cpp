#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pebblekit/data_word.hpp"

using namespace pebblekit;

namespace {

DataWord word(const Alphabet& sigma, std::vector<std::pair<std::string, DataValue>> pairs) {
  return DataWord::from_pairs(sigma, pairs);
}

const Alphabet kAB{"a", "b"};

}  // namespace

TEST_CASE("projections and contents") {
  auto w = word(kAB, {{"a", 5}, {"b", 5}, {"a", 7}});
  CHECK(project_labels(w) == std::vector<std::string>{"a", "b", "a"});
  CHECK(project_data(w) == std::vector<DataValue>{5, 5, 7});
  CHECK(content_data(w) == std::set<DataValue>{5, 7});
  CHECK(content_labels(w) == std::set<std::string>{"a", "b"});
  DataWord eps(kAB);
  CHECK(project_labels(eps).empty());
  CHECK(content_data(eps).empty());
}

TEST_CASE("canonicalize renames by first occurrence") {
  CHECK(canonicalize(word(kAB, {{"a", 42}, {"b", 17}, {"a", 42}})) == word(kAB, {{"a", 1}, {"b", 2}, {"a", 1}}));
  Alphabet s{"s"};
  CHECK(canonicalize(word(s, {{"s", 9}, {"s", 9}, {"s", 3}})) == word(s, {{"s", 1}, {"s", 1}, {"s", 2}}));
  CHECK(canonicalize(DataWord(kAB)) == DataWord(kAB));
  CHECK(canonicalize(DataWord(kAB)).to_string() == "eps");
}

TEST_CASE("canonicalize is idempotent and bijection invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    DataWord w(kAB);
    std::size_t n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) w.push_back(Letter{static_cast<int>(rng() % 2), rng() % 5});
    auto c = canonicalize(w);
    CHECK(canonicalize(c) == c);
    CHECK(is_canonical(c));
    DataWord shifted(kAB);
    for (const auto& l : w.letters()) shifted.push_back(Letter{l.label, l.datum * 31 + 1000});
    CHECK(canonicalize(shifted) == c);
  }
}

TEST_CASE("enumeration counts match |Sigma|^n * Bell(n)") {
  auto bell = oracle::bell_by_stirling(6);
  CHECK(bell == std::vector<std::uint64_t>{1, 1, 2, 5, 15, 52, 203});
  CHECK(bell_numbers(6) == bell);
  for (std::size_t sigma_size : {1u, 2u, 3u}) {
    Alphabet sigma;
    for (std::size_t i = 0; i < sigma_size; ++i) sigma.push_back(std::string(1, static_cast<char>('a' + i)));
    for (std::size_t n = 0; n <= 6; ++n) {
      if (sigma_size == 3 && n > 5) continue;
      std::uint64_t count = 0;
      std::set<std::string> seen;
      for_each_canonical_of_length(sigma, n, [&](const DataWord& w) {
        ++count;
        CHECK(w.size() == n);
        CHECK(canonicalize(w) == w);
        seen.insert(w.to_string());
        return true;
      });
      std::uint64_t expect = bell[n];
      for (std::size_t i = 0; i < n; ++i) expect *= sigma_size;
      CHECK(count == expect);
      CHECK(seen.size() == count);
    }
  }
}

TEST_CASE("enumeration examples and order") {
  auto words = enumerate_canonical({"s"}, 2);
  REQUIRE(words.size() == 4);
  CHECK(words[0].to_string() == "eps");
  CHECK(words[1].to_string() == "(s,1)");
  CHECK(words[2].to_string() == "(s,1)(s,1)");
  CHECK(words[3].to_string() == "(s,1)(s,2)");
  auto ab = enumerate_canonical(kAB, 1);
  REQUIRE(ab.size() == 3);
  CHECK(ab[1].to_string() == "(a,1)");
  CHECK(ab[2].to_string() == "(b,1)");
  CHECK(enumerate_canonical(kAB, 0).size() == 1);
  // label sequence varies slower than the data partition
  auto len2 = enumerate_canonical(kAB, 2);
  CHECK(len2[3].to_string() == "(a,1)(a,1)");
  CHECK(len2[4].to_string() == "(a,1)(a,2)");
  CHECK(len2[5].to_string() == "(a,1)(b,1)");
}

TEST_CASE("alphabet and word validation") {
  CHECK_THROWS_AS(check_alphabet({"a", "a"}), ModelError);
  CHECK_THROWS_AS(check_alphabet({"<"}), ModelError);
  CHECK_THROWS_AS(check_alphabet({""}), ModelError);
  DataWord w(kAB);
  CHECK_THROWS_AS(w.push_back(">", 1), ModelError);
  CHECK_THROWS_AS(w.push_back("c", 1), ModelError);
  CHECK_THROWS(w.at(1));
}
