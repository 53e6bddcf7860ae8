#include "doctest.h"
#include "oracles.hpp"
#include "pebblekit/pebble_automaton.hpp"

using namespace pebblekit;

namespace {

const Alphabet kAB{"a", "b"};

// Pebble 2 sits on the first position, pebble 1 searches for a later copy of
// its datum.
WeakPA first_recurs() {
  WeakPA a;
  a.alphabet = kAB;
  a.k = 2;
  a.add_state("q0");
  a.add_state("acc", true);
  for (const std::string s : {"a", "b"}) {
    a.add(2, s, {}, "s1", "p", Action::kPlace);
    a.add(1, s, {2}, "p", "look", Action::kRight);
    a.add(1, s, {}, "look", "look", Action::kRight);
    a.add(1, s, {2}, "look", "acc", Action::kStay);
  }
  a.add(2, "<", {}, "q0", "s1", Action::kRight);
  return a;
}

// Universal scan: every position spawns a label check.
WeakPA all_a() {
  WeakPA a;
  a.alphabet = kAB;
  a.k = 2;
  a.add_state("u", false, true);
  a.add_state("acc", true);
  a.add(2, "<", {}, "u", "u", Action::kRight);
  for (const std::string s : {"a", "b"}) {
    a.add(2, s, {}, "u", "u", Action::kRight);
    a.add(2, s, {}, "u", "chk", Action::kPlace);
  }
  a.add(1, "a", {2}, "chk", "acc", Action::kStay);
  a.add(2, ">", {}, "u", "acc", Action::kStay);
  return a;
}

DataWord w(std::vector<std::pair<std::string, DataValue>> p) { return DataWord::from_pairs(kAB, p); }

}  // namespace

TEST_CASE("validate classifies mode and view") {
  auto c = validate(first_recurs());
  CHECK(c.mode == Mode::kDeterministic);
  CHECK(c.top_view);
  CHECK(validate(all_a()).mode == Mode::kAlternating);

  auto nd = first_recurs();
  nd.add(1, "a", {}, "look", "acc", Action::kRight);  // shares key (1,a,{},look)
  CHECK(validate(nd).mode == Mode::kNondeterministic);

  WeakPA g;
  g.alphabet = {"s"};
  g.k = 4;
  g.add_state("q");
  g.add(2, "s", {3, 4}, "q", "q", Action::kStay);
  CHECK_FALSE(validate(g).top_view);
  g.view = View::kTop;
  CHECK_THROWS_AS(validate(g), ModelError);
}

TEST_CASE("validate reports invariant violations") {
  auto base = [] {
    WeakPA a;
    a.alphabet = {"s"};
    a.k = 2;
    a.add_state("q");
    return a;
  };
  auto a = base();
  a.add(1, "s", {}, "q", "q", Action::kPlace);
  CHECK_THROWS_AS(validate(a), ModelError);
  a = base();
  a.add(2, "s", {}, "q", "q", Action::kLift);
  CHECK_THROWS_AS(validate(a), ModelError);
  a = base();
  a.add(1, ">", {}, "q", "q", Action::kRight);
  CHECK_THROWS_AS(validate(a), ModelError);
  a = base();
  a.add(2, "s", {1}, "q", "q", Action::kStay);
  CHECK_THROWS_AS(validate(a), ModelError);
  a = base();
  a.add_state("f", true, true);
  CHECK_THROWS_AS(validate(a), ModelError);
  a = base();
  a.add(3, "s", {}, "q", "q", Action::kStay);
  CHECK_THROWS_AS(validate(a), ModelError);
}

TEST_CASE("applicable computes V and marker reads") {
  WeakPA a;
  a.alphabet = {"s"};
  a.k = 2;
  a.add_state("q");
  a.add(2, "<", {}, "q", "q", Action::kRight);
  a.add(1, "s", {2}, "q", "q", Action::kStay);
  a.add(1, "s", {}, "q", "q", Action::kRight);
  DataWord same = DataWord::from_pairs({"s"}, {{"s", 1}, {"s", 1}});
  DataWord diff = DataWord::from_pairs({"s"}, {{"s", 1}, {"s", 2}});
  PebbleConfig c{1, 0, {2, 1}};
  CHECK(comparison_set(a, same, c) == mask_of({2}));
  CHECK(comparison_set(a, diff, c) == 0);
  auto init = initial_config(a);
  auto app = applicable(a, same, init);
  REQUIRE(app.size() == 1);
  CHECK(app[0].symbol == kLeftEnd);
  // pebbles on markers never compare equal
  PebbleConfig markers{1, 0, {3, 3}};
  CHECK(comparison_set(a, same, markers) == 0);
}

TEST_CASE("step implements the four actions") {
  WeakPA a;
  a.alphabet = {"s"};
  a.k = 2;
  a.add_state("q");
  a.add_state("p");
  a.add(2, "s", {}, "q", "p", Action::kPlace);
  a.add(2, "s", {}, "q", "p", Action::kRight);
  a.add(1, "s", {}, "q", "p", Action::kLift);
  DataWord word = DataWord::from_pairs({"s"}, {{"s", 1}, {"s", 2}, {"s", 3}, {"s", 4}, {"s", 5}});
  PebbleConfig c{2, 0, {0, 3}};
  auto placed = step(a, word, c, a.transitions[0]);
  CHECK(placed == PebbleConfig{1, 1, {3, 3}});
  auto moved = step(a, word, c, a.transitions[1]);
  CHECK(moved == PebbleConfig{2, 1, {0, 4}});
  PebbleConfig low{1, 0, {5, 3}};
  auto lifted = step(a, word, low, a.transitions[2]);
  CHECK(lifted.head == 2);
  CHECK(lifted.state == 1);
  CHECK(lifted.placement[1] == 3);
  CHECK_THROWS_AS(step(a, word, low, a.transitions[0]), ModelError);
}

TEST_CASE("accepts agrees with the recursive oracle") {
  auto recur = first_recurs();
  auto univ = all_a();
  PAEvaluator er(recur), eu(univ);
  for_each_canonical(kAB, 5, [&](const DataWord& x) {
    bool expect_recur = false;
    for (std::size_t j = 2; j <= x.size(); ++j) expect_recur |= x.at(j).datum == x.at(1).datum;
    bool expect_all_a = true;
    for (std::size_t j = 1; j <= x.size(); ++j) expect_all_a &= x.label_name(j) == "a";
    CHECK(er.accepts(x) == expect_recur);
    CHECK(eu.accepts(x) == expect_all_a);
    if (x.size() <= 4) {
      CHECK(oracle::pa_accepts(recur, x) == expect_recur);
      CHECK(oracle::pa_accepts(univ, x) == expect_all_a);
    }
    return true;
  });
  CHECK(er.accepts(w({{"a", 7}, {"b", 3}, {"a", 7}})));
  CHECK_FALSE(er.accepts(w({{"a", 7}, {"b", 3}})));
}

TEST_CASE("vacuous quantifiers and stay loops") {
  WeakPA a;
  a.alphabet = {"s"};
  a.k = 1;
  a.add_state("u", false, true);
  CHECK(accepts(a, DataWord({"s"})));
  a.universal[0] = false;
  CHECK_FALSE(accepts(a, DataWord({"s"})));
  a.add(1, "<", {}, "u", "u", Action::kStay);
  CHECK_FALSE(accepts(a, DataWord({"s"})));
  a.universal[0] = true;
  CHECK_FALSE(accepts(a, DataWord({"s"})));
}

TEST_CASE("budget exhaustion is reported") {
  PAEvaluator e(first_recurs());
  DataWord x = w({{"a", 1}, {"a", 2}, {"a", 3}, {"a", 4}, {"a", 1}});
  CHECK(e.run(x, 2).status == FixpointStatus::kBudgetExhausted);
  CHECK(e.run(x, 1000).status == FixpointStatus::kAccepted);
}

TEST_CASE("unbounded top-view adjacent-differ automaton") {
  UnboundedTopViewPA u;
  u.alphabet = {"s"};
  u.ensure_state("s0");
  int acc = u.ensure_state("acc");
  u.final_states[static_cast<std::size_t>(acc)] = true;
  u.add("<", 0, "s0", "s1", Action::kRight);
  u.add("s", 0, "s1", "s2", Action::kPlace);
  u.add(">", 0, "s1", "acc", Action::kPlace);
  u.add("s", 1, "s2", "s3", Action::kRight);
  u.add("s", 0, "s3", "s2", Action::kPlace);
  u.add(">", 0, "s3", "acc", Action::kPlace);
  for_each_canonical({"s"}, 6, [&](const DataWord& x) {
    CHECK(accepts_unbounded(u, x) == oracle::adjacent_differ(x));
    return true;
  });
  CHECK(accepts_unbounded(u, DataWord::from_pairs({"s"}, {{"s", 1}, {"s", 2}, {"s", 1}})));
  CHECK_FALSE(accepts_unbounded(u, DataWord::from_pairs({"s"}, {{"s", 1}, {"s", 1}})));
}
