#include <array>
#include <functional>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "pebblekit/gallery.hpp"

using namespace pebblekit;
using oracle::minsky;
using oracle::properly_colorable;
using oracle::r_plus_by_split;

namespace {

const Alphabet kAB{"a", "b"};
const Alphabet kS{"s"};

DataWord sw(std::vector<DataValue> data) {
  DataWord x(kS);
  for (auto d : data) x.push_back("s", d);
  return x;
}

DataWord abw(std::vector<std::pair<std::string, DataValue>> p) { return DataWord::from_pairs(kAB, p); }

std::vector<DataValue> suffix(const std::vector<DataValue>& d, std::size_t from) {
  return {d.begin() + static_cast<std::ptrdiff_t>(from), d.end()};
}

const Graph kTriangle{3, {{1, 2}, {1, 3}, {2, 3}}};
const Graph kK4{4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
const Graph kPath{2, {{1, 2}}};

}  // namespace

TEST_CASE("named oracles on fixed words") {
  CHECK(recognize_named("L_sim", 0, abw({{"a", 1}, {"b", 2}, {"a", 1}})));
  CHECK_FALSE(recognize_named("L_sim", 0, abw({{"a", 1}, {"b", 1}})));
  CHECK(recognize_named("R_plus_m", 2, sw({1, 2, 3, 2, 4})));
  CHECK(recognize_named("R_plus_m", 2, sw({1, 2, 2, 3})));
  CHECK_FALSE(recognize_named("R_plus_m", 1, sw({1, 1})));
  CHECK(recognize_named("L_inc", 0, abw({{"a", 1}, {"b", 1}, {"b", 2}})));
  CHECK_FALSE(recognize_named("L_inc", 0, abw({{"a", 1}, {"a", 1}, {"b", 1}})));
  CHECK_FALSE(recognize_named("L_inc", 0, abw({{"b", 1}, {"a", 1}})));
  CHECK(recognize_named("L_inc_plus1", 0, abw({{"a", 1}, {"b", 2}, {"b", 1}})));
  CHECK_FALSE(recognize_named("L_inc_plus1", 0, abw({{"a", 1}, {"b", 1}, {"b", 2}})));
  CHECK(recognize_named("L_inc_minus1", 0, abw({{"a", 1}, {"a", 2}, {"b", 2}})));
  CHECK_FALSE(recognize_named("L_inc_minus1", 0, abw({{"a", 1}, {"b", 1}})));
  CHECK_THROWS_AS(recognize_named("nope", 0, abw({})), ModelError);
  CHECK_THROWS_AS(recognize_named("L_sim", 0, sw({1})), ModelError);
  CHECK_THROWS_AS(recognize_named("R_plus_m", 0, sw({1})), ModelError);
}

TEST_CASE("R+_m matches the split definition") {
  for_each_canonical(kS, 7, [](const DataWord& w) {
    auto d = project_data(w);
    for (int m = 1; m <= 3; ++m) REQUIRE(in_r_plus_m(d, m) == r_plus_by_split(d, m));
    return true;
  });
}

TEST_CASE("gallery automata match their oracles") {
  for (const std::string name : {"L_sim", "L_sim_nondet", "L_inc", "L_inc_plus1", "L_inc_minus1"}) {
    CAPTURE(name);
    PAEvaluator ev(build_named_pa(name));
    for_each_canonical(kAB, 4, [&](const DataWord& w) {
      CAPTURE(w.to_string());
      REQUIRE(ev.accepts(w) == recognize_named(name, 0, w));
      return true;
    });
  }
  CHECK(validate(build_named_pa("L_sim")).mode == Mode::kDeterministic);
  CHECK(validate(build_named_pa("L_sim_nondet")).mode == Mode::kNondeterministic);
  CHECK_THROWS_AS(build_named_pa("R_plus"), ModelError);
}

TEST_CASE("gallery automata agree with the recursive oracle on short words") {
  for (const std::string name : {"L_sim", "L_inc", "L_inc_minus1"}) {
    auto a = build_named_pa(name);
    for_each_canonical(kAB, 3, [&](const DataWord& w) {
      REQUIRE(oracle::pa_accepts(a, w) == recognize_named(name, 0, w));
      return true;
    });
  }
}

TEST_CASE("phi_k characterizes R+_k on every suffix") {
  for (int k = 1; k <= 3; ++k) {
    auto phi = build_phi(k);
    CHECK(fqr(*phi) == k - 1);
    for_each_canonical(kS, 7, [&](const DataWord& w) {
      auto d = project_data(w);
      for (std::size_t i = 1; i <= w.size(); ++i)
        REQUIRE(eval(w, i, w.at(i).datum, *phi) == r_plus_by_split(suffix(d, i - 1), k));
      return true;
    });
  }
}

TEST_CASE("psi_k defines R+_k") {
  CHECK(fqr(*build_psi(1)) == 1);
  CHECK(fqr(*build_psi(2)) == 1);
  CHECK(fqr(*build_psi(3)) == 2);
  for (int k = 1; k <= 3; ++k) {
    auto psi = build_psi(k);
    for_each_canonical(kS, 7, [&](const DataWord& w) {
      if (w.empty()) return true;
      REQUIRE(lang_member(w, *psi) == r_plus_by_split(project_data(w), k));
      return true;
    });
  }
  CHECK(lang_member(sw({1, 2}), *build_psi(1)));
  CHECK(lang_member(sw({1, 2, 2, 3}), *build_psi(2)));
}

TEST_CASE("compiled psi_k has the expected pebble count and language") {
  CHECK(build_named_pa("R_plus_m", 1).k == 2);
  for (int k = 2; k <= 4; ++k) CHECK(compile_ltl(*build_psi(k), kS).k == k);
  PAEvaluator ev(build_named_pa("R_plus_m", 2));
  for_each_canonical(kS, 6, [&](const DataWord& w) {
    REQUIRE(ev.accepts(w) == (!w.empty() && r_plus_by_split(project_data(w), 2)));
    return true;
  });
}

TEST_CASE("adjacent-differ unbounded automaton") {
  auto u = build_adjacent_differ();
  for_each_canonical(kS, 6, [&](const DataWord& w) {
    REQUIRE(accepts_unbounded(u, w) == oracle::adjacent_differ(w));
    return true;
  });
}

TEST_CASE("PCP encoding matches the worked example") {
  PCPInstance p{{{"ab", "a"}, {"b", "bb"}}};
  auto w = encode_pcp_solution(p, {1, 2});
  auto expect = canonicalize(DataWord::from_pairs(
      pcp_alphabet(p), {{"1", 6}, {"a", 8}, {"b", 9}, {"2", 7}, {"b", 10}, {"$", 11},
                        {"1", 6}, {"a", 8}, {"2", 7}, {"b", 9}, {"b", 10}}));
  CHECK(w == expect);
  CHECK_THROWS_AS(encode_pcp_solution(p, {}), ModelError);
  CHECK_THROWS_AS(encode_pcp_solution(p, {3}), ModelError);
  CHECK_THROWS_AS(validate_pcp(PCPInstance{{{"", "a"}}}), ModelError);
  CHECK_THROWS_AS(validate_pcp(PCPInstance{{{"c", "a"}}}), ModelError);
}

TEST_CASE("PCP automaton accepts exactly the solution encodings") {
  for (const PCPInstance& p : {PCPInstance{{{"ab", "a"}, {"b", "bb"}}}, PCPInstance{{{"a", "b"}, {"ab", "ab"}}},
                               PCPInstance{{{"a", "aa"}, {"aa", "a"}}}}) {
    auto a = pcp_to_pa(p);
    CHECK(a.k == 3);
    CHECK(validate(a).mode == Mode::kAlternating);
    PAEvaluator ev(a);
    std::vector<int> idx;
    std::function<void()> all = [&] {
      if (!idx.empty()) {
        CAPTURE(idx);
        REQUIRE(ev.accepts(encode_pcp_solution(p, idx)) == is_pcp_solution(p, idx));
      }
      if (idx.size() == 3) return;
      for (int i = 1; i <= static_cast<int>(p.pairs.size()); ++i) {
        idx.push_back(i);
        all();
        idx.pop_back();
      }
    };
    all();
  }
}

TEST_CASE("PCP automaton rejects damaged witnesses") {
  PCPInstance p{{{"ab", "a"}, {"b", "bb"}}};
  PAEvaluator ev(pcp_to_pa(p));
  auto good = encode_pcp_solution(p, {1, 2});
  REQUIRE(ev.accepts(good));
  const int a = label_index(good.alphabet(), "a");
  const int b = label_index(good.alphabet(), "b");
  // relabel one letter at a time; every change breaks some condition
  for (std::size_t i = 1; i <= good.size(); ++i) {
    auto letters = good.letters();
    auto& l = letters[i - 1];
    if (l.label != a && l.label != b) continue;
    l.label = l.label == a ? b : a;
    CHECK_FALSE(ev.accepts(DataWord(good.alphabet(), letters)));
  }
  // decouple the right half from the left
  auto letters = good.letters();
  for (std::size_t i = 7; i <= letters.size(); ++i) letters[i - 1].datum += 100;
  CHECK_FALSE(ev.accepts(DataWord(good.alphabet(), letters)));
  // swap two right-side encodings of equal label but different data
  letters = good.letters();
  std::swap(letters[9].datum, letters[10].datum);
  CHECK_FALSE(ev.accepts(DataWord(good.alphabet(), letters)));
}

TEST_CASE("PCP automaton against brute force on small words") {
  PCPInstance p{{{"a", "a"}}};
  PAEvaluator ev(pcp_to_pa(p));
  // shape 1 a $ 1 a with every data pattern: accepted iff the halves line up
  // and each half is injective
  const std::vector<std::string> labels{"1", "a", "$", "1", "a"};
  for_each_restricted_growth(5, [&](const std::vector<DataValue>& d) {
    DataWord w(pcp_alphabet(p));
    for (std::size_t i = 0; i < 5; ++i) w.push_back(labels[i], d[i]);
    bool expect = d[0] == d[3] && d[1] == d[4] && d[0] != d[1];
    REQUIRE(ev.accepts(w) == expect);
    return true;
  });
  // the unsolvable single pair (a,b)
  PCPInstance q{{{"a", "b"}}};
  PAEvaluator eq(pcp_to_pa(q));
  for (std::vector<int> idx : {std::vector<int>{1}, {1, 1}, {1, 1, 1}}) CHECK_FALSE(eq.accepts(encode_pcp_solution(q, idx)));
}

TEST_CASE("ICA examples") {
  IncrementingCA c;
  c.alphabet = {"a", "b"};
  c.ensure_state("q0");
  c.final_states[0] = true;
  c.add("q0", "a", CounterOp::kInc, 1, "q0");
  c.add("q0", "b", CounterOp::kDec, 1, "q0");
  CHECK(ica_run(c, {"a", "b"}, {}));
  CHECK_FALSE(ica_run(c, {"b"}, {}));
  CHECK(ica_run(c, {"b"}, {1, std::nullopt}));
  CHECK_FALSE(ica_run(c, {"b", "b"}, {0, std::nullopt}));
  CHECK(ica_run(c, {"b", "b"}, {1, std::nullopt}));

  IncrementingCA z;
  z.alphabet = {"c"};
  z.ensure_state("q0");
  z.ensure_state("qf");
  z.final_states[1] = true;
  z.add("q0", "c", CounterOp::kIfz, 1, "qf");
  CHECK(ica_run(z, {"c"}, {}));

  IncrementingCA bad = z;
  bad.add("q0", std::nullopt, CounterOp::kInc, 1, "qf");
  CHECK_THROWS_AS(validate_ica(bad), ModelError);
}

TEST_CASE("ICA with slack 0 is exact Minsky semantics") {
  // two one-counter machines; the second uses ε-moves and a zero test
  IncrementingCA m1;
  m1.alphabet = {"a", "b"};
  m1.ensure_state("q0");
  m1.final_states[0] = true;
  m1.add("q0", "a", CounterOp::kInc, 1, "q0");
  m1.add("q0", "b", CounterOp::kDec, 1, "q0");

  IncrementingCA m2;
  m2.alphabet = {"a", "b"};
  m2.ensure_state("p");
  m2.ensure_state("r");
  m2.ensure_state("t");
  m2.ensure_state("f");
  m2.final_states[3] = true;
  m2.add("p", "a", CounterOp::kInc, 1, "p");
  m2.add("p", "b", CounterOp::kDec, 1, "r");
  m2.add("r", "b", CounterOp::kDec, 1, "r");
  m2.add("r", std::nullopt, CounterOp::kIfz, 1, "t");
  m2.add("t", "a", CounterOp::kIfz, 1, "f");
  m2.add("p", std::nullopt, CounterOp::kInc, 1, "r");

  for (const auto* m : {&m1, &m2}) {
    for (std::size_t len = 0; len <= 5; ++len) {
      for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
        std::vector<std::string> word;
        std::vector<int> codes;
        for (std::size_t i = 0; i < len; ++i) {
          int s = static_cast<int>((bits >> i) & 1);
          codes.push_back(s);
          word.push_back(s ? "b" : "a");
        }
        CAPTURE(word);
        REQUIRE(ica_run(*m, word, {}) == minsky(*m, codes, 0, m->initial, {0}, 3 * static_cast<int>(len) + 4));
      }
    }
  }
}

TEST_CASE("ICA slack only adds runs") {
  IncrementingCA m;
  m.alphabet = {"a", "b"};
  m.ensure_state("q");
  m.ensure_state("f");
  m.final_states[1] = true;
  m.add("q", "a", CounterOp::kDec, 1, "q");
  m.add("q", "b", CounterOp::kIfz, 1, "f");
  for (std::size_t len = 0; len <= 4; ++len) {
    std::vector<std::string> word(len, "a");
    word.push_back("b");
    bool s0 = ica_run(m, word, {0, std::nullopt});
    bool s1 = ica_run(m, word, {1, std::nullopt});
    CHECK(s0 == (len == 0));
    CHECK(s1);
    CHECK((!s0 || s1));
  }
}

TEST_CASE("counter configuration encoding") {
  auto w = encode_ca_config("q", "s", {2, 0}, 2);
  CHECK(project_labels(w) == std::vector<std::string>{"q", "s", "c1", "c1"});
  CHECK(project_data(w) == std::vector<DataValue>{1, 2, 3, 4});
  CHECK(encode_ca_config("q", "s", {0, 0, 0}, 3).size() == 2);
  CHECK_THROWS_AS(encode_ca_config("q", "s", {1}, 2), ModelError);
}

TEST_CASE("labelling reduction tracks 3-colorability") {
  CHECK(coloring_labelling_reduction(kPath).data == std::vector<DataValue>{1, 2});
  for (const Graph* g : {&kPath, &kTriangle, &kK4}) {
    auto r = coloring_labelling_reduction(*g);
    CHECK(validate(r.pa).mode == Mode::kDeterministic);
    PAEvaluator ev(r.pa);
    bool found = false;
    const std::size_t n = r.data.size();
    std::vector<int> labels(n, 0);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (found) return;
      if (i == n) {
        DataWord w(r.pa.alphabet);
        for (std::size_t t = 0; t < n; ++t) w.push_back(Letter{labels[t], r.data[t]});
        bool ok = ev.accepts(w);
        // a labelling is accepted iff it is a proper coloring read off the edges
        bool proper = oracle::l_sim(w);
        for (std::size_t t = 0; t + 1 < n; t += 2) proper = proper && labels[t] != labels[t + 1];
        REQUIRE(ok == proper);
        found = ok;
        return;
      }
      for (int c = 0; c < 3; ++c) {
        labels[i] = c;
        go(i + 1);
      }
    };
    go(0);
    CHECK(found == properly_colorable(*g, {}, false));
  }
}

TEST_CASE("constrained reduction tracks constrained colorability") {
  struct Case {
    const Graph* g;
    std::array<int, 3> counts;
  };
  for (const Case& c : {Case{&kTriangle, {1, 1, 1}}, Case{&kTriangle, {3, 0, 0}}, Case{&kPath, {1, 1, 0}},
                        Case{&kPath, {2, 0, 0}}, Case{&kPath, {0, 1, 1}}}) {
    auto r = coloring_constrained_reduction(*c.g, c.counts[0], c.counts[1], c.counts[2]);
    CHECK_FALSE(r.trivially_empty);
    PAEvaluator ev(r.pa);
    bool found = false;
    for_each_restricted_growth(r.labels.size(), [&](const std::vector<DataValue>& d) {
      DataWord w(r.pa.alphabet);
      for (std::size_t t = 0; t < d.size(); ++t) w.push_back(r.labels[t], d[t]);
      found = ev.accepts(w);
      return !found;
    });
    CHECK(found == properly_colorable(*c.g, c.counts, true));
  }
  auto off = coloring_constrained_reduction(kTriangle, 1, 1, 0);
  CHECK(off.trivially_empty);
  CHECK_FALSE(accepts(off.pa, DataWord(off.pa.alphabet)));
  CHECK_THROWS_AS(validate_graph(Graph{2, {{1, 1}}}), ModelError);
  CHECK_THROWS_AS(validate_graph(Graph{2, {{1, 3}}}), ModelError);
}
