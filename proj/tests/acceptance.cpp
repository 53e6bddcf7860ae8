// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails. Every check compares library output with an oracle written
// here or in oracles.hpp.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pebblekit/analysis.hpp"
#include "pebblekit/gallery.hpp"
#include "pebblekit/ltl.hpp"
#include "pebblekit/transforms.hpp"

using namespace pebblekit;

namespace {

const Alphabet kAB{"a", "b"};
const Alphabet kS{"s"};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

std::string show(const DataWord& w) {
  std::ostringstream out;
  for (std::size_t i = 1; i <= w.size(); ++i) out << "(" << w.label_name(i) << "," << w.at(i).datum << ")";
  return w.empty() ? "ε" : out.str();
}

// a-block then b-block, each injective. Returns false on any other shape.
bool ab_blocks(const DataWord& w, std::vector<DataValue>& as, std::vector<DataValue>& bs) {
  bool in_b = false;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    if (w.label_name(i) == "b") in_b = true;
    else if (in_b) return false;
    (in_b ? bs : as).push_back(w.at(i).datum);
  }
  return std::set<DataValue>(as.begin(), as.end()).size() == as.size() &&
         std::set<DataValue>(bs.begin(), bs.end()).size() == bs.size();
}

bool l_inc(const DataWord& w) {
  std::vector<DataValue> as, bs;
  if (!ab_blocks(w, as, bs)) return false;
  std::set<DataValue> b(bs.begin(), bs.end());
  for (auto x : as)
    if (!b.count(x)) return false;
  return true;
}

bool l_inc_plus1(const DataWord& w) {
  std::vector<DataValue> as, bs;
  if (!ab_blocks(w, as, bs)) return false;
  std::set<DataValue> tail;
  for (std::size_t j = 1; j < bs.size(); ++j) tail.insert(bs[j]);
  for (auto x : as) {
    if (!bs.empty() && x == bs.front()) return false;
    if (!tail.count(x)) return false;
  }
  return true;
}

bool l_inc_minus1(const DataWord& w) {
  std::vector<DataValue> as, bs;
  if (!ab_blocks(w, as, bs)) return false;
  std::set<DataValue> b(bs.begin(), bs.end());
  for (std::size_t i = 0; i < as.size(); ++i) {
    bool present = b.count(as[i]) > 0;
    if (i == 0 ? present : !present) return false;
  }
  return true;
}

// Σ_{n in [lo,hi]} labels^n · Bell(n)
std::size_t canonical_count(std::size_t labels, std::size_t lo, std::size_t hi) {
  auto bell = oracle::bell_by_stirling(hi);
  std::size_t total = 0, power = 1;
  for (std::size_t n = 0; n <= hi; ++n, power *= labels)
    if (n >= lo) total += power * bell[n];
  return total;
}

void criterion_gallery(Outcome& out) {
  const std::vector<std::pair<std::string, std::function<bool(const DataWord&)>>> langs{
      {"L_sim", oracle::l_sim}, {"L_inc", l_inc}, {"L_inc_plus1", l_inc_plus1}, {"L_inc_minus1", l_inc_minus1}};
  std::ostringstream stats;
  for (const auto& [name, own] : langs) {
    auto start = Clock::now();
    PAEvaluator ev(build_named_pa(name));
    std::size_t words = 0;
    for_each_canonical(kAB, 4, [&](const DataWord& w) {
      ++words;
      bool got = ev.accepts(w);
      if (got != recognize_named(name, 0, w) || got != own(w)) {
        out.fail(name + " disagrees on " + show(w));
        return false;
      }
      return true;
    });
    double secs = seconds_since(start);
    if (words != canonical_count(2, 0, 4)) out.fail(name + " saw " + std::to_string(words) + " words");
    if (secs > 60.0) out.fail(name + " took " + std::to_string(secs) + " s");
    stats << " " << name << ":" << words;
  }
  if (out.ok) out.detail << "words per language" << stats.str();
}

void criterion_psi(Outcome& out) {
  std::size_t words = 0;
  for (int k = 1; k <= 3; ++k) {
    auto psi = build_psi(k);
    for (std::size_t len = 1; len <= 7; ++len) {
      for_each_canonical_of_length(kS, len, [&](const DataWord& w) {
        if (k == 1) ++words;
        bool got = lang_member(w, *psi);
        if (got != recognize_named("R_plus_m", k, w) || got != oracle::r_plus_by_split(project_data(w), k)) {
          out.fail("psi_" + std::to_string(k) + " disagrees on " + show(w));
          return false;
        }
        return true;
      });
    }
  }
  if (words != canonical_count(1, 1, 7)) out.fail("saw " + std::to_string(words) + " words");
  if (out.ok) out.detail << words << " words per k";
}

void criterion_pebble_count(Outcome& out) {
  for (int k = 1; k <= 4; ++k) {
    int got = compile_ltl(*build_psi(k), kS).k;
    int want = k == 1 ? 2 : k;
    out.detail << "k=" << k << ":" << got << " ";
    if (got != want) out.fail("");
  }
}

void criterion_pipeline(Outcome& out) {
  for (const auto& name : named_languages()) {
    if (named_alphabet(name) != kAB) continue;
    WeakPA a = build_named_pa(name);
    if (a.k != 2) continue;
    WeakPA d = determinize(validate(a).mode == Mode::kAlternating ? dealternate(a) : a);
    AlternatingRA r = pa_to_ra(a);
    if (validate(d).mode != Mode::kDeterministic) out.fail(name + " determinize is not deterministic");
    if (r.k != 1) out.fail(name + " RA has " + std::to_string(r.k) + " registers");
    PAEvaluator ea(a), ed(d);
    RAEvaluator er(r);
    for_each_canonical(kAB, 4, [&](const DataWord& w) {
      bool x = ea.accepts(w);
      if (x != ed.accepts(w) || x != er.accepts(w)) {
        out.fail(name + " pipeline disagrees on " + show(w));
        return false;
      }
      return true;
    });
    out.detail << name << " ";
  }
}

void criterion_top_view(Outcome& out) {
  auto psi = build_psi(2);
  AlternatingRA r = top_view_to_1ra(compile_ltl(*psi, kS));
  if (r.k != 1) out.fail("RA has " + std::to_string(r.k) + " registers");
  RAEvaluator er(r);
  std::size_t words = 0;
  for_each_canonical(kS, 6, [&](const DataWord& w) {
    ++words;
    if (er.accepts(w) != lang_predicate(w, *psi)) {
      out.fail("disagrees on " + show(w));
      return false;
    }
    return true;
  });
  if (out.ok) out.detail << words << " words, " << r.states.size() << " states";
}

void criterion_pcp(Outcome& out) {
  PCPInstance p{{{"ab", "a"}, {"b", "bb"}}};
  PAEvaluator ev(pcp_to_pa(p));
  auto good = encode_pcp_solution(p, {1, 2});
  if (!ev.accepts(good)) out.fail("[1,2] rejected");
  if (ev.accepts(encode_pcp_solution(p, {1}))) out.fail("[1] accepted");
  if (ev.accepts(encode_pcp_solution(p, {2, 1}))) out.fail("[2,1] accepted");

  const int la = label_index(good.alphabet(), "a");
  const int lb = label_index(good.alphabet(), "b");
  std::vector<std::size_t> spots;
  for (std::size_t i = 1; i <= good.size(); ++i)
    if (good.at(i).label == la || good.at(i).label == lb) spots.push_back(i);
  // last position, first position and the one just before the separator
  std::vector<std::size_t> picks{spots.back(), spots.front(), 5};
  for (auto i : picks) {
    auto letters = good.letters();
    auto& l = letters[i - 1];
    l.label = l.label == la ? lb : la;
    if (ev.accepts(DataWord(good.alphabet(), letters))) out.fail("mutant at " + std::to_string(i) + " accepted");
  }

  PCPInstance q{{{"a", "b"}}};
  PAEvaluator eq(pcp_to_pa(q));
  for (std::vector<int> idx : {std::vector<int>{1}, {1, 1}, {1, 1, 1}})
    if (eq.accepts(encode_pcp_solution(q, idx))) out.fail("unsolvable instance accepted");
  if (out.ok) out.detail << "3 mutants rejected";
}

void criterion_coloring(Outcome& out) {
  Graph triangle{3, {{1, 2}, {1, 3}, {2, 3}}};
  Graph k4{4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

  auto tri = coloring_labelling_reduction(triangle);
  auto l = solve_labelling(tri.pa, tri.data);
  if (!l) {
    out.fail("triangle has no labelling");
  } else {
    DataWord w(tri.pa.alphabet);
    for (std::size_t i = 0; i < l->size(); ++i) w.push_back((*l)[i], tri.data[i]);
    bool proper = oracle::l_sim(w);
    for (std::size_t i = 0; i + 1 < l->size(); i += 2) proper = proper && (*l)[i] != (*l)[i + 1];
    if (!accepts(tri.pa, w) || !proper) out.fail("triangle labelling does not re-verify");
  }

  auto start = Clock::now();
  auto red = coloring_labelling_reduction(k4);
  bool none = !solve_labelling(red.pa, red.data);
  double secs = seconds_since(start);
  if (!none || oracle::properly_colorable(k4, {}, false)) out.fail("K4 labelled");
  if (secs >= 10.0) out.fail("K4 took " + std::to_string(secs) + " s");

  auto ok = coloring_constrained_reduction(triangle, 1, 1, 1);
  if (!solve_data_membership(ok.pa, ok.labels) || !oracle::properly_colorable(triangle, {1, 1, 1}, true))
    out.fail("(1,1,1) not found");
  auto bad = coloring_constrained_reduction(triangle, 3, 0, 0);
  if (solve_data_membership(bad.pa, bad.labels)) out.fail("(3,0,0) found");
  if (out.ok) out.detail << "K4 in " << static_cast<int>(secs * 1000) << " ms";
}

void criterion_ica(Outcome& out) {
  IncrementingCA m1;
  m1.alphabet = {"a", "b"};
  m1.ensure_state("q0");
  m1.final_states[0] = true;
  m1.add("q0", "a", CounterOp::kInc, 1, "q0");
  m1.add("q0", "b", CounterOp::kDec, 1, "q0");

  IncrementingCA m2;
  m2.alphabet = {"a", "b"};
  for (const char* s : {"p", "r", "t", "f"}) m2.ensure_state(s);
  m2.final_states[3] = true;
  m2.add("p", "a", CounterOp::kInc, 1, "p");
  m2.add("p", "b", CounterOp::kDec, 1, "r");
  m2.add("r", "b", CounterOp::kDec, 1, "r");
  m2.add("r", std::nullopt, CounterOp::kIfz, 1, "t");
  m2.add("t", "a", CounterOp::kIfz, 1, "f");
  m2.add("p", std::nullopt, CounterOp::kInc, 1, "r");

  std::size_t words = 0;
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
        ++words;
        bool want = oracle::minsky(*m, codes, 0, m->initial, {0}, 3 * static_cast<int>(len) + 4);
        if (ica_run(*m, word, {}) != want) out.fail("slack 0 disagrees with Minsky semantics");
      }
    }
  }
  if (ica_run(m1, {"b"}, {0, std::nullopt})) out.fail("b accepted with slack 0");
  if (!ica_run(m1, {"b"}, {1, std::nullopt})) out.fail("b rejected with slack 1");
  if (!ica_run(m1, {"b"}, {2, std::nullopt})) out.fail("b rejected with slack 2");
  if (out.ok) out.detail << words << " words";
}

DataWord random_word(const Alphabet& sigma, std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_d(0, max_len);
  const std::size_t n = len_d(rng);
  std::vector<DataValue> pool;
  std::uniform_int_distribution<DataValue> big(1, 1'000'000'000);
  for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) pool.push_back(big(rng));
  // drawing from half the pool forces repeated data
  std::uniform_int_distribution<std::size_t> pick(0, (pool.size() - 1) / 2);
  std::uniform_int_distribution<std::size_t> lab(0, sigma.size() - 1);
  DataWord w(sigma);
  for (std::size_t i = 0; i < n; ++i) w.push_back(sigma[lab(rng)], pool[pick(rng)]);
  return w;
}

void criterion_invariance(Outcome& out) {
  struct Subject {
    std::string name;
    Alphabet sigma;
    std::size_t max_len;
    std::function<bool(const DataWord&)> verdict;
  };
  std::vector<Subject> corpus;
  auto add_pa = [&](const std::string& name, const WeakPA& a, std::size_t len) {
    corpus.push_back({name, a.alphabet, len, acceptor(a)});
  };
  auto add_ra = [&](const std::string& name, const AlternatingRA& r, std::size_t len) {
    corpus.push_back({name, r.alphabet, len, acceptor(r)});
  };

  for (const auto& name : named_languages()) {
    if (name == "R_plus") continue;
    if (name == "R_plus_m") {
      for (int m = 1; m <= 3; ++m) add_pa(name + "/" + std::to_string(m), build_named_pa(name, m), 8);
      continue;
    }
    WeakPA a = build_named_pa(name);
    add_pa(name, a, 7);
    if (a.k == 2) {
      add_pa(name + " determinized", determinize(validate(a).mode == Mode::kAlternating ? dealternate(a) : a), 6);
      add_ra(name + " as RA", pa_to_ra(a), 6);
    }
  }
  add_pa("L_sim over {a,b,c}", build_lsim_pa({"a", "b", "c"}), 7);
  add_ra("psi_2 as 1-RA", top_view_to_1ra(compile_ltl(*build_psi(2), kS)), 7);
  PCPInstance p{{{"ab", "a"}, {"b", "bb"}}};
  add_pa("pcp", pcp_to_pa(p), 11);
  Graph triangle{3, {{1, 2}, {1, 3}, {2, 3}}};
  add_pa("coloring labelling", coloring_labelling_reduction(triangle).pa, 6);
  add_pa("coloring constrained", coloring_constrained_reduction(triangle, 1, 1, 1).pa, 7);
  auto adj = build_adjacent_differ();
  corpus.push_back({"adjacent differ", adj.alphabet, 8, [adj](const DataWord& w) { return accepts_unbounded(adj, w); }});
  for (int k = 1; k <= 3; ++k) {
    auto phi = build_phi(k);
    auto psi = build_psi(k);
    corpus.push_back({"psi_" + std::to_string(k), kS, 8, [psi](const DataWord& w) { return lang_predicate(w, *psi); }});
    corpus.push_back({"phi_" + std::to_string(k), kS, 8, [phi](const DataWord& w) {
                        return !w.empty() && eval(w, 1, w.at(1).datum, *phi);
                      }});
  }
  auto until = parse_formula("down(U('a',&('b',up)))");
  corpus.push_back({"until formula", kAB, 7, [until](const DataWord& w) { return lang_predicate(w, *until); }});

  std::mt19937_64 rng(20261015);
  std::size_t checks = 0;
  for (const auto& s : corpus) {
    for (int i = 0; i < 1000; ++i) {
      DataWord w = random_word(s.sigma, rng, s.max_len);
      ++checks;
      if (s.verdict(w) != s.verdict(canonicalize(w))) {
        out.fail(s.name + " changes verdict on " + show(w));
        break;
      }
    }
  }
  if (out.ok) out.detail << corpus.size() << " subjects, " << checks << " words";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"gallery languages match their oracles", criterion_gallery},
      {"psi_k defines R+_k", criterion_psi},
      {"compiled pebble count", criterion_pebble_count},
      {"construction pipeline preserves the language", criterion_pipeline},
      {"top-view 1-register simulation", criterion_top_view},
      {"PCP reduction", criterion_pcp},
      {"coloring reductions", criterion_coloring},
      {"incrementing counter semantics", criterion_ica},
      {"data-bijection invariance", criterion_invariance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    auto start = Clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    if (!out.ok) ++failures;
    std::printf("%s %zu %s (%s; %.2f s)\n", out.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.str().c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
