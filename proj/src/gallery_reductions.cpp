#include <algorithm>
#include <functional>
#include <set>

#include "pebblekit/gallery.hpp"

namespace pebblekit {

// ---------------------------------------------------------------- PCP

void validate_pcp(const PCPInstance& p) {
  if (p.pairs.empty()) throw ModelError("PCP instance needs at least one pair");
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    for (const auto* s : {&p.pairs[i].first, &p.pairs[i].second}) {
      if (s->empty()) throw ModelError("PCP pair " + std::to_string(i + 1) + " has an empty string");
      for (char c : *s)
        if (c != 'a' && c != 'b')
          throw ModelError("PCP pair " + std::to_string(i + 1) + " uses a letter other than a/b");
    }
  }
}

Alphabet pcp_alphabet(const PCPInstance& p) {
  Alphabet sigma;
  for (std::size_t i = 1; i <= p.pairs.size(); ++i) sigma.push_back(std::to_string(i));
  sigma.push_back("a");
  sigma.push_back("b");
  sigma.push_back("$");
  return sigma;
}

namespace {

void check_indices(const PCPInstance& p, const std::vector<int>& indices) {
  validate_pcp(p);
  if (indices.empty()) throw ModelError("index sequence must be non-empty");
  for (int i : indices)
    if (i < 1 || static_cast<std::size_t>(i) > p.pairs.size())
      throw ModelError("index " + std::to_string(i) + " out of range");
}

}  // namespace

bool is_pcp_solution(const PCPInstance& p, const std::vector<int>& indices) {
  check_indices(p, indices);
  std::string x, y;
  for (int i : indices) {
    x += p.pairs[static_cast<std::size_t>(i - 1)].first;
    y += p.pairs[static_cast<std::size_t>(i - 1)].second;
  }
  return x == y;
}

DataWord encode_pcp_solution(const PCPInstance& p, const std::vector<int>& indices) {
  check_indices(p, indices);
  DataWord w(pcp_alphabet(p));
  DataValue fresh = 1;
  std::vector<DataValue> index_data, enc_data;
  for (int i : indices) {
    index_data.push_back(fresh++);
    w.push_back(std::to_string(i), index_data.back());
    for (char c : p.pairs[static_cast<std::size_t>(i - 1)].first) {
      enc_data.push_back(fresh++);
      w.push_back(std::string(1, c), enc_data.back());
    }
  }
  w.push_back("$", fresh++);
  std::size_t next_enc = 0;
  for (std::size_t t = 0; t < indices.size(); ++t) {
    int i = indices[t];
    w.push_back(std::to_string(i), index_data[t]);
    for (char c : p.pairs[static_cast<std::size_t>(i - 1)].second) {
      DataValue d = next_enc < enc_data.size() ? enc_data[next_enc] : fresh++;
      ++next_enc;
      w.push_back(std::string(1, c), d);
    }
  }
  return canonicalize(w);
}

namespace {

class PcpBuilder {
 public:
  explicit PcpBuilder(const PCPInstance& p) : p_(p) {
    a_.alphabet = pcp_alphabet(p);
    a_.k = 3;
    a_.add_state("init", false, true);
    a_.add_state("acc", true);
    for (std::size_t i = 1; i <= p.pairs.size(); ++i) index_.push_back(std::to_string(i));
    enc_ = {"a", "b"};
    all_ = a_.alphabet;
    all_.pop_back();  // everything but $
  }

  WeakPA build() {
    format();
    distinct_left();
    distinct_right();
    labels_across();
    for (const auto* cls : {&index_, &enc_}) {
      const std::string tag = cls == &index_ ? "i" : "e";
      first_match(*cls, tag);
      last_match(*cls, tag);
      adjacent_pairs(*cls, tag);
    }
    return std::move(a_);
  }

 private:
  using Labels = std::vector<std::string>;
  const PCPInstance& p_;
  WeakPA a_;
  Labels index_, enc_, all_;

  // Every comparison set available to `pebble`, filtered by `keep`.
  void on(int pebble, const Labels& labels, const std::string& from, const std::string& to, Action act,
          const std::function<bool(PebbleMask)>& keep = nullptr) {
    std::vector<PebbleMask> views{0};
    for (int l = pebble + 1; l <= a_.k; ++l) {
      auto n = views.size();
      for (std::size_t j = 0; j < n; ++j) views.push_back(views[j] | (PebbleMask{1} << l));
    }
    a_.ensure_state(from);
    a_.ensure_state(to);
    for (const auto& s : labels)
      for (auto v : views)
        if (!keep || keep(v)) a_.add(pebble, s, pebbles_of(v), from, to, act);
  }
  void on(int pebble, const std::string& label, const std::string& from, const std::string& to, Action act,
          const std::function<bool(PebbleMask)>& keep = nullptr) {
    on(pebble, Labels{label}, from, to, act, keep);
  }
  static std::function<bool(PebbleMask)> has(int pebble) {
    return [pebble](PebbleMask v) { return (v & (PebbleMask{1} << pebble)) != 0; };
  }
  static std::function<bool(PebbleMask)> lacks(int pebble) {
    return [pebble](PebbleMask v) { return (v & (PebbleMask{1} << pebble)) == 0; };
  }
  static Labels minus(const Labels& all, const Labels& drop) {
    Labels out;
    for (const auto& s : all)
      if (std::find(drop.begin(), drop.end(), s) == drop.end()) out.push_back(s);
    return out;
  }
  void start(const std::string& state) { a_.add(3, "<", {}, "init", state, Action::kRight); }
  void universal(const std::string& state) { a_.universal[static_cast<std::size_t>(a_.ensure_state(state))] = true; }

  // Index/letter layout of both halves.
  void format() {
    start("fmt_L");
    for (const char side : {'L', 'R'}) {
      const std::string head = std::string("fmt_") + side;
      const std::string after = head + "_after";
      for (std::size_t i = 0; i < p_.pairs.size(); ++i) {
        const std::string& s = side == 'L' ? p_.pairs[i].first : p_.pairs[i].second;
        auto at = [&](std::size_t t) {
          return t == s.size() ? after : head + "_" + std::to_string(i + 1) + "_" + std::to_string(t);
        };
        on(3, index_[i], head, at(0), Action::kRight);
        on(3, index_[i], after, at(0), Action::kRight);
        for (std::size_t t = 0; t < s.size(); ++t) on(3, std::string(1, s[t]), at(t), at(t + 1), Action::kRight);
      }
    }
    on(3, "$", "fmt_L_after", "fmt_R", Action::kRight);
    on(3, ">", "fmt_R_after", "acc", Action::kStay);
  }

  void distinct_left() {
    start("dl_scan");
    universal("dl_scan");
    on(3, all_, "dl_scan", "dl_scan", Action::kRight);
    on(3, all_, "dl_scan", "dl_chk", Action::kPlace);
    on(3, "$", "dl_scan", "acc", Action::kStay);
    on(2, all_, "dl_chk", "dl_walk", Action::kRight, has(3));
    on(2, all_, "dl_walk", "dl_walk", Action::kRight, lacks(3));
    on(2, "$", "dl_walk", "acc", Action::kStay);
  }

  void distinct_right() {
    start("dr_pre");
    on(3, all_, "dr_pre", "dr_pre", Action::kRight);
    on(3, "$", "dr_pre", "dr_scan", Action::kRight);
    universal("dr_scan");
    on(3, all_, "dr_scan", "dr_scan", Action::kRight);
    on(3, all_, "dr_scan", "dr_chk", Action::kPlace);
    on(3, ">", "dr_scan", "acc", Action::kStay);
    on(2, all_, "dr_chk", "dr_walk", Action::kRight, has(3));
    on(2, all_, "dr_walk", "dr_walk", Action::kRight, lacks(3));
    on(2, ">", "dr_walk", "acc", Action::kStay);
  }

  // Positions sharing a datum across $ share the label.
  void labels_across() {
    start("lx_scan");
    universal("lx_scan");
    on(3, all_, "lx_scan", "lx_scan", Action::kRight);
    on(3, "$", "lx_scan", "acc", Action::kStay);
    for (const auto& s : all_) {
      const std::string walk = "lx_walk_" + s, right = "lx_right_" + s;
      on(3, s, "lx_scan", walk, Action::kPlace);
      on(2, all_, walk, walk, Action::kRight);
      on(2, "$", walk, right, Action::kRight);
      on(2, all_, right, right, Action::kRight, lacks(3));
      on(2, s, right, right, Action::kRight, has(3));
      on(2, ">", right, "acc", Action::kStay);
    }
  }

  // The first class member on each side carries the same datum.
  void first_match(const Labels& cls, const std::string& tag) {
    const Labels other = minus(all_, cls);
    const std::string seek = "f" + tag + "_seek", go = "f" + tag + "_go", find = "f" + tag + "_find";
    start(seek);
    on(3, other, seek, seek, Action::kRight);
    on(3, cls, seek, go, Action::kPlace);
    on(2, cls, go, go + "2", Action::kRight, has(3));
    on(2, all_, go + "2", go + "2", Action::kRight);
    on(2, "$", go + "2", find, Action::kRight);
    on(2, other, find, find, Action::kRight);
    on(2, cls, find, "acc", Action::kStay, has(3));
  }

  // The last class member on each side carries the same datum.
  void last_match(const Labels& cls, const std::string& tag) {
    const Labels other = minus(all_, cls);
    const std::string scan = "l" + tag + "_scan", chk = "l" + tag + "_chk", after = "l" + tag + "_after",
                      right = "l" + tag + "_right", tail = "l" + tag + "_tail";
    start(scan);
    universal(scan);
    on(3, all_, scan, scan, Action::kRight);
    on(3, cls, scan, chk, Action::kPlace);
    on(3, "$", scan, "acc", Action::kStay);
    on(2, cls, chk, after, Action::kRight, has(3));
    on(2, cls, after, "acc", Action::kStay);
    on(2, other, after, after, Action::kRight);
    on(2, "$", after, right, Action::kRight);
    on(2, other, right, right, Action::kRight);
    on(2, cls, right, right, Action::kRight, lacks(3));
    on(2, cls, right, tail, Action::kRight, has(3));
    on(2, other, tail, tail, Action::kRight);
    on(2, ">", tail, "acc", Action::kStay);
  }

  // Consecutive class members on the left are consecutive on the right.
  void adjacent_pairs(const Labels& cls, const std::string& tag) {
    const Labels other = minus(all_, cls);
    const std::string scan = "a" + tag + "_scan", next = "a" + tag + "_next", seek = "a" + tag + "_seek",
                      pre = "a" + tag + "_pre", search = "a" + tag + "_search", succ = "a" + tag + "_succ";
    start(scan);
    universal(scan);
    on(3, all_, scan, scan, Action::kRight);
    on(3, cls, scan, next, Action::kPlace);
    on(3, "$", scan, "acc", Action::kStay);
    on(2, cls, next, seek, Action::kRight, has(3));
    on(2, other, seek, seek, Action::kRight);
    on(2, "$", seek, "acc", Action::kStay);
    on(2, cls, seek, pre, Action::kPlace);
    on(1, all_, pre, pre, Action::kRight);
    on(1, "$", pre, search, Action::kRight);
    on(1, other, search, search, Action::kRight);
    on(1, cls, search, search, Action::kRight, lacks(3));
    on(1, cls, search, succ, Action::kRight, has(3));
    on(1, other, succ, succ, Action::kRight);
    on(1, cls, succ, "acc", Action::kStay, has(2));
  }
};

}  // namespace

WeakPA pcp_to_pa(const PCPInstance& p) {
  validate_pcp(p);
  return PcpBuilder(p).build();
}

// ---------------------------------------------------------------- counters

const char* counter_op_name(CounterOp op) {
  switch (op) {
    case CounterOp::kInc: return "inc";
    case CounterOp::kDec: return "dec";
    case CounterOp::kIfz: return "ifz";
  }
  return "?";
}

int IncrementingCA::ensure_state(const std::string& name) {
  auto it = std::find(states.begin(), states.end(), name);
  if (it != states.end()) return static_cast<int>(it - states.begin());
  states.push_back(name);
  final_states.push_back(false);
  return static_cast<int>(states.size()) - 1;
}

void IncrementingCA::add(const std::string& from, std::optional<std::string> symbol, CounterOp op, int counter,
                         const std::string& to) {
  IcaTransition t;
  t.from = ensure_state(from);
  t.to = ensure_state(to);
  if (symbol) {
    int idx = label_index(alphabet, *symbol);
    if (idx < 0) throw ModelError("symbol '" + *symbol + "' is not in the alphabet");
    t.symbol = idx;
  }
  t.op = op;
  t.counter = counter;
  transitions.push_back(t);
}

void validate_ica(const IncrementingCA& c) {
  check_alphabet(c.alphabet);
  const std::size_t n = c.states.size();
  if (n == 0) throw ModelError("counter automaton has no states");
  if (c.final_states.size() != n) throw ModelError("final flags do not match the state list");
  if (c.initial < 0 || static_cast<std::size_t>(c.initial) >= n) throw ModelError("initial state out of range");
  if (c.counters < 1) throw ModelError("counter automaton needs at least one counter");
  for (const auto& t : c.transitions) {
    if (t.from < 0 || static_cast<std::size_t>(t.from) >= n || t.to < 0 || static_cast<std::size_t>(t.to) >= n)
      throw ModelError("counter transition uses an unknown state");
    if (t.symbol && (*t.symbol < 0 || static_cast<std::size_t>(*t.symbol) >= c.alphabet.size()))
      throw ModelError("counter transition uses an unknown symbol");
    if (t.counter < 1 || t.counter > c.counters) throw ModelError("counter index out of range");
    if (!t.symbol && c.final_states[static_cast<std::size_t>(t.to)])
      throw ModelError("epsilon transition into final state '" + c.states[static_cast<std::size_t>(t.to)] + "'");
  }
}

bool ica_run(const IncrementingCA& c, const std::vector<std::string>& word, const IcaOptions& opt) {
  validate_ica(c);
  if (opt.slack < 0) throw ModelError("slack must be non-negative");
  std::vector<int> letters;
  for (const auto& s : word) {
    int idx = label_index(c.alphabet, s);
    if (idx < 0) throw ModelError("symbol '" + s + "' is not in the alphabet");
    letters.push_back(idx);
  }
  const int cap = opt.counter_cap.value_or(static_cast<int>((word.size() + c.states.size() + 1) *
                                                            static_cast<std::size_t>(opt.slack + 1)));
  const int l = c.counters;
  // Every way of spreading at most `slack` extra units across the counters.
  std::vector<std::vector<int>> spreads;
  {
    std::vector<int> e(static_cast<std::size_t>(l), 0);
    std::function<void(int, int)> gen = [&](int j, int left) {
      if (j == l) {
        spreads.push_back(e);
        return;
      }
      for (int x = 0; x <= left; ++x) {
        e[static_cast<std::size_t>(j)] = x;
        gen(j + 1, left - x);
      }
      e[static_cast<std::size_t>(j)] = 0;
    };
    gen(0, opt.slack);
  }
  using Config = std::tuple<std::size_t, int, std::vector<int>>;
  std::set<Config> seen;
  std::vector<Config> stack;
  Config init{0, c.initial, std::vector<int>(static_cast<std::size_t>(l), 0)};
  seen.insert(init);
  stack.push_back(init);
  while (!stack.empty()) {
    auto [pos, q, v] = stack.back();
    stack.pop_back();
    if (pos == letters.size() && c.final_states[static_cast<std::size_t>(q)]) return true;
    for (const auto& t : c.transitions) {
      if (t.from != q) continue;
      std::size_t next_pos = pos;
      if (t.symbol) {
        if (pos >= letters.size() || letters[pos] != *t.symbol) continue;
        next_pos = pos + 1;
      }
      const auto j = static_cast<std::size_t>(t.counter - 1);
      for (const auto& e : spreads) {
        std::vector<int> w = v;
        bool ok = true;
        for (std::size_t x = 0; x < w.size(); ++x) {
          w[x] += e[x];
          if (w[x] > cap) ok = false;
        }
        if (!ok) continue;
        switch (t.op) {
          case CounterOp::kInc:
            if (++w[j] > cap) ok = false;
            break;
          case CounterOp::kDec:
            if (w[j] == 0) ok = false;
            else --w[j];
            break;
          case CounterOp::kIfz:
            if (w[j] != 0) ok = false;
            break;
        }
        if (!ok) continue;
        Config next{next_pos, t.to, std::move(w)};
        if (seen.insert(next).second) stack.push_back(std::move(next));
      }
    }
  }
  return false;
}

DataWord encode_ca_config(const std::string& state, const std::string& symbol, const std::vector<int>& valuation,
                          int counters) {
  if (counters < 0 || valuation.size() != static_cast<std::size_t>(counters))
    throw ModelError("valuation must have one entry per counter");
  Alphabet sigma{state, symbol};
  for (int j = 1; j <= counters; ++j) sigma.push_back("c" + std::to_string(j));
  DataWord w(sigma);
  DataValue fresh = 1;
  w.push_back(state, fresh++);
  w.push_back(symbol, fresh++);
  for (int j = 1; j <= counters; ++j) {
    int v = valuation[static_cast<std::size_t>(j - 1)];
    if (v < 0) throw ModelError("counter values must be non-negative");
    for (int x = 0; x < v; ++x) w.push_back("c" + std::to_string(j), fresh++);
  }
  return w;
}

// ---------------------------------------------------------------- coloring

void validate_graph(const Graph& g) {
  if (g.vertices < 0) throw ModelError("vertex count must be non-negative");
  for (const auto& [i, j] : g.edges) {
    if (i < 1 || j < 1 || i > g.vertices || j > g.vertices)
      throw ModelError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    if (i == j) throw ModelError("self-loop at vertex " + std::to_string(i));
  }
}

namespace {

const Alphabet kColors{"R", "G", "B"};

}  // namespace

LabellingReduction coloring_labelling_reduction(const Graph& g) {
  validate_graph(g);
  LabellingReduction r;
  for (const auto& [i, j] : g.edges) {
    r.data.push_back(static_cast<DataValue>(i));
    r.data.push_back(static_cast<DataValue>(j));
  }
  WeakPA& a = r.pa;
  a.alphabet = kColors;
  a.k = 2;
  a.add_state("s0");
  a.add_state("acc", true);
  a.add(2, "<", {}, "s0", "odd", Action::kRight);
  a.add(2, ">", {}, "odd", "acc", Action::kStay);
  // chk_<label>_<next>: pebble 1 checks the label of every later copy of the
  // datum; back_<next> moves pebble 2 on.
  std::set<std::string> built;
  auto check = [&](const std::string& s, const std::string& next) {
    const std::string chk = "chk_" + s + "_" + next, back = "back_" + next;
    if (!built.insert(chk).second) return chk;
    const bool new_back = built.insert(back).second;
    for (const auto& t : kColors) {
      a.add(1, t, {}, chk, chk, Action::kRight);
      if (t == s) a.add(1, t, {2}, chk, chk, Action::kRight);
      if (new_back) a.add(2, t, {}, back, next, Action::kRight);
    }
    a.add(1, ">", {}, chk, back, Action::kLift);
    return chk;
  };
  for (const auto& s : kColors) {
    a.add(2, s, {}, "odd", check(s, "even_" + s), Action::kPlace);
    for (const auto& t : kColors)
      if (t != s) a.add(2, s, {}, "even_" + t, check(s, "odd"), Action::kPlace);
  }
  return r;
}

ConstrainedReduction coloring_constrained_reduction(const Graph& g, int n_red, int n_green, int n_blue) {
  validate_graph(g);
  if (n_red < 0 || n_green < 0 || n_blue < 0) throw ModelError("palette sizes must be non-negative");
  ConstrainedReduction r;
  Alphabet sigma = kColors;
  for (int v = 1; v <= g.vertices; ++v) sigma.push_back("v" + std::to_string(v));
  for (const auto& [i, j] : g.edges) {
    r.labels.push_back("v" + std::to_string(i));
    r.labels.push_back("v" + std::to_string(j));
  }
  for (int x = 0; x < n_red; ++x) r.labels.push_back("R");
  for (int x = 0; x < n_green; ++x) r.labels.push_back("G");
  for (int x = 0; x < n_blue; ++x) r.labels.push_back("B");
  WeakPA& a = r.pa;
  a.alphabet = sigma;
  a.k = 2;
  a.add_state("init");
  a.add_state("acc", true);
  if (n_red + n_green + n_blue != g.vertices) {
    r.trivially_empty = true;
    return r;
  }
  a.universal[0] = true;
  const Alphabet vertices(sigma.begin() + 3, sigma.end());
  auto any = [&](int pebble, const Alphabet& labels, const std::string& from, const std::string& to, Action act) {
    for (const auto& s : labels) {
      a.add(pebble, s, {}, from, to, act);
      if (pebble == 1) a.add(pebble, s, {2}, from, to, act);
    }
  };
  auto universal = [&](const std::string& s) { a.universal[static_cast<std::size_t>(a.ensure_state(s))] = true; };

  // exact label sequence
  a.add(2, "<", {}, "init", "seq_0", Action::kRight);
  for (std::size_t t = 0; t < r.labels.size(); ++t)
    a.add(2, r.labels[t], {}, "seq_" + std::to_string(t), "seq_" + std::to_string(t + 1), Action::kRight);
  a.add(2, ">", {}, "seq_" + std::to_string(r.labels.size()), "acc", Action::kStay);

  // vertex labels and data determine each other
  a.add(2, "<", {}, "init", "vx_scan", Action::kRight);
  universal("vx_scan");
  a.add(2, ">", {}, "vx_scan", "acc", Action::kStay);
  any(2, sigma, "vx_scan", "vx_scan", Action::kRight);
  for (const auto& v : vertices) {
    const std::string chk = "vx_chk_" + v;
    a.add(2, v, {}, "vx_scan", chk, Action::kPlace);
    any(1, kColors, chk, chk, Action::kRight);
    for (const auto& u : vertices) a.add(1, u, u == v ? std::vector<int>{2} : std::vector<int>{}, chk, chk, Action::kRight);
    a.add(1, ">", {}, chk, "acc", Action::kStay);
  }

  // palette data pairwise distinct
  a.add(2, "<", {}, "init", "pal_scan", Action::kRight);
  universal("pal_scan");
  a.add(2, ">", {}, "pal_scan", "acc", Action::kStay);
  any(2, sigma, "pal_scan", "pal_scan", Action::kRight);
  any(2, kColors, "pal_scan", "pal_chk", Action::kPlace);
  for (const auto& c : kColors) {
    a.add(1, c, {2}, "pal_chk", "pal_walk", Action::kRight);
    a.add(1, c, {}, "pal_walk", "pal_walk", Action::kRight);
  }
  a.add(1, ">", {}, "pal_walk", "acc", Action::kStay);

  // every edge gets two different colors from the palette
  a.add(2, "<", {}, "init", "e_odd", Action::kRight);
  universal("e_odd");
  any(2, kColors, "e_odd", "acc", Action::kStay);
  a.add(2, ">", {}, "e_odd", "acc", Action::kStay);
  any(2, vertices, "e_odd", "e_pick", Action::kStay);
  any(2, vertices, "e_odd", "e_even", Action::kRight);
  any(2, vertices, "e_even", "e_odd", Action::kRight);
  for (const auto& x : kColors) {
    const std::string find = "find_" + x;
    any(1, sigma, find, find, Action::kRight);
    a.add(1, x, {2}, find, "acc", Action::kStay);
    for (const auto& y : kColors) {
      if (x == y) continue;
      const std::string pair = "e_" + x + y;
      universal(pair);
      any(2, vertices, "e_pick", pair, Action::kStay);
      any(2, vertices, pair, find, Action::kPlace);
      any(2, vertices, pair, "e_second_" + y, Action::kRight);
    }
    any(2, vertices, "e_second_" + x, find, Action::kPlace);
  }
  return r;
}

}  // namespace pebblekit
