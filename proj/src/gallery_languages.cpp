#include <algorithm>
#include <set>

#include "pebblekit/gallery.hpp"

namespace pebblekit {

namespace {

const Alphabet kAB{"a", "b"};
const Alphabet kSigma{"s"};

bool pairwise_distinct(const std::vector<DataValue>& v) {
  std::set<DataValue> s(v.begin(), v.end());
  return s.size() == v.size();
}

// Splits a word into the a-block and b-block data, or fails if the label
// sequence is not a*b*.
bool split_ab(const DataWord& w, std::vector<DataValue>& as, std::vector<DataValue>& bs) {
  for (std::size_t i = 1; i <= w.size(); ++i) {
    const auto& name = w.label_name(i);
    if (name == "a") {
      if (!bs.empty()) return false;
      as.push_back(w.at(i).datum);
    } else {
      bs.push_back(w.at(i).datum);
    }
  }
  return pairwise_distinct(as) && pairwise_distinct(bs);
}

bool contains(const std::vector<DataValue>& v, DataValue d, std::size_t from = 0) {
  return std::find(v.begin() + static_cast<std::ptrdiff_t>(std::min(from, v.size())), v.end(), d) != v.end();
}

bool r_plus_from(const std::vector<DataValue>& d, std::size_t start, int m) {
  const std::size_t len = d.size() - start;
  if (len < 2 || d[start] == d[start + 1]) return false;
  if (m == 1) return len == 2;
  const DataValue a1 = d[start + 1];
  for (std::size_t j = start + 2; j < d.size(); ++j) {
    if (d[j] == a1) return r_plus_from(d, j, m - 1);  // later copies would put a1 inside w1
  }
  return false;
}

}  // namespace

std::vector<std::string> named_languages() {
  return {"L_sim", "L_sim_nondet", "L_inc", "L_inc_plus1", "L_inc_minus1", "R_plus_m", "R_plus"};
}

const Alphabet& named_alphabet(const std::string& name) {
  if (name == "R_plus_m" || name == "R_plus") return kSigma;
  auto names = named_languages();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ModelError("unknown language '" + name + "'");
  return kAB;
}

bool in_r_plus_m(const std::vector<DataValue>& data, int m) {
  if (m < 1) throw ModelError("R_plus_m needs m >= 1");
  return r_plus_from(data, 0, m);
}

bool recognize_named(const std::string& name, int m, const DataWord& w) {
  const Alphabet& sigma = named_alphabet(name);
  if (w.alphabet() != sigma) throw ModelError("language '" + name + "' is defined over a different alphabet");
  if (name == "L_sim" || name == "L_sim_nondet") {
    for (std::size_t i = 1; i <= w.size(); ++i)
      for (std::size_t j = i + 1; j <= w.size(); ++j)
        if (w.at(i).datum == w.at(j).datum && w.at(i).label != w.at(j).label) return false;
    return true;
  }
  if (name == "R_plus_m") return in_r_plus_m(project_data(w), m);
  if (name == "R_plus") {
    auto d = project_data(w);
    for (int k = 1; static_cast<std::size_t>(k) <= d.size(); ++k)
      if (in_r_plus_m(d, k)) return true;
    return false;
  }
  std::vector<DataValue> as, bs;
  if (!split_ab(w, as, bs)) return false;
  if (name == "L_inc") {
    return std::all_of(as.begin(), as.end(), [&](DataValue a) { return contains(bs, a); });
  }
  if (name == "L_inc_plus1") {
    return std::all_of(as.begin(), as.end(), [&](DataValue a) { return (bs.empty() || a != bs[0]) && contains(bs, a, 1); });
  }
  // L_inc_minus1
  for (std::size_t i = 0; i < as.size(); ++i)
    if (contains(bs, as[i]) == (i == 0)) return false;
  return true;
}

WeakPA build_lsim_pa(const Alphabet& alphabet) {
  WeakPA a;
  a.alphabet = alphabet;
  a.k = 2;
  a.add_state("s0");
  a.add_state("acc", true);
  a.add(2, "<", {}, "s0", "scan", Action::kRight);
  a.add(2, ">", {}, "scan", "acc", Action::kStay);
  for (const auto& s : alphabet) {
    const std::string c = "c_" + s;
    a.add(2, s, {}, "scan", c, Action::kPlace);
    a.add(2, s, {}, "ret", "scan", Action::kRight);
    for (const auto& t : alphabet) {
      a.add(1, t, {}, c, c, Action::kRight);
      if (t == s) a.add(1, t, {2}, c, c, Action::kRight);
    }
    a.add(1, ">", {}, c, "ret", Action::kLift);
  }
  return a;
}

namespace {

// Same language as build_lsim_pa with redundant nondeterministic choices.
WeakPA build_lsim_nondet() {
  WeakPA a = build_lsim_pa(kAB);
  for (const std::string s : {"a", "b"}) {
    const std::string c = "d_" + s;
    a.add(2, s, {}, "scan", c, Action::kPlace);
    a.add(2, s, {}, "scan", "dead", Action::kPlace);
    for (const std::string t : {"a", "b"}) {
      a.add(1, t, {}, c, c, Action::kRight);
      if (t == s) a.add(1, t, {2}, c, c, Action::kRight);
    }
    a.add(1, ">", {}, c, "ret", Action::kLift);
  }
  return a;
}

enum class IncVariant { kPlain, kPlus1, kMinus1 };

// Pebble 2 walks a*b* and spawns a pebble-1 check at every position; checks
// lift back at > and pebble 2 continues.
WeakPA build_inc(IncVariant variant) {
  WeakPA a;
  a.alphabet = kAB;
  a.k = 2;
  a.add_state("s0");
  a.add_state("acc", true);
  const std::string first_a = variant == IncVariant::kMinus1 ? "pa_first" : "pa";
  a.add(2, "<", {}, "s0", first_a, Action::kRight);
  for (const std::string p : {"pa", "pa_first", "pb"}) {
    if (p == std::string("pa_first") && variant != IncVariant::kMinus1) continue;
    a.add(2, ">", {}, p, "acc", Action::kStay);
    a.add(2, "b", {}, p, "db", Action::kPlace);
  }
  a.add(2, "a", {}, "pa", "da", Action::kPlace);
  if (variant == IncVariant::kMinus1) a.add(2, "a", {}, "pa_first", "dnone", Action::kPlace);
  a.add(2, "a", {}, "ra", "pa", Action::kRight);
  a.add(2, "b", {}, "rb", "pb", Action::kRight);

  // b-check: no later b carries the same datum.
  a.add(1, "b", {2}, "db", "db_seek", Action::kRight);
  a.add(1, "a", {}, "db_seek", "db_seek", Action::kRight);
  a.add(1, "b", {}, "db_seek", "db_seek", Action::kRight);
  a.add(1, ">", {}, "db_seek", "rb", Action::kLift);

  // a-check: no later a with the same datum and a matching b.
  a.add(1, "a", {2}, "da", "da_seek", Action::kRight);
  a.add(1, "a", {}, "da_seek", "da_seek", Action::kRight);
  if (variant == IncVariant::kPlus1) {
    a.add(1, "b", {}, "da_seek", "da_seek2", Action::kRight);
    a.add(1, "a", {}, "da_seek2", "da_seek2", Action::kRight);
    a.add(1, "a", {2}, "da_seek2", "da_seek2", Action::kRight);
    a.add(1, "b", {}, "da_seek2", "da_seek2", Action::kRight);
    a.add(1, "b", {2}, "da_seek2", "da_found", Action::kRight);
  } else {
    a.add(1, "b", {}, "da_seek", "da_seek", Action::kRight);
    a.add(1, "b", {2}, "da_seek", "da_found", Action::kRight);
  }
  for (const std::string s : {"a", "b"}) {
    a.add(1, s, {}, "da_found", "da_found", Action::kRight);
    a.add(1, s, {2}, "da_found", "da_found", Action::kRight);
  }
  a.add(1, ">", {}, "da_found", "ra", Action::kLift);

  if (variant == IncVariant::kMinus1) {
    // the first a: its datum occurs nowhere else
    a.add(1, "a", {2}, "dnone", "dnone_seek", Action::kRight);
    a.add(1, "a", {}, "dnone_seek", "dnone_seek", Action::kRight);
    a.add(1, "b", {}, "dnone_seek", "dnone_seek", Action::kRight);
    a.add(1, ">", {}, "dnone_seek", "ra_first", Action::kLift);
    a.add(2, "a", {}, "ra_first", "pa", Action::kRight);
  }
  return a;
}

}  // namespace

FormulaPtr build_phi(int k) {
  using namespace ltl;
  if (k < 1) throw ModelError("phi_k needs k >= 1");
  if (k == 1) return next(conj(neg(up()), neg(next(tt()))));
  return conj(next(neg(up())), next(down(next(until(neg(up()), conj(up(), build_phi(k - 1)))))));
}

FormulaPtr build_psi(int k) {
  using namespace ltl;
  if (k < 1) throw ModelError("psi_k needs k >= 1");
  if (k == 1) return down(next(conj(neg(up()), neg(next(tt())))));
  return conj(down(next(neg(up()))), next(down(next(until(neg(up()), conj(up(), build_phi(k - 1)))))));
}

WeakPA build_named_pa(const std::string& name, int m) {
  if (name == "L_sim") return build_lsim_pa(kAB);
  if (name == "L_sim_nondet") return build_lsim_nondet();
  if (name == "L_inc") return build_inc(IncVariant::kPlain);
  if (name == "L_inc_plus1") return build_inc(IncVariant::kPlus1);
  if (name == "L_inc_minus1") return build_inc(IncVariant::kMinus1);
  if (name == "R_plus_m") {
    if (m < 1) throw ModelError("R_plus_m needs m >= 1");
    return compile_ltl(*build_psi(m), kSigma);
  }
  if (name == "R_plus") throw ModelError("R_plus has no weak pebble automaton in the gallery");
  throw ModelError("unknown language '" + name + "'");
}

UnboundedTopViewPA build_adjacent_differ(const Alphabet& alphabet) {
  UnboundedTopViewPA u;
  u.alphabet = alphabet;
  u.ensure_state("s0");
  int acc = u.ensure_state("acc");
  u.final_states[static_cast<std::size_t>(acc)] = true;
  u.add("<", 0, "s0", "s1", Action::kRight);
  u.add(">", 0, "s1", "acc", Action::kPlace);
  u.add(">", 0, "s3", "acc", Action::kPlace);
  for (const auto& s : alphabet) {
    u.add(s, 0, "s1", "s2", Action::kPlace);
    u.add(s, 1, "s2", "s3", Action::kRight);
    u.add(s, 0, "s3", "s2", Action::kPlace);
  }
  return u;
}

}  // namespace pebblekit
