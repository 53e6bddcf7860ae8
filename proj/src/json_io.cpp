#include "pebblekit/json_io.hpp"

#include <algorithm>
#include <map>

namespace pebblekit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key, const char* doc) {
  if (!j.is_object()) bad(std::string(doc) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string(doc) + ": missing \"" + key + "\"");
  return *it;
}

template <class T>
T as(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(what + ": wrong type");
  }
}

template <class T>
T get(const Json& j, const char* key, const char* doc) {
  return as<T>(field(j, key, doc), std::string(doc) + "." + key);
}

template <class T>
T get_or(const Json& j, const char* key, T fallback, const char* doc) {
  if (!j.is_object()) bad(std::string(doc) + ": expected an object");
  auto it = j.find(key);
  return it == j.end() ? fallback : as<T>(*it, std::string(doc) + "." + key);
}

std::vector<std::string> names_where(const std::vector<std::string>& states, const std::vector<bool>& flags) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (flags[i]) out.push_back(states[i]);
  return out;
}

int state_of(const std::vector<std::string>& states, const std::string& name, const char* doc) {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw ModelError(std::string(doc) + ": unknown state '" + name + "'");
  return static_cast<int>(it - states.begin());
}

const std::map<Op, const char*> kOpNames{{Op::kTrue, "true"}, {Op::kFalse, "false"}, {Op::kEps, "eps"},
                                         {Op::kLabel, "label"}, {Op::kNot, "not"},     {Op::kOr, "or"},
                                         {Op::kAnd, "and"},     {Op::kUp, "up"},       {Op::kDown, "down"},
                                         {Op::kNext, "next"},   {Op::kUntil, "until"}};

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const DataWord& w) {
  Json pos = Json::array();
  for (std::size_t p = 1; p <= w.size(); ++p) pos.push_back(Json::array({w.label_name(p), w.at(p).datum}));
  return Json{{"alphabet", w.alphabet()}, {"positions", pos}};
}

DataWord word_from_json(const Json& j) {
  auto alphabet = get<Alphabet>(j, "alphabet", "word");
  const auto& pos = field(j, "positions", "word");
  if (!pos.is_array()) bad("word.positions: expected an array");
  std::vector<std::pair<std::string, DataValue>> pairs;
  for (const auto& p : pos) {
    if (!p.is_array() || p.size() != 2) bad("word.positions: each entry is [label, datum]");
    pairs.emplace_back(as<std::string>(p[0], "word label"), as<DataValue>(p[1], "word datum"));
  }
  return DataWord::from_pairs(alphabet, pairs);
}

Json to_json(const WeakPA& a) {
  Json ts = Json::array();
  for (const auto& t : a.transitions)
    ts.push_back({{"pebble", t.pebble},
                  {"symbol", a.symbol_name(t.symbol)},
                  {"compare", pebbles_of(t.compare)},
                  {"from", a.states[static_cast<std::size_t>(t.from)]},
                  {"to", a.states[static_cast<std::size_t>(t.to)]},
                  {"action", action_name(t.action)}});
  return Json{{"k", a.k},
              {"view", a.view == View::kTop ? "top" : "general"},
              {"alphabet", a.alphabet},
              {"states", a.states},
              {"initial", a.states.at(static_cast<std::size_t>(a.initial))},
              {"final", names_where(a.states, a.final_states)},
              {"universal", names_where(a.states, a.universal)},
              {"transitions", ts}};
}

WeakPA pa_from_json(const Json& j) {
  const char* doc = "pa";
  WeakPA a;
  a.k = get<int>(j, "k", doc);
  auto view = get_or<std::string>(j, "view", "general", doc);
  if (view != "general" && view != "top") bad("pa.view: expected \"general\" or \"top\"");
  a.view = view == "top" ? View::kTop : View::kGeneral;
  a.alphabet = get<Alphabet>(j, "alphabet", doc);
  for (const auto& s : get<std::vector<std::string>>(j, "states", doc)) a.add_state(s);
  a.initial = state_of(a.states, get<std::string>(j, "initial", doc), doc);
  for (const auto& s : get_or<std::vector<std::string>>(j, "final", {}, doc))
    a.final_states[static_cast<std::size_t>(state_of(a.states, s, doc))] = true;
  for (const auto& s : get_or<std::vector<std::string>>(j, "universal", {}, doc))
    a.universal[static_cast<std::size_t>(state_of(a.states, s, doc))] = true;
  const auto& ts = field(j, "transitions", doc);
  if (!ts.is_array()) bad("pa.transitions: expected an array");
  for (const auto& t : ts) {
    const char* tdoc = "pa transition";
    auto act = parse_action(get<std::string>(t, "action", tdoc));
    if (!act) bad("pa transition: unknown action '" + get<std::string>(t, "action", tdoc) + "'");
    PATransition x;
    x.pebble = get<int>(t, "pebble", tdoc);
    x.symbol = a.symbol_code(get<std::string>(t, "symbol", tdoc));
    x.compare = mask_of(get_or<std::vector<int>>(t, "compare", {}, tdoc));
    x.from = state_of(a.states, get<std::string>(t, "from", tdoc), tdoc);
    x.to = state_of(a.states, get<std::string>(t, "to", tdoc), tdoc);
    x.action = *act;
    a.transitions.push_back(x);
  }
  validate(a);
  return a;
}

Json to_json(const UnboundedTopViewPA& a) {
  Json ts = Json::array();
  for (const auto& t : a.transitions) {
    std::string sym = t.symbol == kLeftEnd    ? kLeftMarkerName
                      : t.symbol == kRightEnd ? kRightMarkerName
                                              : a.alphabet[static_cast<std::size_t>(t.symbol)];
    ts.push_back({{"symbol", sym},
                  {"chi", t.chi},
                  {"from", a.states[static_cast<std::size_t>(t.from)]},
                  {"to", a.states[static_cast<std::size_t>(t.to)]},
                  {"action", action_name(t.action)}});
  }
  return Json{{"alphabet", a.alphabet},
              {"states", a.states},
              {"initial", a.states.at(static_cast<std::size_t>(a.initial))},
              {"final", names_where(a.states, a.final_states)},
              {"transitions", ts}};
}

UnboundedTopViewPA unbounded_from_json(const Json& j) {
  const char* doc = "unbounded pa";
  UnboundedTopViewPA a;
  a.alphabet = get<Alphabet>(j, "alphabet", doc);
  for (const auto& s : get<std::vector<std::string>>(j, "states", doc)) a.ensure_state(s);
  a.initial = state_of(a.states, get<std::string>(j, "initial", doc), doc);
  for (const auto& s : get_or<std::vector<std::string>>(j, "final", {}, doc))
    a.final_states[static_cast<std::size_t>(state_of(a.states, s, doc))] = true;
  const auto& ts = field(j, "transitions", doc);
  if (!ts.is_array()) bad("unbounded pa.transitions: expected an array");
  for (const auto& t : ts) {
    const char* tdoc = "unbounded pa transition";
    auto act = parse_action(get<std::string>(t, "action", tdoc));
    if (!act) bad("unbounded pa transition: unknown action");
    auto from = get<std::string>(t, "from", tdoc);
    auto to = get<std::string>(t, "to", tdoc);
    state_of(a.states, from, tdoc);
    state_of(a.states, to, tdoc);
    a.add(get<std::string>(t, "symbol", tdoc), get<int>(t, "chi", tdoc), from, to, *act);
  }
  validate(a);
  return a;
}

Json to_json(const AlternatingRA& a) {
  auto name = [&](int s) { return a.states[static_cast<std::size_t>(s)]; };
  Json ts = Json::array();
  for (const auto& t : a.transitions) {
    Json x{{"kind", ra_kind_name(t.kind)}, {"from", name(t.from)}};
    auto regs = [](RegisterMask m) {
      std::vector<int> out;
      for (int r = 1; r <= kMaxRegisters; ++r)
        if (m & (RegisterMask{1} << r)) out.push_back(r);
      return out;
    };
    switch (t.kind) {
      case RAKind::kMarker:
        x["symbol"] = t.symbol == kLeftEnd ? kLeftMarkerName : kRightMarkerName;
        x["to"] = name(t.to);
        break;
      case RAKind::kRead:
        x["symbol"] = a.alphabet[static_cast<std::size_t>(t.symbol)];
        x["registers"] = regs(t.registers);
        x["to"] = name(t.to);
        break;
      case RAKind::kStore:
        x["registers"] = regs(t.registers);
        x["to"] = name(t.to);
        break;
      case RAKind::kBranch: {
        x["junction"] = t.junction == Junction::kAnd ? "and" : "or";
        Json targets = Json::array();
        for (int s : t.targets) targets.push_back(name(s));
        x["targets"] = targets;
        break;
      }
      case RAKind::kMove:
        x["direction"] = t.direction == Direction::kRight ? "right" : "left";
        x["to"] = name(t.to);
        break;
    }
    ts.push_back(x);
  }
  Json u0 = Json::array();
  for (const auto& v : a.u0) u0.push_back(v ? Json(*v) : Json(nullptr));
  return Json{{"registers", a.k},
              {"alphabet", a.alphabet},
              {"states", a.states},
              {"initial", name(a.initial)},
              {"final", names_where(a.states, a.final_states)},
              {"u0", u0},
              {"transitions", ts}};
}

AlternatingRA ra_from_json(const Json& j) {
  const char* doc = "ra";
  AlternatingRA a;
  a.k = get<int>(j, "registers", doc);
  a.alphabet = get<Alphabet>(j, "alphabet", doc);
  for (const auto& s : get<std::vector<std::string>>(j, "states", doc)) a.ensure_state(s);
  a.initial = state_of(a.states, get<std::string>(j, "initial", doc), doc);
  for (const auto& s : get_or<std::vector<std::string>>(j, "final", {}, doc))
    a.final_states[static_cast<std::size_t>(state_of(a.states, s, doc))] = true;
  if (j.contains("u0")) {
    const auto& u0 = j["u0"];
    if (!u0.is_array()) bad("ra.u0: expected an array");
    for (const auto& v : u0)
      a.u0.push_back(v.is_null() ? std::nullopt : std::optional<DataValue>(as<DataValue>(v, "ra.u0 entry")));
  } else if (a.k > 0) {
    a.u0.assign(static_cast<std::size_t>(a.k), std::nullopt);
  }
  const auto& ts = field(j, "transitions", doc);
  if (!ts.is_array()) bad("ra.transitions: expected an array");
  for (const auto& t : ts) {
    const char* tdoc = "ra transition";
    auto kind = get<std::string>(t, "kind", tdoc);
    auto from = get<std::string>(t, "from", tdoc);
    state_of(a.states, from, tdoc);
    auto to = [&] {
      auto s = get<std::string>(t, "to", tdoc);
      state_of(a.states, s, tdoc);
      return s;
    };
    if (kind == "marker") {
      a.add_marker(from, get<std::string>(t, "symbol", tdoc), to());
    } else if (kind == "read") {
      a.add_read(from, get<std::string>(t, "symbol", tdoc), get_or<std::vector<int>>(t, "registers", {}, tdoc), to());
    } else if (kind == "store") {
      a.add_store(from, get_or<std::vector<int>>(t, "registers", {}, tdoc), to());
    } else if (kind == "branch") {
      auto junction = get<std::string>(t, "junction", tdoc);
      if (junction != "and" && junction != "or") bad("ra transition: junction must be \"and\" or \"or\"");
      auto targets = get<std::vector<std::string>>(t, "targets", tdoc);
      for (const auto& s : targets) state_of(a.states, s, tdoc);
      a.add_branch(from, junction == "and" ? Junction::kAnd : Junction::kOr, targets);
    } else if (kind == "move") {
      auto dir = get_or<std::string>(t, "direction", "right", tdoc);
      if (dir != "right" && dir != "left") bad("ra transition: direction must be \"right\" or \"left\"");
      a.add_move(from, to(), dir == "right" ? Direction::kRight : Direction::kLeft);
    } else {
      bad("ra transition: unknown kind '" + kind + "'");
    }
  }
  ra_validate(a);
  return a;
}

Json to_json(const Formula& f) {
  Json j{{"op", kOpNames.at(f.op)}};
  if (f.op == Op::kLabel) j["label"] = f.label;
  Json args = Json::array();
  if (f.left) args.push_back(to_json(*f.left));
  if (f.right) args.push_back(to_json(*f.right));
  if (!args.empty()) j["args"] = args;
  return j;
}

FormulaPtr formula_from_json(const Json& j) {
  auto op = get<std::string>(j, "op", "formula");
  std::vector<FormulaPtr> args;
  if (j.contains("args")) {
    if (!j["args"].is_array()) bad("formula.args: expected an array");
    for (const auto& a : j["args"]) args.push_back(formula_from_json(a));
  }
  auto arity = [&](std::size_t n) {
    if (args.size() != n) bad("formula: '" + op + "' takes " + std::to_string(n) + " argument(s)");
  };
  if (op == "true") return arity(0), ltl::tt();
  if (op == "false") return arity(0), ltl::ff();
  if (op == "eps") return arity(0), ltl::eps();
  if (op == "up") return arity(0), ltl::up();
  if (op == "label") return arity(0), ltl::label(get<std::string>(j, "label", "formula"));
  if (op == "not") return arity(1), ltl::neg(args[0]);
  if (op == "down") return arity(1), ltl::down(args[0]);
  if (op == "next") return arity(1), ltl::next(args[0]);
  if (op == "or") return arity(2), ltl::disj(args[0], args[1]);
  if (op == "and") return arity(2), ltl::conj(args[0], args[1]);
  if (op == "until") return arity(2), ltl::until(args[0], args[1]);
  bad("formula: unknown op '" + op + "'");
}

Json to_json(const PCPInstance& p) {
  Json pairs = Json::array();
  for (const auto& [l, r] : p.pairs) pairs.push_back(Json::array({l, r}));
  return Json{{"pairs", pairs}};
}

PCPInstance pcp_from_json(const Json& j) {
  PCPInstance p;
  const auto& pairs = field(j, "pairs", "pcp");
  if (!pairs.is_array()) bad("pcp.pairs: expected an array");
  for (const auto& x : pairs) {
    if (!x.is_array() || x.size() != 2) bad("pcp.pairs: each entry is [top, bottom]");
    p.pairs.emplace_back(as<std::string>(x[0], "pcp top"), as<std::string>(x[1], "pcp bottom"));
  }
  validate_pcp(p);
  return p;
}

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  return Json{{"vertices", g.vertices}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  Graph g;
  g.vertices = get<int>(j, "vertices", "graph");
  const auto& edges = field(j, "edges", "graph");
  if (!edges.is_array()) bad("graph.edges: expected an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) bad("graph.edges: each entry is [u, v]");
    g.edges.emplace_back(as<int>(e[0], "graph vertex"), as<int>(e[1], "graph vertex"));
  }
  validate_graph(g);
  return g;
}

Json to_json(const IncrementingCA& c) {
  Json ts = Json::array();
  for (const auto& t : c.transitions)
    ts.push_back({{"from", c.states[static_cast<std::size_t>(t.from)]},
                  {"symbol", t.symbol ? Json(c.alphabet[static_cast<std::size_t>(*t.symbol)]) : Json(nullptr)},
                  {"op", counter_op_name(t.op)},
                  {"counter", t.counter},
                  {"to", c.states[static_cast<std::size_t>(t.to)]}});
  return Json{{"alphabet", c.alphabet},
              {"counters", c.counters},
              {"states", c.states},
              {"initial", c.states.at(static_cast<std::size_t>(c.initial))},
              {"final", names_where(c.states, c.final_states)},
              {"transitions", ts}};
}

IncrementingCA ica_from_json(const Json& j) {
  const char* doc = "ica";
  IncrementingCA c;
  c.alphabet = get<Alphabet>(j, "alphabet", doc);
  c.counters = get<int>(j, "counters", doc);
  for (const auto& s : get<std::vector<std::string>>(j, "states", doc)) c.ensure_state(s);
  c.initial = state_of(c.states, get<std::string>(j, "initial", doc), doc);
  for (const auto& s : get_or<std::vector<std::string>>(j, "final", {}, doc))
    c.final_states[static_cast<std::size_t>(state_of(c.states, s, doc))] = true;
  const auto& ts = field(j, "transitions", doc);
  if (!ts.is_array()) bad("ica.transitions: expected an array");
  for (const auto& t : ts) {
    const char* tdoc = "ica transition";
    auto op = get<std::string>(t, "op", tdoc);
    CounterOp o;
    if (op == "inc") o = CounterOp::kInc;
    else if (op == "dec") o = CounterOp::kDec;
    else if (op == "ifz") o = CounterOp::kIfz;
    else bad("ica transition: unknown op '" + op + "'");
    std::optional<std::string> sym;
    if (t.contains("symbol") && !t["symbol"].is_null()) sym = as<std::string>(t["symbol"], "ica symbol");
    auto from = get<std::string>(t, "from", tdoc);
    auto to = get<std::string>(t, "to", tdoc);
    state_of(c.states, from, tdoc);
    state_of(c.states, to, tdoc);
    c.add(from, sym, o, get<int>(t, "counter", tdoc), to);
  }
  validate_ica(c);
  return c;
}

Json to_json(const NormalizationReport& r) {
  return Json{{"n1", r.n1}, {"n2", r.n2}, {"n3", r.n3}, {"n4", r.n4}, {"n5", r.n5}, {"all", r.all()},
              {"violations", r.violations}};
}

Json to_json(const NormalizationReport& r, const WeakPA& source, const WeakPA& target) {
  Json j = to_json(r);
  Json map = Json::object();
  for (std::size_t t = 0; t < r.target_sources.size() && t < target.states.size(); ++t) {
    std::vector<std::string> names;
    for (int s : r.target_sources[t]) names.push_back(source.states[static_cast<std::size_t>(s)]);
    map[target.states[t]] = names;
  }
  j["target_sources"] = map;
  return j;
}

}  // namespace pebblekit
