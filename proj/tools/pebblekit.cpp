// pebblekit: command-line front end over the JSON formats.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "pebblekit/analysis.hpp"
#include "pebblekit/gallery.hpp"
#include "pebblekit/json_io.hpp"
#include "pebblekit/ltl.hpp"
#include "pebblekit/transforms.hpp"

#ifndef PEBBLEKIT_VERSION
#define PEBBLEKIT_VERSION "0.0.0"
#endif

using namespace pebblekit;

namespace {

constexpr int kExitNone = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g_format = "json";

void emit(const Json& j) {
  if (g_format == "ndjson") std::cout << j.dump() << "\n";
  else std::cout << j.dump(2) << "\n";
}

Json read_doc(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_json_text(text);
}

bool is_ra_doc(const Json& j) { return j.is_object() && j.contains("registers"); }

// Comma-separated lists, e.g. --data 1,2,1,3 or --labels a,b,a.
std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ',');) out.push_back(part);
  return out;
}

std::vector<DataValue> data_list(const std::string& s) {
  std::vector<DataValue> out;
  for (const auto& x : split(s)) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(x, &used);
      if (used != x.size()) throw std::invalid_argument(x);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("not a data value: '" + x + "'");
    }
  }
  return out;
}

std::vector<int> index_list(const std::string& s) {
  std::vector<int> out;
  for (auto v : data_list(s)) out.push_back(static_cast<int>(v));
  return out;
}

FormulaPtr read_formula(const std::string& text, const std::string& file) {
  if (!file.empty()) return formula_from_json(read_doc(file));
  if (text.empty()) throw UsageError("give --formula or --formula-json");
  return parse_formula(text);
}

WordPredicate side(const std::string& path, Alphabet* sigma) {
  Json j = read_doc(path);
  if (is_ra_doc(j)) {
    auto a = ra_from_json(j);
    if (sigma && sigma->empty()) *sigma = a.alphabet;
    return acceptor(a);
  }
  auto a = pa_from_json(j);
  if (sigma && sigma->empty()) *sigma = a.alphabet;
  return acceptor(a);
}

Json search_json(const EmptinessResult& r) {
  Json j{{"status", search_status_name(r.status)},
         {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)},
         {"words", r.words},
         {"expansions", r.expansions}};
  return j;
}

int exit_for(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return 0;
    case SearchStatus::kNoneWithinBound: return kExitNone;
    case SearchStatus::kBudgetExhausted: return kExitBudget;
  }
  return kExitNone;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak pebble automata, register automata and freeze LTL over data words"};
  app.set_version_flag("--version", PEBBLEKIT_VERSION);
  app.add_option("--format", g_format, "Output format")->check(CLI::IsMember({"json", "ndjson"}));
  app.require_subcommand(1);
  app.fallthrough();
  int code = 0;

  // eval / validate
  std::string pa_file, ra_file, unbounded_file, word_file;
  auto* eval_cmd = app.add_subcommand("eval", "Decide acceptance of a word");
  auto* eval_kind = eval_cmd->add_option_group("automaton");
  eval_kind->add_option("--pa", pa_file, "Weak PA document");
  eval_kind->add_option("--ra", ra_file, "Register automaton document");
  eval_kind->add_option("--unbounded", unbounded_file, "Unbounded top-view PA document");
  eval_kind->require_option(1);
  eval_cmd->add_option("--word", word_file, "Data word document")->required();
  eval_cmd->callback([&] {
    auto w = word_from_json(read_doc(word_file));
    bool r;
    if (!pa_file.empty()) r = accepts(pa_from_json(read_doc(pa_file)), w);
    else if (!ra_file.empty()) r = ra_accepts(ra_from_json(read_doc(ra_file)), w);
    else r = accepts_unbounded(unbounded_from_json(read_doc(unbounded_file)), w);
    emit({{"accepts", r}});
  });

  auto* val = app.add_subcommand("validate", "Check an automaton and classify it");
  auto* val_kind = val->add_option_group("automaton");
  val_kind->add_option("--pa", pa_file, "Weak PA document");
  val_kind->add_option("--ra", ra_file, "Register automaton document");
  val_kind->add_option("--unbounded", unbounded_file, "Unbounded top-view PA document");
  val_kind->require_option(1);
  val->callback([&] {
    if (!pa_file.empty()) {
      auto c = validate(pa_from_json(read_doc(pa_file)));
      emit({{"valid", true}, {"mode", mode_name(c.mode)}, {"top_view", c.top_view}});
    } else if (!ra_file.empty()) {
      emit({{"valid", true}, {"mode", ra_mode_name(ra_validate(ra_from_json(read_doc(ra_file))))}});
    } else {
      unbounded_from_json(read_doc(unbounded_file));
      emit({{"valid", true}});
    }
  });

  // constructions
  bool report = false;
  auto* norm = app.add_subcommand("normalize", "Equivalent deterministic PA in normal form");
  norm->add_option("--pa", pa_file, "Weak PA document")->required();
  norm->add_flag("--report", report, "Print the normalization report instead of the automaton");
  norm->callback([&] {
    auto a = pa_from_json(read_doc(pa_file));
    auto [n, r] = normalize(a);
    emit(report ? to_json(r, a, n) : to_json(n));
  });

  auto* check = app.add_subcommand("check-normal-form", "Report which normal-form conditions hold");
  check->add_option("--pa", pa_file, "Weak PA document")->required();
  check->callback([&] { emit(to_json(check_normal_form(pa_from_json(read_doc(pa_file))))); });

  auto simple = [&](const char* name, const char* help, std::function<Json(const WeakPA&)> f) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--pa", pa_file, "Weak PA document")->required();
    sub->callback([&, f] { emit(f(pa_from_json(read_doc(pa_file)))); });
  };
  simple("dealternate", "Equivalent PA without universal states", [](const WeakPA& a) { return to_json(dealternate(a)); });
  simple("determinize", "Equivalent deterministic PA", [](const WeakPA& a) { return to_json(determinize(a)); });
  simple("to-ra", "Alternating RA with k-1 registers", [](const WeakPA& a) { return to_json(pa_to_ra(a)); });
  simple("to-1ra", "Alternating RA with one register", [](const WeakPA& a) { return to_json(top_view_to_1ra(a)); });

  // freeze LTL
  std::string formula, formula_file, alphabet;
  std::size_t position = 0;
  DataValue datum = 0;
  bool has_datum = false;
  auto* leval = app.add_subcommand("ltl-eval", "Evaluate a formula on a word");
  leval->add_option("--formula", formula, "Formula in prefix syntax");
  leval->add_option("--formula-json", formula_file, "Formula document");
  leval->add_option("--word", word_file, "Data word document")->required();
  leval->add_option("--position", position, "1-based position (default: language membership)");
  auto* dopt = leval->add_option("--datum", datum, "Register content (default: datum at the position)");
  leval->callback([&] {
    auto f = read_formula(formula, formula_file);
    auto w = word_from_json(read_doc(word_file));
    has_datum = dopt->count() > 0;
    if (position == 0) {
      emit({{"member", lang_predicate(w, *f)}});
      return;
    }
    if (position > w.size()) throw UsageError("position outside the word");
    emit({{"holds", pebblekit::eval(w, position, has_datum ? datum : w.at(position).datum, *f)}});
  });

  auto* lfqr = app.add_subcommand("ltl-fqr", "Freeze quantifier rank");
  lfqr->add_option("--formula", formula, "Formula in prefix syntax");
  lfqr->add_option("--formula-json", formula_file, "Formula document");
  lfqr->callback([&] {
    auto f = read_formula(formula, formula_file);
    emit({{"fqr", fqr(*f)}, {"sentence", is_sentence(*f)}});
  });

  auto* lcomp = app.add_subcommand("ltl-compile", "Compile a sentence to a top-view weak PA");
  lcomp->add_option("--formula", formula, "Formula in prefix syntax");
  lcomp->add_option("--formula-json", formula_file, "Formula document");
  lcomp->add_option("--alphabet", alphabet, "Labels, comma separated (default: those in the formula)");
  lcomp->callback([&] {
    auto f = read_formula(formula, formula_file);
    Alphabet sigma = alphabet.empty() ? formula_labels(*f) : split(alphabet);
    if (sigma.empty()) throw UsageError("formula mentions no labels; give --alphabet");
    emit(to_json(compile_ltl(*f, sigma)));
  });

  // gallery
  std::string name;
  int m = 0;
  auto* gallery = app.add_subcommand("gallery", "Named languages and formulas");
  gallery->require_subcommand(1);
  gallery->add_subcommand("list", "Names of the built-in languages")->callback([&] {
    Json out = Json::array();
    for (const auto& n : named_languages()) out.push_back({{"name", n}, {"alphabet", named_alphabet(n)}});
    emit(out);
  });
  auto* gbuild = gallery->add_subcommand("build", "Automaton for a named language");
  gbuild->add_option("name", name, "Language name")->required();
  gbuild->add_option("--m", m, "Parameter of R_plus_m");
  gbuild->callback([&] { emit(to_json(build_named_pa(name, m))); });
  auto* grec = gallery->add_subcommand("recognize", "Ground-truth membership in a named language");
  grec->add_option("name", name, "Language name")->required();
  grec->add_option("--m", m, "Parameter of R_plus_m");
  grec->add_option("--word", word_file, "Data word document")->required();
  grec->callback([&] { emit({{"member", recognize_named(name, m, word_from_json(read_doc(word_file)))}}); });
  int kparam = 1;
  std::string which;
  auto* gform = gallery->add_subcommand("formula", "The phi_k or psi_k formula");
  gform->add_option("which", which, "phi or psi")->required()->check(CLI::IsMember({"phi", "psi"}));
  gform->add_option("--k", kparam, "Index k >= 1")->required();
  gform->callback([&] {
    auto f = which == "phi" ? build_phi(kparam) : build_psi(kparam);
    emit({{"text", to_string(*f)}, {"formula", to_json(*f)}, {"fqr", fqr(*f)}});
  });

  // reductions
  std::string instance_file, indices;
  auto* pcp = app.add_subcommand("pcp", "Post correspondence encodings");
  pcp->require_subcommand(1);
  auto* penc = pcp->add_subcommand("encode", "Encode an index sequence as a data word");
  penc->add_option("--instance", instance_file, "Instance document")->required();
  penc->add_option("--indices", indices, "1-based indices, comma separated")->required();
  penc->callback([&] {
    auto p = pcp_from_json(read_doc(instance_file));
    auto idx = index_list(indices);
    emit({{"word", to_json(encode_pcp_solution(p, idx))}, {"solution", is_pcp_solution(p, idx)}});
  });
  auto* pcomp = pcp->add_subcommand("compile", "Weak 3-PA for the encodings of solutions");
  pcomp->add_option("--instance", instance_file, "Instance document")->required();
  pcomp->callback([&] { emit(to_json(pcp_to_pa(pcp_from_json(read_doc(instance_file))))); });

  std::string machine_file, letters;
  int slack = 0;
  int cap = -1;
  auto* ica = app.add_subcommand("ica", "Incrementing counter automata");
  ica->require_subcommand(1);
  auto* irun = ica->add_subcommand("run", "Decide acceptance of a word");
  irun->add_option("--machine", machine_file, "Machine document")->required();
  irun->add_option("--word", letters, "Letters, comma separated");
  irun->add_option("--slack", slack, "Erroneous increase allowed before each step")->check(CLI::NonNegativeNumber);
  irun->add_option("--cap", cap, "Counter cap (default derived from the input)");
  irun->callback([&] {
    IcaOptions opt;
    opt.slack = slack;
    if (cap >= 0) opt.counter_cap = cap;
    emit({{"accepts", ica_run(ica_from_json(read_doc(machine_file)), split(letters), opt)}});
  });

  std::string graph_file;
  int red = 0, green = 0, blue = 0;
  auto* color = app.add_subcommand("color", "Graph coloring reductions");
  color->require_subcommand(1);
  auto* cred = color->add_subcommand("reduce", "Labelling instance for 3-colorability");
  cred->add_option("--graph", graph_file, "Graph document")->required();
  cred->callback([&] {
    auto r = coloring_labelling_reduction(graph_from_json(read_doc(graph_file)));
    emit({{"pa", to_json(r.pa)}, {"data", r.data}});
  });
  auto* ccon = color->add_subcommand("reduce-constrained", "Data membership instance for constrained coloring");
  ccon->add_option("--graph", graph_file, "Graph document")->required();
  ccon->add_option("--red", red, "Vertices colored red")->required();
  ccon->add_option("--green", green, "Vertices colored green")->required();
  ccon->add_option("--blue", blue, "Vertices colored blue")->required();
  ccon->callback([&] {
    auto r = coloring_constrained_reduction(graph_from_json(read_doc(graph_file)), red, green, blue);
    emit({{"pa", to_json(r.pa)}, {"labels", r.labels}, {"trivially_empty", r.trivially_empty}});
  });

  // analysis
  std::string first_file, second_file, oracle, data, labels;
  std::size_t max_len = 4;
  std::size_t budget = kUnlimited;
  int jobs = 1;
  auto* empty = app.add_subcommand("empty", "Search for an accepted word up to a length bound");
  empty->add_option("automaton", first_file, "PA or RA document")->required();
  empty->add_option("--max-len", max_len, "Length bound");
  empty->add_option("--budget", budget, "Configuration expansions allowed");
  empty->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  empty->callback([&] {
    Json j = read_doc(first_file);
    auto r = is_ra_doc(j) ? bounded_emptiness(ra_from_json(j), max_len, budget, jobs)
                          : bounded_emptiness(pa_from_json(j), max_len, budget, jobs);
    emit(search_json(r));
    code = exit_for(r.status);
  });

  auto* equiv = app.add_subcommand("equiv", "Compare two automata (or one and a named oracle) on short words");
  equiv->add_option("first", first_file, "PA or RA document")->required();
  equiv->add_option("second", second_file, "PA or RA document");
  equiv->add_option("--oracle", oracle, "Named language to compare against instead of a second file");
  equiv->add_option("--m", m, "Parameter of R_plus_m");
  equiv->add_option("--max-len", max_len, "Length bound");
  equiv->add_option("--alphabet", alphabet, "Labels, comma separated (default: the first automaton's)");
  equiv->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  equiv->callback([&] {
    if (second_file.empty() == oracle.empty()) throw UsageError("give exactly one of a second file or --oracle");
    Alphabet sigma = split(alphabet);
    auto a = side(first_file, &sigma);
    WordPredicate b;
    if (!oracle.empty()) {
      recognize_named(oracle, m, DataWord(named_alphabet(oracle)));
      b = [oracle = oracle, m = m](const DataWord& w) { return recognize_named(oracle, m, w); };
    } else {
      b = side(second_file, nullptr);
    }
    auto r = bounded_equiv(a, b, sigma, max_len, jobs);
    Json j{{"equivalent", !r.counterexample}, {"words", r.words}};
    if (r.counterexample) {
      j["counterexample"] = to_json(*r.counterexample);
      j["first"] = r.left;
      j["second"] = r.right;
    } else {
      j["counterexample"] = nullptr;
    }
    emit(j);
    code = r.counterexample ? kExitNone : 0;
  });

  auto* label = app.add_subcommand("label", "Find labels making the data sequence accepted");
  label->add_option("pa", first_file, "Weak PA document")->required();
  label->add_option("--data", data, "Data values, comma separated (empty if omitted)");
  label->callback([&] {
    auto r = solve_labelling(pa_from_json(read_doc(first_file)), data_list(data));
    emit({{"labels", r ? Json(*r) : Json(nullptr)}});
    code = r ? 0 : kExitNone;
  });

  auto* fill = app.add_subcommand("datafill", "Find data making the label sequence accepted");
  fill->add_option("pa", first_file, "Weak PA document")->required();
  fill->add_option("--labels", labels, "Labels, comma separated (empty if omitted)");
  fill->callback([&] {
    auto r = solve_data_membership(pa_from_json(read_doc(first_file)), split(labels));
    emit({{"data", r ? Json(*r) : Json(nullptr)}});
    code = r ? 0 : kExitNone;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return code;
}
