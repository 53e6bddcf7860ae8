#include "pebblekit/ltl.hpp"

#include <algorithm>
#include <cctype>

namespace pebblekit {

namespace ltl {

namespace {
FormulaPtr make(Op op, FormulaPtr l = nullptr, FormulaPtr r = nullptr, std::string name = {}) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->left = std::move(l);
  f->right = std::move(r);
  f->label = std::move(name);
  return f;
}
}  // namespace

FormulaPtr tt() { return make(Op::kTrue); }
FormulaPtr ff() { return make(Op::kFalse); }
FormulaPtr eps() { return make(Op::kEps); }
FormulaPtr label(const std::string& name) {
  if (name.empty()) throw ModelError("empty label in formula");
  return make(Op::kLabel, nullptr, nullptr, name);
}
FormulaPtr neg(FormulaPtr f) { return make(Op::kNot, std::move(f)); }
FormulaPtr disj(FormulaPtr f, FormulaPtr g) { return make(Op::kOr, std::move(f), std::move(g)); }
FormulaPtr conj(FormulaPtr f, FormulaPtr g) { return make(Op::kAnd, std::move(f), std::move(g)); }
FormulaPtr up() { return make(Op::kUp); }
FormulaPtr down(FormulaPtr f) { return make(Op::kDown, std::move(f)); }
FormulaPtr next(FormulaPtr f) { return make(Op::kNext, std::move(f)); }
FormulaPtr until(FormulaPtr f, FormulaPtr g) { return make(Op::kUntil, std::move(f), std::move(g)); }

}  // namespace ltl

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  FormulaPtr parse() {
    auto f = formula();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("formula: " + why + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  FormulaPtr unary() {
    expect('(');
    auto f = formula();
    expect(')');
    return f;
  }
  std::pair<FormulaPtr, FormulaPtr> binary() {
    expect('(');
    auto f = formula();
    expect(',');
    auto g = formula();
    expect(')');
    return {f, g};
  }

  FormulaPtr formula() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '\'') {
      std::size_t close = s_.find('\'', pos_ + 1);
      if (close == std::string::npos) fail("unterminated label");
      std::string name = s_.substr(pos_ + 1, close - pos_ - 1);
      if (name.empty()) fail("empty label");
      pos_ = close + 1;
      return ltl::label(name);
    }
    if (c == '~') {
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') return ltl::neg(unary());
      return ltl::neg(formula());
    }
    if (c == '|' || c == '&') {
      ++pos_;
      auto [f, g] = binary();
      return c == '|' ? ltl::disj(f, g) : ltl::conj(f, g);
    }
    std::size_t start = pos_;
    std::string kw = word();
    if (kw == "true") return ltl::tt();
    if (kw == "false") return ltl::ff();
    if (kw == "eps") return ltl::eps();
    if (kw == "up") return ltl::up();
    if (kw == "down") return ltl::down(unary());
    if (kw == "X") return ltl::next(unary());
    if (kw == "U") {
      auto [f, g] = binary();
      return ltl::until(f, g);
    }
    pos_ = start;
    fail(kw.empty() ? "unexpected character" : "unknown keyword '" + kw + "'");
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) {
  switch (f.op) {
    case Op::kTrue: return "true";
    case Op::kFalse: return "false";
    case Op::kEps: return "eps";
    case Op::kLabel: return "'" + f.label + "'";
    case Op::kNot: return "~(" + to_string(*f.left) + ")";
    case Op::kOr: return "|(" + to_string(*f.left) + "," + to_string(*f.right) + ")";
    case Op::kAnd: return "&(" + to_string(*f.left) + "," + to_string(*f.right) + ")";
    case Op::kUp: return "up";
    case Op::kDown: return "down(" + to_string(*f.left) + ")";
    case Op::kNext: return "X(" + to_string(*f.left) + ")";
    case Op::kUntil: return "U(" + to_string(*f.left) + "," + to_string(*f.right) + ")";
  }
  return "?";
}

bool formula_equal(const Formula& f, const Formula& g) {
  if (f.op != g.op || f.label != g.label) return false;
  if (static_cast<bool>(f.left) != static_cast<bool>(g.left)) return false;
  if (static_cast<bool>(f.right) != static_cast<bool>(g.right)) return false;
  if (f.left && !formula_equal(*f.left, *g.left)) return false;
  if (f.right && !formula_equal(*f.right, *g.right)) return false;
  return true;
}

int fqr(const Formula& f) {
  switch (f.op) {
    case Op::kTrue:
    case Op::kFalse:
    case Op::kEps:
    case Op::kLabel:
    case Op::kUp: return 0;
    case Op::kNot:
    case Op::kNext: return fqr(*f.left);
    case Op::kOr:
    case Op::kAnd:
    case Op::kUntil: return std::max(fqr(*f.left), fqr(*f.right));
    case Op::kDown: return fqr(*f.left) + 1;
  }
  return 0;
}

namespace {

bool bound(const Formula& f, bool under_down) {
  switch (f.op) {
    case Op::kUp: return under_down;
    case Op::kDown: return bound(*f.left, true);
    default:
      if (f.left && !bound(*f.left, under_down)) return false;
      if (f.right && !bound(*f.right, under_down)) return false;
      return true;
  }
}

void collect_labels(const Formula& f, Alphabet& out) {
  if (f.op == Op::kLabel && std::find(out.begin(), out.end(), f.label) == out.end()) out.push_back(f.label);
  if (f.left) collect_labels(*f.left, out);
  if (f.right) collect_labels(*f.right, out);
}

bool sat(const DataWord& w, std::size_t i, DataValue a, const Formula& f) {
  const std::size_t n = w.size();
  switch (f.op) {
    case Op::kEps:
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kLabel: return w.label_name(i) == f.label;
    case Op::kOr: return sat(w, i, a, *f.left) || sat(w, i, a, *f.right);
    case Op::kAnd: return sat(w, i, a, *f.left) && sat(w, i, a, *f.right);
    case Op::kNot: return !sat(w, i, a, *f.left);
    case Op::kNext: return i < n && sat(w, i + 1, a, *f.left);
    case Op::kUntil:
      for (std::size_t j = i; j <= n; ++j) {
        if (sat(w, j, a, *f.right)) return true;
        if (!sat(w, j, a, *f.left)) return false;
      }
      return false;
    case Op::kDown: return sat(w, i, w.at(i).datum, *f.left);
    case Op::kUp: return a == w.at(i).datum;
  }
  return false;
}

}  // namespace

bool is_sentence(const Formula& f) { return bound(f, false); }

Alphabet formula_labels(const Formula& f) {
  Alphabet out;
  collect_labels(f, out);
  return out;
}

bool eval(const DataWord& w, std::size_t i, DataValue a, const Formula& f) {
  if (i < 1 || i > w.size())
    throw ModelError("position " + std::to_string(i) + " outside 1.." + std::to_string(w.size()));
  return sat(w, i, a, f);
}

bool lang_member(const DataWord& w, const Formula& psi) {
  if (!is_sentence(psi)) throw ModelError("formula is not a sentence: " + to_string(psi));
  if (w.empty()) throw ModelError("language membership is defined for non-empty words only");
  return sat(w, 1, w.at(1).datum, psi);
}

bool lang_predicate(const DataWord& w, const Formula& psi) {
  if (w.empty()) {
    if (!is_sentence(psi)) throw ModelError("formula is not a sentence: " + to_string(psi));
    return false;
  }
  return lang_member(w, psi);
}

}  // namespace pebblekit
