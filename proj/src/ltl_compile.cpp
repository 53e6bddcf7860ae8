#include <map>
#include <tuple>

#include "pebblekit/ltl.hpp"

namespace pebblekit {

namespace {

enum class Role { kMain, kArrive, kUnroll };

struct Key {
  const Formula* f;
  bool positive;
  Role role;
  int level;

  friend auto operator<=>(const Key&, const Key&) = default;
};

class Compiler {
 public:
  Compiler(const Formula& psi, const Alphabet& alphabet) {
    a_.alphabet = alphabet;
    a_.k = fqr(psi) + 1;
    a_.view = View::kTop;
    a_.add_state("init", false, true);  // one transition on <, so the quantifier is moot
    acc_ = a_.add_state("acc", true);
    a_.initial = 0;
    int root = get({&psi, true, Role::kArrive, a_.k});
    a_.transitions.push_back({a_.k, kLeftEnd, 0, 0, root, Action::kRight});
    while (!todo_.empty()) {
      auto [key, id] = todo_.back();
      todo_.pop_back();
      emit(key, id);
    }
  }

  WeakPA take() { return std::move(a_); }

 private:
  WeakPA a_;
  int acc_ = 0;
  int rej_ = -1;
  std::map<Key, int> ids_;
  std::vector<std::pair<Key, int>> todo_;

  int reject_state() {
    if (rej_ < 0) rej_ = a_.add_state("rej");
    return rej_;
  }

  int get(Key key) {
    if (key.role == Role::kMain) {
      while (key.f->op == Op::kNot) {
        key.f = key.f->left.get();
        key.positive = !key.positive;
      }
      switch (key.f->op) {
        case Op::kTrue:
        case Op::kEps: return key.positive ? acc_ : reject_state();
        case Op::kFalse: return key.positive ? reject_state() : acc_;
        default: break;
      }
    }
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    static const char* prefix[] = {"f", "x", "u"};
    std::string name = std::string(prefix[static_cast<int>(key.role)]) + std::to_string(ids_.size()) +
                       (key.positive ? "+" : "-") + "@" + std::to_string(key.level);
    bool universal = false;
    if (key.role == Role::kMain) {
      Op op = key.f->op;
      universal = (op == Op::kAnd && key.positive) || (op == Op::kOr && !key.positive) ||
                  (op == Op::kUntil && !key.positive);
    } else if (key.role == Role::kUnroll) {
      universal = key.positive;
    }
    int id = a_.add_state(name, false, universal);
    ids_.emplace(key, id);
    todo_.emplace_back(key, id);
    return id;
  }

  void add(int level, int symbol, PebbleMask v, int from, int to, Action act) {
    a_.transitions.push_back({level, symbol, v, from, to, act});
  }

  void emit(const Key& key, int id) {
    const int i = key.level;
    std::vector<PebbleMask> views{0};
    if (i < a_.k) views.push_back(PebbleMask{1} << (i + 1));
    const int sigma = static_cast<int>(a_.alphabet.size());
    const Formula& f = *key.f;
    if (key.role == Role::kArrive) {
      int target = get({key.f, key.positive, Role::kMain, i});
      for (int s = 0; s < sigma; ++s)
        for (auto v : views) add(i, s, v, id, target, Action::kStay);
      if (!key.positive) add(i, kRightEnd, 0, id, acc_, Action::kStay);
      return;
    }
    if (key.role == Role::kUnroll) {
      int left = get({f.left.get(), key.positive, Role::kMain, i});
      int again = get({key.f, key.positive, Role::kArrive, i});
      for (int s = 0; s < sigma; ++s)
        for (auto v : views) {
          add(i, s, v, id, left, Action::kStay);
          add(i, s, v, id, again, Action::kRight);
        }
      return;
    }
    for (int s = 0; s < sigma; ++s) {
      for (auto v : views) {
        switch (f.op) {
          case Op::kLabel:
            if ((a_.alphabet[static_cast<std::size_t>(s)] == f.label) == key.positive)
              add(i, s, v, id, acc_, Action::kStay);
            break;
          case Op::kOr:
          case Op::kAnd:
            add(i, s, v, id, get({f.left.get(), key.positive, Role::kMain, i}), Action::kStay);
            add(i, s, v, id, get({f.right.get(), key.positive, Role::kMain, i}), Action::kStay);
            break;
          case Op::kUp:
            if ((v != 0) == key.positive) add(i, s, v, id, acc_, Action::kStay);
            break;
          case Op::kDown:
            add(i, s, v, id, get({f.left.get(), key.positive, Role::kMain, i - 1}), Action::kPlace);
            break;
          case Op::kNext:
            add(i, s, v, id, get({f.left.get(), key.positive, Role::kArrive, i}), Action::kRight);
            break;
          case Op::kUntil:
            add(i, s, v, id, get({f.right.get(), key.positive, Role::kMain, i}), Action::kStay);
            add(i, s, v, id, get({key.f, key.positive, Role::kUnroll, i}), Action::kStay);
            break;
          default: break;
        }
      }
    }
  }
};

}  // namespace

WeakPA compile_ltl(const Formula& psi, const Alphabet& alphabet) {
  check_alphabet(alphabet);
  if (!is_sentence(psi)) throw ModelError("formula is not a sentence: " + to_string(psi));
  for (const auto& l : formula_labels(psi))
    if (label_index(alphabet, l) < 0) throw ModelError("formula label '" + l + "' is not in the alphabet");
  if (fqr(psi) + 1 > kMaxPebbles)
    throw ModelError("formula needs " + std::to_string(fqr(psi) + 1) + " pebbles, more than supported");
  return Compiler(psi, alphabet).take();
}

}  // namespace pebblekit
