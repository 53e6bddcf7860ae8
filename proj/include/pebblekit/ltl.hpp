// LTL with one freeze register over finite data words.

#ifndef PEBBLEKIT_LTL_HPP_
#define PEBBLEKIT_LTL_HPP_

#include <memory>
#include <string>

#include "pebblekit/data_word.hpp"
#include "pebblekit/pebble_automaton.hpp"

namespace pebblekit {

enum class Op { kTrue, kFalse, kEps, kLabel, kNot, kOr, kAnd, kUp, kDown, kNext, kUntil };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op = Op::kTrue;
  std::string label;  // kLabel only
  FormulaPtr left;    // unary operand, or left operand
  FormulaPtr right;   // binary operators
};

namespace ltl {
FormulaPtr tt();
FormulaPtr ff();
FormulaPtr eps();
FormulaPtr label(const std::string& name);
FormulaPtr neg(FormulaPtr f);
FormulaPtr disj(FormulaPtr f, FormulaPtr g);
FormulaPtr conj(FormulaPtr f, FormulaPtr g);
FormulaPtr up();
FormulaPtr down(FormulaPtr f);
FormulaPtr next(FormulaPtr f);
FormulaPtr until(FormulaPtr f, FormulaPtr g);
}  // namespace ltl

/// Prefix text syntax: true, false, eps, up, 'a', ~(f), |(f,g), &(f,g),
/// X(f), U(f,g), down(f). `~f` is accepted for a bare atom.
FormulaPtr parse_formula(const std::string& text);
std::string to_string(const Formula& f);

bool formula_equal(const Formula& f, const Formula& g);

int fqr(const Formula& f);
bool is_sentence(const Formula& f);
/// Labels mentioned by the formula, in first-occurrence order.
Alphabet formula_labels(const Formula& f);

/// w, i ⊨_a φ with 1 <= i <= |w|.
bool eval(const DataWord& w, std::size_t i, DataValue a, const Formula& f);

/// Membership in L(ψ) for a sentence and a non-empty word; the register is
/// seeded with the first datum.
bool lang_member(const DataWord& w, const Formula& psi);

/// Like lang_member, but the empty word is simply not a member.
bool lang_predicate(const DataWord& w, const Formula& psi);

/// Alternating top-view weak PA with k = fqr(ψ)+1 pebbles over `alphabet`.
WeakPA compile_ltl(const Formula& psi, const Alphabet& alphabet);

}  // namespace pebblekit

#endif  // PEBBLEKIT_LTL_HPP_
