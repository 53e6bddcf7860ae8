// Automaton-to-automaton constructions: normal form, de-alternation,
// determinization and the register-automaton simulations.

#ifndef PEBBLEKIT_TRANSFORMS_HPP_
#define PEBBLEKIT_TRANSFORMS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "pebblekit/pebble_automaton.hpp"
#include "pebblekit/register_automaton.hpp"

namespace pebblekit {

/// Flags for the five normal-form conditions plus, for normalize output, the
/// correspondence between target and source states.
///
///   n1  every reachable (state, pebble) pair has a transition for every
///       symbol and comparison set (final states excepted)
///   n2  final states are entered only by pebble k reading >
///   n3  after pebble i >= 2 moves right it places pebble i-1 (except at >)
///   n4  pebbles are lifted only at >
///   n5  after pebble i is lifted, pebble i+1 moves right (except at >)
struct NormalizationReport {
  bool n1 = false;
  bool n2 = false;
  bool n3 = false;
  bool n4 = false;
  bool n5 = false;
  std::vector<std::string> violations;
  /// target state -> source states it tracks (empty for checks only)
  std::vector<std::vector<int>> target_sources;
  /// source state -> target states that track it
  std::vector<std::vector<int>> source_targets;

  bool all() const { return n1 && n2 && n3 && n4 && n5; }
};

/// Static inspection only; does not modify the automaton.
NormalizationReport check_normal_form(const WeakPA& a);

/// Equivalent deterministic automaton in normal form. Rejects alternating
/// input.
std::pair<WeakPA, NormalizationReport> normalize(const WeakPA& a);

/// Equivalent automaton without universal states.
WeakPA dealternate(const WeakPA& a);

/// Subset construction over a normal-form automaton. Input already in normal
/// form is used as is when every reachable subset has a unique action;
/// otherwise it is normalized first. Rejects alternating input.
WeakPA determinize(const WeakPA& a);

/// Alternating RA with k-1 registers (register j-1 holds pebble j's datum).
/// Rejects k = 1.
AlternatingRA pa_to_ra(const WeakPA& a);

/// Alternating RA with a single register. Requires a top-view automaton (or
/// k <= 2, where both views coincide).
AlternatingRA top_view_to_1ra(const WeakPA& a);

}  // namespace pebblekit

#endif  // PEBBLEKIT_TRANSFORMS_HPP_
