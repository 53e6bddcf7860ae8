// JSON documents for every value the command line reads or writes.

#ifndef PEBBLEKIT_JSON_IO_HPP_
#define PEBBLEKIT_JSON_IO_HPP_

#include <string>

#include "json.hpp"
#include "pebblekit/data_word.hpp"
#include "pebblekit/gallery.hpp"
#include "pebblekit/ltl.hpp"
#include "pebblekit/pebble_automaton.hpp"
#include "pebblekit/register_automaton.hpp"
#include "pebblekit/transforms.hpp"

namespace pebblekit {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become ParseError.
Json parse_json_text(const std::string& text);

// Readers throw ParseError for missing or mistyped fields and ModelError when
// the document is well formed but describes an invalid object.

Json to_json(const DataWord& w);
DataWord word_from_json(const Json& j);

Json to_json(const WeakPA& a);
WeakPA pa_from_json(const Json& j);

Json to_json(const UnboundedTopViewPA& a);
UnboundedTopViewPA unbounded_from_json(const Json& j);

Json to_json(const AlternatingRA& a);
AlternatingRA ra_from_json(const Json& j);

Json to_json(const Formula& f);
FormulaPtr formula_from_json(const Json& j);

Json to_json(const PCPInstance& p);
PCPInstance pcp_from_json(const Json& j);

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json to_json(const IncrementingCA& c);
IncrementingCA ica_from_json(const Json& j);

Json to_json(const NormalizationReport& r, const WeakPA& source, const WeakPA& target);
Json to_json(const NormalizationReport& r);

}  // namespace pebblekit

#endif  // PEBBLEKIT_JSON_IO_HPP_
