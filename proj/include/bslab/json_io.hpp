#pragma once

#include <json.hpp>

#include "bslab/boundary.hpp"
#include "bslab/gbs.hpp"
#include "bslab/tiles.hpp"

namespace bslab {

using nlohmann::json;

// Exponents serialize as numbers while they fit in 64 bits, decimal strings
// past that.
json int_to_json(const Int& v);
Int int_from_json(const json& j);

// {"a0": ..., "syllables": [[eps, a], ...]}
json to_json(const NormalForm& g);
NormalForm normal_form_from_json(const json& j, const GroupParams& params);

// Address array: [a0, [eps, a], ...] with the trailing zero dropped.
json to_json(const TreeVertex& v);

// {"prefix": [[dir, index], ...], "tail": [...]} for periodic ends;
// lazy ends emit a truncated prefix and "tail": null.
json to_json(const TreeEnd& e, std::size_t lazy_prefix = 32);

// {"x": "p/q", "vertex": [...], "edge": [dir, index, offset] | null}
json to_json(const SpacePoint& p);

// {"pole": "R"|"L"} or {"theta": ..., "end": {...}}
json to_json(const BoundaryPoint& z);

json to_json(const FindNResult& r);
json to_json(const NullityReport& r);
json to_json(const WhyteClass& w);
json to_json(const SlopeReport& r);

}  // namespace bslab
