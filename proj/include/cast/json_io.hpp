#pragma once

#include <string>

#include "json.hpp"

#include "cast/gaps.hpp"
#include "cast/matrix.hpp"
#include "cast/tiling.hpp"

namespace cast {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are written as numbers, larger ones as
// decimal strings; both forms are accepted on input.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json to_json(const CycloInt& x);
CycloInt cyclo_from_json(const Json& j, int n_hint = 0);
Json to_json(const DiagElem& x);
DiagElem diag_from_json(const Json& j, int n_hint = 0);
Json to_json(const SubstMatrix& m);
SubstMatrix matrix_from_json(const Json& j, int n);

Json to_json(const RuleSet& rs);
RuleSet ruleset_from_json(const Json& j);
Json to_json(const RuleSet& rs, const Patch& p);
Patch patch_from_json(const Json& j, const RuleSet& rs);

Json to_json(const RuleReport& r);
Json to_json(const GapsState& s);
GapsState gaps_state_from_json(const Json& j);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);
Json read_json(const std::string& path);

}  // namespace cast
