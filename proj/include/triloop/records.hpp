#pragma once

#include "triloop/decide.hpp"
#include "triloop/formula.hpp"
#include "triloop/loop.hpp"
#include "triloop/polyexp.hpp"
#include "triloop/simulate.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace triloop {

using Json = nlohmann::json;

// Self-describing records for the machine-readable output mode.  Numbers
// are strings ("p/q" in lowest terms, plain integers without "/1") so
// arbitrary precision survives the round trip.
Json loop_record(const Loop& loop);
Json closed_form_record(const std::string& variable, const PolyExp& q,
                        const std::vector<std::string>& names);
Json formula_record(const LiaFormula& f, const std::vector<std::string>& names);
Json verdict_record(const Verdict& v, const std::vector<std::string>& names,
                    const std::vector<std::size_t>& permutation);
Json trace_record(const Trace& t, const std::vector<std::string>& names);

// Inverse of closed_form_record's expression encoding, for consumers that
// want to re-evaluate a closed form exactly.
PolyExp polyexp_from_record(const Json& record);

Rational rational_from_string(const std::string& s);

} // namespace triloop
