#pragma once

// JSON forms of the library's results. Big integers are decimal strings;
// rationals are "a/b" strings.

#include <json.hpp>

#include "critorb/bounds.hpp"
#include "critorb/constructor.hpp"
#include "critorb/density.hpp"
#include "critorb/dynatomic.hpp"
#include "critorb/lifting.hpp"
#include "critorb/pcf.hpp"

namespace critorb::json_io {

using json = nlohmann::json;

json big(const BigInt& x);
/// Accepts a decimal string or a JSON integer.
BigInt big_from(const json& j, const char* what);
std::string rational(const Rational& q);

json to_json(const PeriodType& t);
json to_json(const IntPoly& f);
json to_json(const std::vector<RootMultiplicity>& roots);
json to_json(const LiftResult& lift);
json to_json(const HenselHypothesisFails& err);
json to_json(const ConstructionReport& report);
json to_json(const std::vector<VerifyRecord>& records);
json to_json(const PcfCensus& census, const ConditionStarStar& star_star);
json to_json(const ConditionStar& star);
json to_json(const ConditionStarStar& star_star);
json to_json(const CorrespondenceReport& report);
json to_json(const EmpiricalDensity& density);
json to_json(const RhoBound& bound);
json to_json(const RhoCount& count);
json to_json(const MaximalityCertificate& cert);

DivisibilitySpec spec_from_json(const json& j);
json spec_to_json(const DivisibilitySpec& spec);
MaximalityCertificate certificate_from_json(const json& j);

}  // namespace critorb::json_io
