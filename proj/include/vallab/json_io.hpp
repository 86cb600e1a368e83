#pragma once

#include <json.hpp>

#include "vallab/defect.hpp"

namespace vallab {

using json = nlohmann::json;

json group_to_json(const GroupSpec& g);
GroupSpec group_from_json(const json& j);

// {"terms":[["2/3","1"],...],"prec":"26/27"}; coefficients as their decimal
// encodings so round-trips are bit-exact
json series_to_json(const Series& s);
Series series_from_json(const json& j, const FieldCtx& ctx, GroupSpec group);

json cert_to_json(const StabilizationCert& c);

json qf_to_json(const QuasiFinite& y);
QuasiFinite qf_from_json(const json& j, const FieldCtx& ctx);

json expansion_to_json(const Expansion& e);
Expansion expansion_from_json(const json& j, const FieldCtx& ctx);

json report_to_json(const ExtensionReport& r);

}  // namespace vallab
