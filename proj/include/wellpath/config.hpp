#pragma once
// JSON experiment configs -> typed objects. The schema is documented in the
// README; parsing failures throw invalid_spec with the offending key named.

#include <json.hpp>
#include <string>

#include "wellpath/geodesic.hpp"
#include "wellpath/potential.hpp"

namespace wellpath {

nlohmann::json load_config(const std::string& path);

// Canonical serialization (sorted keys, no whitespace) and its FNV-1a hash,
// recorded in every output table for provenance.
std::string canonical_dump(const nlohmann::json& j);
std::string config_hash(const nlohmann::json& j);

// Builds a potential from the "potential" section: family, state_dim, domain
// box/partition, well fields, optional constants overrides.
Potential potential_from_config(const nlohmann::json& p);

// Reads an optional "geodesic" section over the defaults.
GeodesicOptions geodesic_options_from_config(const nlohmann::json& cfg);

}  // namespace wellpath
