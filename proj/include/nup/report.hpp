#pragma once

// JSON and text renderings of checker and search results.  Reports carry no
// timing data so that repeated runs produce identical bytes.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nup/proof_checker.hpp"
#include "nup/search.hpp"

namespace nup {

nlohmann::ordered_json to_json(const ClaimReport& report);
nlohmann::ordered_json claims_to_json(const std::vector<ClaimReport>& claims);
nlohmann::ordered_json to_json(const Coverage& coverage);
nlohmann::ordered_json spec_to_json(const TFamilySpec& spec);

/// Elements of a set, canonical strings with labels when present.
nlohmann::ordered_json set_to_json(const GroupSet& set);

nlohmann::ordered_json search_config_to_json(const SearchConfig& config);
nlohmann::ordered_json to_json(const SearchResult& result);

/// One line per claim that is not a plain pass, then per-source totals.
void print_claims_summary(std::ostream& out, const std::vector<ClaimReport>& claims,
                          bool verbose = false);

}  // namespace nup
