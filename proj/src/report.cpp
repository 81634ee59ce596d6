#include "nup/report.hpp"

#include <iomanip>
#include <algorithm>
#include <ostream>

namespace nup {

using json = nlohmann::ordered_json;

namespace {

json range_json(const JRange& r) { return json::array({r.lo, r.hi}); }

}  // namespace

json to_json(const ClaimReport& r) {
  json j;
  j["source"] = r.claim.source;
  j["kind"] = to_string(r.claim.kind);
  json params = json::object();
  for (const auto& [name, value] : r.claim.params) params[name] = value;
  j["params"] = std::move(params);
  j["description"] = r.claim.description;
  j["status"] = to_string(r.status);
  j["count"] = r.count;
  if (r.claim.expected) j["expected_range"] = range_json(*r.claim.expected);
  if (r.observed) j["observed_range"] = range_json(*r.observed);
  if (r.pattern) j["pattern_range"] = range_json(*r.pattern);
  if (r.witness) {
    j["witness"] = {{"element", r.witness->element},
                    {"rewritten", r.witness->rewritten},
                    {"explanation", r.witness->explanation}};
  }
  return j;
}

json claims_to_json(const std::vector<ClaimReport>& claims) {
  json out = json::array();
  for (const auto& r : claims) out.push_back(to_json(r));
  return out;
}

json to_json(const Coverage& c) {
  return {{"pairs_total", c.pairs_total},       {"pairs_covered", c.pairs_covered},
          {"entries_total", c.entries_total},   {"entries_covered", c.entries_covered},
          {"unsound_pairs", c.unsound_pairs},   {"complete", c.complete()}};
}

json spec_to_json(const TFamilySpec& spec) {
  json j{{"k", spec.k}};
  j["p"] = spec.p ? json(*spec.p) : json(nullptr);
  j["q"] = spec.q ? json(*spec.q) : json(nullptr);
  return j;
}

json set_to_json(const GroupSet& set) {
  const Group g(set.params());
  json out = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.has_labels()) {
      out.push_back({{"element", g.to_string(set[i])}, {"label", set.labels()[i]}});
    } else {
      out.push_back(g.to_string(set[i]));
    }
  }
  return out;
}

json search_config_to_json(const SearchConfig& c) {
  return {{"k", c.k},
          {"size", c.size},
          {"max_len", c.max_len},
          {"symmetric", c.symmetric},
          {"seed", c.seed},
          {"budget", c.budget},
          {"restarts", c.restarts},
          {"t0", c.t0},
          {"cooling", c.cooling},
          {"neighborhood", to_string(c.neighborhood)},
          {"init", to_string(c.init)}};
}

json to_json(const SearchResult& r) {
  json history = json::array();
  for (const auto& [it, s] : r.history) history.push_back(json::array({it, s}));
  return {{"seed", r.seed},
          {"best_score", r.best_score},
          {"iterations", r.iterations},
          {"best_restart", r.best_restart},
          {"history", std::move(history)},
          {"best", set_to_json(r.best)}};
}

void print_claims_summary(std::ostream& out, const std::vector<ClaimReport>& claims,
                          bool verbose) {
  struct Tally {
    std::size_t pass = 0, fail = 0, typo = 0, checked = 0;
  };
  // Group "chart T row 4" style sources by table, diagonal sources by kind.
  std::vector<std::pair<std::string, Tally>> groups;
  for (const auto& r : claims) {
    std::string key;
    switch (r.claim.kind) {
      case ClaimKind::ChartRow: key = r.claim.source; break;
      case ClaimKind::DiagonalEquality: key = "diagonal equalities"; break;
      case ClaimKind::X0Containment: key = "X_0 containments"; break;
      case ClaimKind::ZEndpoint: key = "Z_0 endpoints"; break;
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) it = groups.insert(groups.end(), {key, Tally{}});
    Tally& t = it->second;
    t.checked += r.count;
    switch (r.status) {
      case ClaimStatus::Pass: ++t.pass; break;
      case ClaimStatus::Fail: ++t.fail; break;
      case ClaimStatus::TypoSuspect: ++t.typo; break;
    }
    if (verbose || r.status != ClaimStatus::Pass) {
      out << (r.status == ClaimStatus::Pass ? "PASS " : r.status == ClaimStatus::Fail ? "FAIL " : "TYPO ")
          << r.claim.source << ": " << r.claim.description << '\n';
      if (r.witness) {
        if (!r.witness->element.empty()) out << "    element:   " << r.witness->element << '\n';
        if (!r.witness->rewritten.empty()) out << "    rewritten: " << r.witness->rewritten << '\n';
        out << "    " << r.witness->explanation << '\n';
      }
    }
  }
  out << std::left << std::setw(28) << "claims" << std::right << std::setw(6) << "pass"
      << std::setw(6) << "fail" << std::setw(6) << "typo" << std::setw(10) << "checked" << '\n';
  for (const auto& [key, t] : groups) {
    out << std::left << std::setw(28) << key << std::right << std::setw(6) << t.pass
        << std::setw(6) << t.fail << std::setw(6) << t.typo << std::setw(10) << t.checked << '\n';
  }
}

}  // namespace nup
