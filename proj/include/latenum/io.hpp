// JSON documents exchanged with the command line.

#pragma once

#include <string>

#include <json.hpp>

#include "latenum/enumerate.hpp"
#include "latenum/lattice.hpp"
#include "latenum/realize.hpp"
#include "latenum/taylor.hpp"

namespace latenum {

/// [["a","d"],["b","e"],...]
nlohmann::json family_to_json(const SetFamily& family);

/// Accepts {"sets": [[...], ...]} or a bare array of label lists.
SetFamily family_from_json(const nlohmann::json& j);
SetFamily load_family_file(const std::string& path);

/// {"k":4,"method":"generated","count":50,"complete":true,"classes":[{"key":..,"pairs":[..]}]}
nlohmann::json enumeration_to_json(const EnumerationResult& result);

/// {"field":"Q","entries":[{"j":..,"deg":..,"rank":..}],"per_j":[..]} plus
/// "total_by_degree" when requested.
nlohmann::json betti_to_json(const BettiTable& table, bool with_total);

/// Compact relation list of an irredundant generating set, "12-124, 123-1234".
std::string relation_list(const Configuration& cfg, char sep = '-');

nlohmann::json pairs_to_json(const std::vector<CoverPair>& pairs);

}  // namespace latenum
