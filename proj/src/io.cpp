#include "latenum/io.hpp"

#include <fstream>

namespace latenum {

nlohmann::json family_to_json(const SetFamily& family) { return family.labeled_sets(); }

SetFamily family_from_json(const nlohmann::json& j) {
    try {
        const nlohmann::json& sets = j.is_object() ? j.at("sets") : j;
        return SetFamily::from_labels(sets.get<std::vector<std::vector<std::string>>>());
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("family JSON: ") + e.what());
    }
}

SetFamily load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open family file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput("family file '" + path + "': " + e.what());
    }
    return family_from_json(j);
}

nlohmann::json pairs_to_json(const std::vector<CoverPair>& pairs) {
    auto out = nlohmann::json::array();
    for (const auto& p : pairs) out.push_back(format_pair(p));
    return out;
}

std::string relation_list(const Configuration& cfg, char sep) {
    std::string out;
    for (const auto& p : generating_pairs(cfg)) {
        if (!out.empty()) out += ", ";
        out += format_pair(p, sep);
    }
    return out.empty() ? "∅" : out;
}

nlohmann::json enumeration_to_json(const EnumerationResult& result) {
    nlohmann::json j;
    j["k"] = result.k.k;
    j["method"] = method_name(result.method);
    j["count"] = result.classes.size();
    j["complete"] = result.complete;
    auto& classes = j["classes"] = nlohmann::json::array();
    for (const auto& c : result.classes) {
        nlohmann::json entry;
        entry["key"] = c.key.hex();
        entry["pairs"] = pairs_to_json(generating_pairs(c.representative));
        if (c.witness) entry["sets"] = family_to_json(*c.witness);
        classes.push_back(std::move(entry));
    }
    if (!result.complete) {
        j["progress"] = {{"tasks_total", result.progress.tasks_total},
                         {"tasks_done", result.progress.tasks_done},
                         {"nodes", result.progress.nodes},
                         {"leaves", result.progress.leaves},
                         {"elapsed_seconds", result.progress.elapsed_seconds}};
    }
    return j;
}

nlohmann::json betti_to_json(const BettiTable& table, bool with_total) {
    nlohmann::json j;
    j["field"] = field_name(table.field);
    auto& entries = j["entries"] = nlohmann::json::array();
    for (const auto& [slot, rank] : table.entries) {
        entries.push_back({{"j", slot.first}, {"deg", slot.second}, {"rank", rank}});
    }
    j["per_j"] = table.per_j;
    if (with_total) {
        auto& total = j["total_by_degree"] = nlohmann::json::object();
        for (const auto& [deg, rank] : total_cohomology_ranks(table)) total[std::to_string(deg)] = rank;
    }
    return j;
}

}  // namespace latenum
