#include "latenum/cli.hpp"

#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "latenum/canon.hpp"
#include "latenum/io.hpp"
#include "latenum/realize.hpp"

namespace latenum {

namespace {

CommandOutcome usage_error(const std::string& message) { return {2, "", message + "\n"}; }

CommandOutcome json_outcome(int code, const nlohmann::json& j, std::string diagnostics = {}) {
    return {code, j.dump(2) + "\n", std::move(diagnostics)};
}

/// Partition from the transitive closure of the relations alone, without
/// applying the union rule.
Partition transitive_partition(GroundSize k, const std::vector<Relation>& relations) {
    const auto domain = subset_domain(k);
    std::vector<int> position(k.mask_count(), -1);
    for (std::size_t i = 0; i < domain.size(); ++i) position[domain.members[i]] = static_cast<int>(i);
    std::vector<int> parent(domain.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : relations) parent[find(position[a])] = find(position[b]);
    Partition p{k, std::vector<int>(domain.size())};
    for (std::size_t i = 0; i < domain.size(); ++i) p.block_of[i] = find(static_cast<int>(i));
    return p;
}

}  // namespace

CommandOutcome run_enumerate(const EnumerateArgs& args) {
    const GroundSize k{args.k};
    if (args.format != "json" && args.format != "table") return usage_error("unknown format '" + args.format + "'");
    EnumerationResult result;
    std::ostringstream diag;
    try {
        if (args.method == "generated") {
            if (args.k < 1 || args.k > 5) return usage_error("method generated supports 1 <= k <= 5");
            EnumerationOptions opts;
            opts.threads = args.threads;
            if (args.budget_seconds) opts.budget = std::chrono::duration<double>(*args.budget_seconds);
            opts.checkpoint_path = args.checkpoint;
            opts.resume = args.resume;
            if (args.progress) {
                opts.on_progress = [](const Progress& p) {
                    std::fprintf(stderr, "[%.0fs] tasks %llu/%llu, nodes %llu, leaves %llu, classes %zu\n",
                                 p.elapsed_seconds, static_cast<unsigned long long>(p.tasks_done),
                                 static_cast<unsigned long long>(p.tasks_total),
                                 static_cast<unsigned long long>(p.nodes),
                                 static_cast<unsigned long long>(p.leaves), p.classes);
                };
            }
            result = enumerate_generated(k, opts);
            if (!result.complete) diag << "budget exhausted: partial result, " << result.classes.size() << " classes so far\n";
        } else if (args.method == "partitions") {
            if (args.k < 1 || args.k > 4) return usage_error("method partitions supports 1 <= k <= 4");
            result = enumerate_partitions(k);
        } else if (args.method == "realizable") {
            if (args.k >= 1 && args.k <= 4) {
                result = enumerate_realizable(k);
            } else if (args.k >= 5 && args.k <= 6 && args.samples > 0) {
                result = sample_realizable(k, args.samples, args.seed);
                diag << "sampling mode: " << result.progress.leaves << " proper selections sampled\n";
            } else {
                return usage_error("method realizable supports 1 <= k <= 4 exhaustively, or k <= 6 with --samples");
            }
        } else {
            return usage_error("unknown method '" + args.method + "'");
        }
    } catch (const DomainError& e) {
        return usage_error(e.what());
    } catch (const IoError& e) {
        return usage_error(e.what());
    }
    if (args.format == "table") {
        std::string out;
        for (const auto& c : result.classes) out += relation_list(c.representative) + "\n";
        return {0, out, diag.str()};
    }
    return json_outcome(0, enumeration_to_json(result), diag.str());
}

CommandOutcome run_verify(const std::string& corpus_path) {
    CorpusReport report;
    try {
        const auto rows = corpus_path.empty() ? parse_corpus(builtin_corpus_json(), "built-in corpus")
                                              : load_corpus_file(corpus_path);
        report = verify_corpus(rows);
    } catch (const IoError& e) {
        return usage_error(e.what());
    }
    nlohmann::json j;
    auto& rows = j["rows"] = nlohmann::json::array();
    std::ostringstream diag;
    for (const auto& r : report.rows) {
        nlohmann::json row = {{"table", r.row.table}, {"row", r.row.row}, {"passed", r.passed}};
        if (!r.passed) {
            row["detail"] = r.error;
            diag << "table " << r.row.table << " row " << r.row.row << ": " << r.error << "\n";
        }
        rows.push_back(std::move(row));
    }
    j["total"] = report.rows.size();
    j["passed"] = report.passed;
    j["k4_rows"] = report.k4_rows;
    j["k4_pairwise_inequivalent"] = report.k4_pairwise_inequivalent;
    j["k4_exhaustive"] = report.k4_exhaustive;
    j["ok"] = report.ok();
    return json_outcome(report.ok() ? 0 : 1, j, diag.str());
}

CommandOutcome run_betti(const std::string& family_path, Field field, bool with_total) {
    try {
        const SetFamily family = load_family_file(family_path);
        if (auto c = family.first_containment()) {
            return usage_error("family is not proper: X_" + std::to_string(c->first) + " ⊆ X_" +
                               std::to_string(c->second));
        }
        return json_outcome(0, betti_to_json(betti_table(family, field), with_total));
    } catch (const MalformedInput& e) {
        return usage_error(e.what());
    } catch (const DomainError& e) {
        return usage_error(e.what());
    } catch (const IoError& e) {
        return usage_error(e.what());
    }
}

CommandOutcome run_canon(const std::string& relations, int k) {
    try {
        const GroundSize g{k};
        require_ground_size(g, kMaxEnumerationK, "canon");
        const auto rel = parse_relations(relations, g);
        const Configuration cfg = closure(g, rel);
        nlohmann::json j;
        j["k"] = k;
        j["key"] = canonical_key(cfg).hex();
        j["cover_pairs"] = pairs_to_json(cover_pairs(cfg));
        j["generators"] = pairs_to_json(generating_pairs(cfg));
        j["valid"] = is_valid_configuration(to_partition(cfg));
        j["input_closed"] = is_valid_configuration(transitive_partition(g, rel));
        return json_outcome(0, j);
    } catch (const MalformedInput& e) {
        return usage_error(e.what());
    } catch (const DomainError& e) {
        return usage_error(e.what());
    }
}

CommandOutcome run_witness(const std::string& relations, int k) {
    try {
        const GroundSize g{k};
        require_ground_size(g, 6, "witness");
        const Configuration cfg = closure(g, parse_relations(relations, g));
        const WitnessReport report = find_witness(cfg);
        nlohmann::json j;
        j["k"] = k;
        j["key"] = canonical_key(cfg).hex();
        j["realizable"] = report.checked;
        j["minimal"] = report.minimal;
        if (report.witness) j["sets"] = family_to_json(*report.witness);
        if (report.atoms) {
            auto& atoms = j["atoms"] = nlohmann::json::array();
            for (Mask p : report.atoms->chosen) atoms.push_back(format_subset(p));
        }
        return json_outcome(report.checked ? 0 : 1, j, report.checked ? "" : report.mismatch + "\n");
    } catch (const MalformedInput& e) {
        return usage_error(e.what());
    } catch (const DomainError& e) {
        return usage_error(e.what());
    }
}

}  // namespace latenum
