// Enumeration of configuration classes of size k.
//
// Two independent routes are provided:
//   - enumerate_generated: depth-first search over the candidate cover pairs
//     (S, i), deciding each pair in canonical order and closing after every
//     inclusion.  Every configuration is the closure of its cover pairs, so
//     each labeled configuration is reached exactly once.
//   - enumerate_partitions: filters every set partition of subset_domain(k)
//     through is_valid_configuration.  Only feasible for k <= 4.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latenum/canon.hpp"
#include "latenum/lattice.hpp"

namespace latenum {

enum class Method { generated, partitions, realizable };

std::string method_name(Method m);

struct ClassEntry {
    CanonicalKey key;
    /// The canonical form: the relabeling whose encoding is the key.
    Configuration representative;
    /// Filled in by callers that attach realizations.
    std::optional<SetFamily> witness;
};

struct Progress {
    std::uint64_t tasks_total = 0;
    std::uint64_t tasks_done = 0;
    std::uint64_t nodes = 0;  // search nodes expanded in this run
    std::uint64_t leaves = 0;  // labeled configurations reached in this run
    std::size_t classes = 0;
    double elapsed_seconds = 0.0;
};

struct EnumerationResult {
    GroundSize k;
    Method method = Method::generated;
    /// Sorted by key, keys strictly increasing.
    std::vector<ClassEntry> classes;
    /// False when a time budget stopped the search early.
    bool complete = true;
    Progress progress;

    std::vector<CanonicalKey> keys() const;
};

struct EnumerationOptions {
    /// 0 means: LATENUM_THREADS if set, else hardware concurrency.
    unsigned threads = 0;
    std::optional<std::chrono::duration<double>> budget;
    /// When set, completed tasks and found keys are saved here periodically.
    std::string checkpoint_path;
    /// Skip tasks already recorded in checkpoint_path.
    bool resume = false;
    std::chrono::duration<double> checkpoint_interval = std::chrono::seconds(30);
    std::function<void(const Progress&)> on_progress;
};

unsigned resolve_thread_count(unsigned requested);

/// 1 <= k <= 5.  Deterministic output; k = 5 honours the budget.
EnumerationResult enumerate_generated(GroundSize k, const EnumerationOptions& options = {});

/// 1 <= k <= 4.  Refuses larger k.
EnumerationResult enumerate_partitions(GroundSize k);

/// Number of set partitions of subset_domain(k) passing the union rule,
/// before deduplication up to relabeling.
std::uint64_t count_valid_partitions(GroundSize k);

/// Number of (k-1)-subsets equivalent to [k]; 0 when those subsets have
/// fewer than two elements.
int top_count(const Configuration& cfg);

struct CaseStatistics {
    std::map<int, std::size_t> counts_by_top;
};

CaseStatistics case_statistics(const EnumerationResult& result);

/// Builds a sorted, deduplicated result from canonical keys and forms.
EnumerationResult make_result(GroundSize k, Method method, std::map<CanonicalKey, Configuration> classes);

}  // namespace latenum
