#include "latenum/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

namespace latenum {

std::string method_name(Method m) {
    switch (m) {
        case Method::generated: return "generated";
        case Method::partitions: return "partitions";
        case Method::realizable: return "realizable";
    }
    return "unknown";
}

std::vector<CanonicalKey> EnumerationResult::keys() const {
    std::vector<CanonicalKey> out;
    for (const auto& c : classes) out.push_back(c.key);
    return out;
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LATENUM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

EnumerationResult make_result(GroundSize k, Method method, std::map<CanonicalKey, Configuration> classes) {
    EnumerationResult r;
    r.k = k;
    r.method = method;
    for (auto& [key, cfg] : classes) r.classes.push_back({key, std::move(cfg), std::nullopt});
    r.progress.classes = r.classes.size();
    return r;
}

// ------------------------------------------------------------------ search

namespace {

using Clock = std::chrono::steady_clock;

struct SearchNode {
    ClosureBuilder state;
    std::size_t next = 0;
    std::vector<std::uint16_t> excluded;
};

class CoverPairSearch {
  public:
    explicit CoverPairSearch(GroundSize k)
        : k_(k), candidates_(candidate_cover_pairs(k)), canon_(k) {}

    const std::vector<CoverPair>& candidates() const { return candidates_; }

    /// Skips candidates already forced by the current closure.
    void advance(SearchNode& node) const {
        while (node.next < candidates_.size() && holds(node.state, node.next)) ++node.next;
    }

    bool finished(const SearchNode& node) const { return node.next == candidates_.size(); }

    /// Children of an unfinished, advanced node: include the next candidate
    /// (if that does not force an excluded one), then exclude it.
    std::vector<SearchNode> children(const SearchNode& node) const {
        std::vector<SearchNode> out;
        SearchNode inc{node.state, node.next + 1, node.excluded};
        if (include(inc.state, node.next, node.excluded)) {
            advance(inc);
            out.push_back(std::move(inc));
        }
        SearchNode exc{node.state, node.next + 1, node.excluded};
        exc.excluded.push_back(static_cast<std::uint16_t>(node.next));
        advance(exc);
        out.push_back(std::move(exc));
        return out;
    }

    struct Counters {
        std::uint64_t nodes = 0, leaves = 0;
    };

    /// Full subtree search.  Returns false if stopped early.
    bool run(SearchNode& node, std::map<CanonicalKey, Configuration>& found, Counters& counters,
             const std::atomic<bool>& stop) const {
        ++counters.nodes;
        if ((counters.nodes & 0xfff) == 0 && stop.load(std::memory_order_relaxed)) return false;
        advance(node);
        if (finished(node)) {
            ++counters.leaves;
            record(node.state.configuration(), found);
            return true;
        }
        const std::size_t idx = node.next;
        {
            SearchNode inc{node.state, idx + 1, node.excluded};
            if (include(inc.state, idx, node.excluded) && !run(inc, found, counters, stop)) return false;
        }
        node.excluded.push_back(static_cast<std::uint16_t>(idx));
        node.next = idx + 1;
        const bool ok = run(node, found, counters, stop);
        return ok;
    }

    void record(const Configuration& cfg, std::map<CanonicalKey, Configuration>& found) const {
        // Exactly one labeled configuration per class is its own canonical
        // form, and every labeled configuration is visited once.
        if (canon_.is_canonical(cfg)) found.try_emplace(encode_representatives(cfg), cfg);
    }

  private:
    bool holds(const ClosureBuilder& state, std::size_t idx) const {
        return state.related(candidates_[idx].base, candidates_[idx].top());
    }

    bool include(ClosureBuilder& state, std::size_t idx, const std::vector<std::uint16_t>& excluded) const {
        state.merge(candidates_[idx].base, candidates_[idx].top());
        for (auto e : excluded) {
            if (holds(state, e)) return false;
        }
        return true;
    }

    GroundSize k_;
    std::vector<CoverPair> candidates_;
    Canonicalizer canon_;
};

std::vector<SearchNode> build_frontier(const CoverPairSearch& search, GroundSize k, std::size_t target) {
    std::deque<SearchNode> open;
    std::vector<SearchNode> done;
    SearchNode root{ClosureBuilder(k), 0, {}};
    search.advance(root);
    open.push_back(std::move(root));
    // Breadth-first expansion keeps the task list independent of threading.
    while (!open.empty() && open.size() + done.size() < target) {
        SearchNode node = std::move(open.front());
        open.pop_front();
        if (search.finished(node)) {
            done.push_back(std::move(node));
            continue;
        }
        for (auto& child : search.children(node)) open.push_back(std::move(child));
    }
    std::vector<SearchNode> out(std::make_move_iterator(done.begin()), std::make_move_iterator(done.end()));
    for (auto& n : open) out.push_back(std::move(n));
    return out;
}

struct Checkpoint {
    std::set<std::size_t> completed;
    std::map<CanonicalKey, Configuration> found;
};

Checkpoint load_checkpoint(const std::string& path, GroundSize k, std::size_t tasks_total) {
    Checkpoint cp;
    std::ifstream in(path);
    if (!in) return cp;
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("k").get<int>() != k.k || j.at("tasks_total").get<std::size_t>() != tasks_total) {
            throw IoError("checkpoint '" + path + "' was written for a different search");
        }
        for (auto t : j.at("completed")) cp.completed.insert(t.get<std::size_t>());
        for (const auto& h : j.at("keys")) {
            const auto key = CanonicalKey::from_hex(h.get<std::string>());
            cp.found.try_emplace(key, decode_representatives(k, key));
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError("checkpoint '" + path + "' is corrupt: " + e.what());
    } catch (const MalformedInput& e) {
        throw IoError("checkpoint '" + path + "' is corrupt: " + e.what());
    }
    return cp;
}

void save_checkpoint(const std::string& path, GroundSize k, std::size_t tasks_total, const Checkpoint& cp,
                     const Progress& progress) {
    nlohmann::json j;
    j["k"] = k.k;
    j["tasks_total"] = tasks_total;
    j["completed"] = std::vector<std::size_t>(cp.completed.begin(), cp.completed.end());
    auto& keys = j["keys"] = nlohmann::json::array();
    for (const auto& [key, cfg] : cp.found) keys.push_back(key.hex());
    j["classes"] = cp.found.size();
    j["nodes_this_run"] = progress.nodes;
    j["elapsed_seconds"] = progress.elapsed_seconds;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw IoError("cannot write checkpoint '" + tmp + "'");
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

EnumerationResult enumerate_generated(GroundSize k, const EnumerationOptions& options) {
    require_ground_size(k, 5, "enumerate_generated");
    const auto start = Clock::now();
    const CoverPairSearch search(k);
    std::vector<SearchNode> tasks = build_frontier(search, k, k.k >= 5 ? 4096 : 1);

    Checkpoint shared;
    if (options.resume && !options.checkpoint_path.empty()) {
        shared = load_checkpoint(options.checkpoint_path, k, tasks.size());
    }

    std::mutex mu;
    std::condition_variable cv;
    std::atomic<bool> stop{false};
    std::atomic<std::size_t> next_task{0};
    std::atomic<std::uint64_t> nodes{0}, leaves{0};
    std::size_t running = 0;
    bool interrupted = false;

    auto worker = [&] {
        for (;;) {
            const std::size_t t = next_task.fetch_add(1);
            if (t >= tasks.size() || stop.load()) break;
            {
                std::lock_guard lock(mu);
                if (shared.completed.count(t)) continue;
            }
            std::map<CanonicalKey, Configuration> local;
            CoverPairSearch::Counters counters;
            SearchNode node = tasks[t];
            const bool ok = search.run(node, local, counters, stop);
            nodes += counters.nodes;
            leaves += counters.leaves;
            std::lock_guard lock(mu);
            shared.found.merge(local);
            if (ok) {
                shared.completed.insert(t);
            } else {
                interrupted = true;
            }
        }
        std::lock_guard lock(mu);
        --running;
        cv.notify_all();
    };

    const unsigned n_threads = std::min<std::size_t>(resolve_thread_count(options.threads), tasks.size());
    std::vector<std::thread> pool;
    running = n_threads;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);

    auto snapshot = [&] {
        Progress p;
        p.tasks_total = tasks.size();
        p.tasks_done = shared.completed.size();
        p.nodes = nodes.load();
        p.leaves = leaves.load();
        p.classes = shared.found.size();
        p.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return p;
    };

    const auto tick = std::min<std::chrono::duration<double>>(options.checkpoint_interval, std::chrono::seconds(5));
    auto last_checkpoint = Clock::now();
    {
        std::unique_lock lock(mu);
        while (running > 0) {
            auto wait = std::chrono::duration_cast<Clock::duration>(tick);
            if (options.budget) {
                const auto left = start + std::chrono::duration_cast<Clock::duration>(*options.budget) - Clock::now();
                wait = std::max(Clock::duration::zero(), std::min(wait, left));
            }
            cv.wait_for(lock, wait);
            const auto now = Clock::now();
            if (options.budget && now - start >= *options.budget) stop = true;
            if (running == 0) break;
            const Progress p = snapshot();
            if (options.on_progress) options.on_progress(p);
            if (!options.checkpoint_path.empty() && now - last_checkpoint >= options.checkpoint_interval) {
                save_checkpoint(options.checkpoint_path, k, tasks.size(), shared, p);
                last_checkpoint = now;
            }
        }
    }
    for (auto& th : pool) th.join();

    const Progress p = snapshot();
    if (options.on_progress) options.on_progress(p);
    if (!options.checkpoint_path.empty()) save_checkpoint(options.checkpoint_path, k, tasks.size(), shared, p);

    EnumerationResult result = make_result(k, Method::generated, std::move(shared.found));
    result.complete = !interrupted && p.tasks_done == tasks.size();
    result.progress = p;
    return result;
}

// -------------------------------------------------------------- partitions

namespace {

/// Calls visit(block_of) for every restricted growth string of length n.
template <class Visit>
void for_each_set_partition(std::size_t n, Visit&& visit) {
    std::vector<int> a(n, 0), prefix_max(n, 0);
    if (n == 0) {
        visit(a);
        return;
    }
    for (;;) {
        visit(a);
        std::size_t i = n - 1;
        while (i > 0 && a[i] > prefix_max[i - 1]) --i;
        if (i == 0) return;
        ++a[i];
        prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            a[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
}

}  // namespace

std::uint64_t count_valid_partitions(GroundSize k) {
    require_ground_size(k, 4, "count_valid_partitions");
    Partition p{k, {}};
    std::uint64_t count = 0;
    for_each_set_partition(subset_domain(k).size(), [&](const std::vector<int>& blocks) {
        p.block_of = blocks;
        if (is_valid_configuration(p)) ++count;
    });
    return count;
}

EnumerationResult enumerate_partitions(GroundSize k) {
    require_ground_size(k, 4, "enumerate_partitions");
    const Canonicalizer canon(k);
    std::map<CanonicalKey, Configuration> found;
    Partition p{k, {}};
    std::uint64_t valid = 0, total = 0;
    for_each_set_partition(subset_domain(k).size(), [&](const std::vector<int>& blocks) {
        ++total;
        p.block_of = blocks;
        if (!is_valid_configuration(p)) return;
        ++valid;
        const Configuration cfg = Configuration::from_partition(p);
        const CanonicalKey key = canon.key(cfg);
        if (!found.count(key)) found.emplace(key, canon.form(cfg));
    });
    EnumerationResult r = make_result(k, Method::partitions, std::move(found));
    r.progress.nodes = total;
    r.progress.leaves = valid;
    return r;
}

// -------------------------------------------------------------- statistics

int top_count(const Configuration& cfg) {
    const GroundSize k = cfg.k();
    if (k.k < 3) return 0;
    int t = 0;
    for (int i = 1; i <= k.k; ++i) {
        if (cfg.equivalent(k.full() & ~bit(i), k.full())) ++t;
    }
    return t;
}

CaseStatistics case_statistics(const EnumerationResult& result) {
    CaseStatistics stats;
    for (const auto& c : result.classes) ++stats.counts_by_top[top_count(c.representative)];
    return stats;
}

}  // namespace latenum
