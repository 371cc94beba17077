// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--seed N] [--k5-budget SECONDS] [--only N]
//
// Exit status is 0 only if every selected criterion passes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "latenum/canon.hpp"
#include "latenum/enumerate.hpp"
#include "latenum/realize.hpp"
#include "latenum/taylor.hpp"
#include "support.hpp"

using namespace latenum;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        failures += (failures.empty() ? "" : "; ") + what;
    }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

SetFamily words(std::initializer_list<const char*> ws) {
    std::vector<std::vector<std::string>> sets;
    for (const char* w : ws) {
        sets.emplace_back();
        for (const char* c = w; *c; ++c) sets.back().push_back(std::string(1, *c));
    }
    return SetFamily::from_labels(sets);
}

// ------------------------------------------------------------- criteria

void sequence(Verdict& v) {
    const auto t = Clock::now();
    const std::size_t expected[] = {1, 1, 4, 50};
    for (int k = 1; k <= 4; ++k) {
        const auto n = enumerate_generated(GroundSize{k}).classes.size();
        v.detail << (k > 1 ? "," : "counts ") << n;
        v.require(n == expected[k - 1], "k=" + std::to_string(k) + " gave " + std::to_string(n));
    }
    const double s = seconds_since(t);
    v.detail << " in " << s << " s";
    v.require(s < 60, "slower than 60 s");
}

void oracle(Verdict& v) {
    const auto t = Clock::now();
    const auto partitions = enumerate_partitions(GroundSize{4});
    const double s = seconds_since(t);
    const auto generated = enumerate_generated(GroundSize{4});
    v.detail << partitions.progress.nodes << " partitions, " << partitions.progress.leaves << " valid, "
             << partitions.classes.size() << " classes in " << s << " s";
    v.require(partitions.progress.nodes == 678570, "partition count differs from Bell(11)");
    v.require(partitions.keys() == generated.keys(), "key lists differ");
    v.require(s < 300, "slower than 5 min");
}

void cases(Verdict& v) {
    const auto stats = case_statistics(enumerate_generated(GroundSize{4})).counts_by_top;
    for (const auto& [t, n] : stats) v.detail << t << ":" << n << " ";
    v.require(stats == std::map<int, std::size_t>{{0, 1}, {1, 4}, {2, 14}, {3, 20}, {4, 11}}, "mismatch");
}

void realizability(Verdict& v) {
    const auto t = Clock::now();
    const auto swept = enumerate_realizable(GroundSize{4});
    const auto generated = enumerate_generated(GroundSize{4});
    v.require(swept.keys() == generated.keys(), "sweep keys differ from generated keys");
    std::size_t found = 0;
    for (const auto& c : generated.classes) {
        const auto r = find_witness(c.representative);
        if (r.checked && verify_witness(c.representative, *r.witness).checked) ++found;
    }
    const double s = seconds_since(t);
    v.detail << swept.classes.size() << " swept classes, " << found << "/50 witnesses in " << s << " s";
    v.require(found == 50, "missing witnesses");
    v.require(s < 60, "slower than 60 s");
}

void corpus(Verdict& v) {
    const auto report = verify_corpus(parse_corpus(builtin_corpus_json(), "built-in corpus"));
    v.detail << report.passed << "/" << report.rows.size() << " rows pass, k=4 rows " << report.k4_rows
             << ", pairwise inequivalent " << report.k4_pairwise_inequivalent << ", exhaustive "
             << report.k4_exhaustive;
    v.require(report.rows.size() == 54, "expected 54 rows");
    for (const auto& r : report.rows)
        if (!r.passed)
            v.require(false, "table " + std::to_string(r.row.table) + " row " + std::to_string(r.row.row) + ": " +
                                 r.error);
    v.require(report.k4_pairwise_inequivalent && report.k4_exhaustive, "k=4 rows do not biject with the classes");
}

void venn(Verdict& v) {
    // Cells of the 4 x 4 Venn grid: rows are (none, 3, 3&4, 4), columns are
    // (none, 1, 1&2, 2).  Nonempty cells in letter order a..f.
    const Mask row_profiles[] = {0, bit(3), bit(3) | bit(4), bit(4)};
    const Mask col_profiles[] = {0, bit(1), bit(1) | bit(2), bit(2)};
    const char* grid[4][4] = {{"", "a", "", "b"}, {"", "c", "", ""}, {"", "e", "", "f"}, {"", "", "", "d"}};
    std::map<char, Mask> cells;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (*grid[r][c]) cells[*grid[r][c]] = row_profiles[r] | col_profiles[c];
    AtomSelection sel{GroundSize{4}, {}};
    for (const auto& [letter, profile] : cells) sel.chosen.push_back(profile);
    const auto family = atoms_to_family(sel);
    std::string shown;
    for (int i = 1; i <= 4; ++i) shown += (i > 1 ? "," : "") + family.format_set(i);
    v.detail << "family " << shown;
    v.require(shown == "ace,bdf,cef,def", "unexpected family");

    const auto rows = parse_corpus(builtin_corpus_json(), "built-in corpus");
    const auto it = std::find_if(rows.begin(), rows.end(), [](const CorpusRow& r) { return r.table == 2 && r.row == 17; });
    v.require(it != rows.end(), "row 17 missing from corpus");
    if (it != rows.end()) {
        std::string rel;
        for (const auto& s : it->top) rel += s + " ";
        for (const auto& s : it->other) rel += s + " ";
        const auto target = closure(GroundSize{4}, parse_relations(rel, GroundSize{4}));
        const GroundSize k4{4};
        const auto stated = closure(k4, std::vector<Relation>{{parse_subset("12", k4), parse_subset("1234", k4)},
                                                              {parse_subset("23", k4), parse_subset("234", k4)},
                                                              {parse_subset("14", k4), parse_subset("134", k4)}});
        v.require(target == stated, "row 17 is not generated by its three union equalities");
        v.require(verify_witness(target, family).checked, "family does not realize row 17");
    }
    const auto graph = intersection_graph(family);
    v.detail << ", " << graph.size() << " intersecting pairs";
    v.require(graph == std::set<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
              "intersection graph is not all pairs except {1,2}");
}

void taylor_suite(Verdict& v, std::uint64_t seed) {
    const auto t = Clock::now();
    std::mt19937_64 rng(seed);
    int zero = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = latenum::testing::random_proper_family(rng, 1 + trial % 5, 4 + trial % 5);
        if (boundary_squares_to_zero(build_taylor_complex(f))) ++zero;
    }
    v.detail << "(a) d^2=0 on " << zero << "/200";
    v.require(zero == 200, "(a) d o d nonzero");

    const auto singles = betti_table(words({"a", "b", "c"}), Field::Q);
    v.require(singles.per_j == std::vector<std::int64_t>{1, 3, 3, 1}, "(b) per-j totals");
    v.require(total_cohomology_ranks(singles) == std::map<int, std::int64_t>{{0, 1}, {1, 3}, {2, 3}, {3, 1}},
              "(b) total-degree ranks");

    const auto tri_complex = build_taylor_complex(words({"ab", "bc", "ca"}));
    v.require(tri_complex.dense_boundary(3) == IntMatrix{{1}, {-1}, {1}}, "(c) d3 matrix");
    const auto tri = betti_table(tri_complex, Field::Q);
    v.require(total_cohomology_ranks(tri) == std::map<int, std::int64_t>{{0, 1}, {3, 3}, {4, 2}},
              "(c) total-degree ranks");

    const auto other = betti_table(words({"abc", "cde", "efa"}), Field::Q);
    v.require(other.per_j == singles.per_j, "(d) per-j totals differ");
    v.require(other.entries != singles.entries, "(d) bigraded tables coincide");
    const double s = seconds_since(t);
    v.detail << ", (b)-(d) checked in " << s << " s";
    v.require(s < 30, "slower than 30 s");
}

void properties(Verdict& v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto classes = enumerate_generated(GroundSize{4});

    // Closure idempotence and cover-pair regeneration over every class and
    // every relabeling of it.
    std::size_t regenerated = 0, invariant = 0, labeled = 0;
    for (const auto& c : classes.classes) {
        for (const auto& sigma : IndexPermutation::all(GroundSize{4})) {
            const auto moved = permute_config(c.representative, sigma);
            ++labeled;
            if (closure(GroundSize{4}, cover_pairs(moved)) == moved &&
                closure(GroundSize{4}, cover_pairs(closure(GroundSize{4}, cover_pairs(moved)))) == moved)
                ++regenerated;
            if (canonical_key(moved) == c.key) ++invariant;
        }
    }
    v.detail << "regeneration " << regenerated << "/" << labeled << ", key invariance " << invariant << "/"
             << labeled;
    v.require(regenerated == labeled, "closure(cover_pairs(C)) != C");
    v.require(invariant == labeled, "key changed under relabeling");

    std::size_t leq_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = latenum::testing::random_proper_family(rng, 2 + trial % 4, 7);
        const auto cfg = config_from_family(f);
        bool ok = true;
        for (Mask s = 0; s <= f.ground().full(); ++s)
            for (Mask t = 0; t <= f.ground().full(); ++t)
                ok &= leq(cfg, s, t) == ((f.union_of(s) & ~f.union_of(t)) == 0);
        leq_ok += ok;
    }
    v.detail << ", leq " << leq_ok << "/100";
    v.require(leq_ok == 100, "leq disagrees with union containment");

    std::size_t field_ok = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto tc = build_taylor_complex(latenum::testing::random_proper_family(rng, 1 + trial % 5, 4 + trial % 5));
        const auto rq = boundary_ranks(tc, Field::Q), r2 = boundary_ranks(tc, Field::F2);
        bool ok = true;
        for (const auto& [slot, rank] : rq) ok &= r2.at(slot) <= rank;
        ok &= euler_characteristics(betti_table(tc, Field::Q)) == euler_characteristics(betti_table(tc, Field::F2));
        field_ok += ok;
    }
    v.detail << ", field comparison " << field_ok << "/200";
    v.require(field_ok == 200, "rank or Euler characteristic mismatch across fields");
}

void k5_run(Verdict& v, double budget) {
    const auto path = std::filesystem::temp_directory_path() / "latenum_acceptance_k5.json";
    std::filesystem::remove(path);
    EnumerationOptions opts;
    opts.budget = std::chrono::duration<double>(budget);
    opts.checkpoint_path = path.string();
    opts.checkpoint_interval = std::chrono::duration<double>(std::max(1.0, budget / 4));
    std::size_t reports = 0;
    opts.on_progress = [&](const Progress& p) {
        ++reports;
        std::fprintf(stderr, "  k=5 [%.0fs] tasks %llu/%llu, classes %zu\n", p.elapsed_seconds,
                     static_cast<unsigned long long>(p.tasks_done), static_cast<unsigned long long>(p.tasks_total),
                     p.classes);
    };
    try {
        const auto r = enumerate_generated(GroundSize{5}, opts);
        v.detail << "budget " << budget << " s: " << (r.complete ? "complete, " : "partial, ") << r.classes.size()
                 << " classes (informational), tasks " << r.progress.tasks_done << "/"
                 << r.progress.tasks_total << ", " << reports << " progress reports";
        v.require(std::filesystem::exists(path), "no checkpoint written");
        if (std::filesystem::exists(path)) {
            std::ifstream in(path);
            const auto j = nlohmann::json::parse(in);
            v.require(j.at("keys").size() == r.classes.size(), "checkpoint disagrees with result");
        }
        v.require(r.complete || reports > 0, "no progress reported");
    } catch (const std::exception& e) {
        v.require(false, std::string("threw: ") + e.what());
    }
    std::filesystem::remove(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::uint64_t seed = latenum::testing::test_seed();
    double k5_budget = 20;
    int only = 0;
    app.add_option("--seed", seed, "seed for the randomized suites");
    app.add_option("--k5-budget", k5_budget, "seconds for the k=5 run");
    app.add_option("--only", only, "run a single criterion");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria = {
        {"sequence 1,1,4,50", sequence},
        {"partition oracle", oracle},
        {"case statistics", cases},
        {"realizability", realizability},
        {"corpus fidelity", corpus},
        {"Venn cross-check", venn},
        {"Taylor suite", [&](Verdict& v) { taylor_suite(v, seed); }},
        {"property suites", [&](Verdict& v) { properties(v, seed); }},
        {"k=5 budgeted run", [&](Verdict& v) { k5_run(v, k5_budget); }},
    };
    std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<std::size_t>(only) != i + 1) continue;
        Verdict v;
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        failures += !v.pass;
        std::printf("criterion %zu %-20s %s  %s\n", i + 1, criteria[i].first, v.pass ? "PASS" : "FAIL",
                    v.detail.str().c_str());
        if (!v.pass) std::printf("    failed: %s\n", v.failures.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
