#include "latenum/realize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace latenum {

namespace {

/// Profiles 1..2^k-1 in canonical order.
std::vector<Mask> all_profiles(GroundSize k) {
    std::vector<Mask> out;
    for (Mask m : all_subsets_canonical(k)) {
        if (m != 0) out.push_back(m);
    }
    return out;
}

/// For every ordered pair i != j some profile holds i but not j, i.e. the
/// intersection of the profiles holding i is exactly {i}.
bool profiles_separate(GroundSize k, const std::vector<Mask>& profiles) {
    for (int i = 1; i <= k.k; ++i) {
        Mask meet = k.full();
        for (Mask p : profiles) {
            if (contains(p, i)) meet &= p;
        }
        if (meet != bit(i)) return false;
    }
    return true;
}

/// Profiles that do not separate any pair the configuration relates.
std::vector<Mask> compatible_profiles(const Configuration& cfg) {
    const auto domain = subset_domain(cfg.k());
    std::vector<Mask> out;
    for (Mask p : all_profiles(cfg.k())) {
        bool ok = true;
        for (Mask s : domain.members) {
            const Mask r = cfg.class_of(s);
            if (r != s && ((p & s) != 0) != ((p & r) != 0)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(p);
    }
    return out;
}

/// Searches combinations of `pool` by size, then lexicographically, for the
/// first that is proper and separates all class representatives.
class MinimalSelectionSearch {
  public:
    MinimalSelectionSearch(const Configuration& cfg, std::vector<Mask> pool, std::uint64_t budget)
        : k_(cfg.k()), pool_(std::move(pool)), budget_(budget) {
        for (Mask s : subset_domain(k_).members) {
            if (cfg.class_of(s) == s) reps_.push_back(s);
        }
    }

    /// Returns the selection, or nullopt if none exists or the budget ran out
    /// (distinguished by exhausted()).
    std::optional<std::vector<Mask>> run() {
        for (std::size_t r = 1; r <= pool_.size(); ++r) {
            chosen_.clear();
            if (extend(0, r)) return chosen_;
            if (exhausted_) return std::nullopt;
        }
        return std::nullopt;
    }

    bool exhausted() const { return exhausted_; }

  private:
    bool extend(std::size_t from, std::size_t remaining) {
        if (remaining == 0) {
            if (++examined_ > budget_) {
                exhausted_ = true;
                return false;
            }
            return accepts();
        }
        for (std::size_t i = from; i + remaining <= pool_.size(); ++i) {
            chosen_.push_back(pool_[i]);
            if (extend(i + 1, remaining - 1)) return true;
            chosen_.pop_back();
            if (exhausted_) return false;
        }
        return false;
    }

    bool accepts() const {
        if (!profiles_separate(k_, chosen_)) return false;
        std::vector<std::uint64_t> sig;
        sig.reserve(reps_.size());
        for (Mask s : reps_) {
            std::uint64_t v = 0;
            for (std::size_t a = 0; a < chosen_.size(); ++a) {
                if (chosen_[a] & s) v |= std::uint64_t{1} << a;
            }
            sig.push_back(v);
        }
        std::sort(sig.begin(), sig.end());
        return std::adjacent_find(sig.begin(), sig.end()) == sig.end();
    }

    GroundSize k_;
    std::vector<Mask> pool_;
    std::vector<Mask> reps_;
    std::vector<Mask> chosen_;
    std::uint64_t budget_;
    std::uint64_t examined_ = 0;
    bool exhausted_ = false;
};

}  // namespace

bool AtomSelection::separates_all() const { return profiles_separate(k, chosen); }

std::string atom_label(std::size_t n) {
    if (n < 26) return std::string(1, static_cast<char>('a' + n));
    return "x" + std::to_string(n + 1);
}

SetFamily atoms_to_family(const AtomSelection& sel) {
    if (sel.chosen.empty()) throw DomainError("atoms_to_family: empty atom selection");
    if (sel.chosen.size() > kMaxUniverse) throw DomainError("atoms_to_family: more than 64 atoms");
    std::vector<std::string> universe;
    std::vector<ElementSet> sets(sel.k.k, 0);
    for (std::size_t a = 0; a < sel.chosen.size(); ++a) {
        const Mask p = sel.chosen[a];
        if (p == 0 || p > sel.k.full()) {
            throw DomainError("atoms_to_family: profile '" + format_subset(p) + "' is not a nonempty subset of [k]");
        }
        universe.push_back(atom_label(a));
        for (int i = 1; i <= sel.k.k; ++i) {
            if (contains(p, i)) sets[i - 1] |= ElementSet{1} << a;
        }
    }
    return SetFamily(std::move(universe), std::move(sets));
}

bool is_proper(const SetFamily& family) { return !family.first_containment().has_value(); }

WitnessReport verify_witness(const Configuration& cfg, const SetFamily& family) {
    WitnessReport report{cfg, family, std::nullopt, false, false, {}};
    if (family.k() != cfg.k().k) {
        report.mismatch = "family has " + std::to_string(family.k()) + " sets, configuration has k=" +
                          std::to_string(cfg.k().k);
        return report;
    }
    if (auto c = family.first_containment()) {
        report.mismatch = "not proper: X_" + std::to_string(c->first) + " ⊆ X_" + std::to_string(c->second);
        return report;
    }
    const auto domain = subset_domain(cfg.k());
    for (std::size_t a = 0; a < domain.size(); ++a) {
        for (std::size_t b = a + 1; b < domain.size(); ++b) {
            const Mask s = domain.members[a], t = domain.members[b];
            const bool equal_unions = family.union_of(s) == family.union_of(t);
            if (equal_unions != cfg.equivalent(s, t)) {
                report.mismatch = equal_unions ? "M_" + format_subset(s) + " = M_" + format_subset(t) +
                                                     " but " + format_subset(s) + " !~ " + format_subset(t)
                                               : format_subset(s) + " ~ " + format_subset(t) + " but M_" +
                                                     format_subset(s) + " != M_" + format_subset(t);
                return report;
            }
        }
    }
    report.checked = true;
    return report;
}

WitnessReport find_witness(const Configuration& cfg, const WitnessOptions& options) {
    WitnessReport report{cfg, std::nullopt, std::nullopt, false, false, {}};
    const GroundSize k = cfg.k();
    require_ground_size(k, 6, "find_witness");
    const std::vector<Mask> pool = compatible_profiles(cfg);
    // Adding compatible profiles keeps every required equality and can only
    // separate more, so the full pool realizes cfg iff anything does.
    if (pool.empty() || !profiles_separate(k, pool) ||
        !verify_witness(cfg, atoms_to_family({k, pool})).checked) {
        report.mismatch = "no proper family realizes this configuration";
        return report;
    }
    MinimalSelectionSearch search(cfg, pool, options.max_selections);
    auto found = search.run();
    AtomSelection sel{k, found ? *found : pool};
    report = verify_witness(cfg, atoms_to_family(sel));
    report.atoms = std::move(sel);
    report.minimal = found.has_value();
    return report;
}

std::set<std::pair<int, int>> intersection_graph(const SetFamily& family) {
    std::set<std::pair<int, int>> out;
    for (int i = 1; i <= family.k(); ++i) {
        for (int j = i + 1; j <= family.k(); ++j) {
            if (family.set(i) & family.set(j)) out.emplace(i, j);
        }
    }
    return out;
}

// ------------------------------------------------------------------ sweeps

namespace {

class SelectionEvaluator {
  public:
    explicit SelectionEvaluator(GroundSize k)
        : k_(k), profiles_(all_profiles(k)), domain_(subset_domain(k).members) {
        for (Mask s : domain_) {
            std::uint64_t hit = 0;
            for (std::size_t a = 0; a < profiles_.size(); ++a) {
                if (profiles_[a] & s) hit |= std::uint64_t{1} << a;
            }
            hits_.push_back(hit);
        }
    }

    std::size_t profile_count() const { return profiles_.size(); }

    /// sel: bit a set iff the a-th canonical profile is inhabited.
    bool proper(std::uint64_t sel) const {
        for (int i = 1; i <= k_.k; ++i) {
            Mask meet = k_.full();
            for (std::size_t a = 0; a < profiles_.size(); ++a) {
                if ((sel >> a & 1) && contains(profiles_[a], i)) meet &= profiles_[a];
            }
            if (meet != bit(i)) return false;
        }
        return true;
    }

    Configuration induced(std::uint64_t sel) const {
        ClosureBuilder builder(k_);
        std::unordered_map<std::uint64_t, Mask> first;
        for (std::size_t i = 0; i < domain_.size(); ++i) {
            auto [it, fresh] = first.try_emplace(sel & hits_[i], domain_[i]);
            if (!fresh) builder.merge(it->second, domain_[i]);
        }
        return builder.configuration();
    }

  private:
    GroundSize k_;
    std::vector<Mask> profiles_;
    std::vector<Mask> domain_;
    std::vector<std::uint64_t> hits_;
};

EnumerationResult finish_sweep(GroundSize k, const Canonicalizer& canon,
                               const std::map<CanonicalKey, Configuration>& found, bool attach_witness) {
    std::map<CanonicalKey, Configuration> forms;
    for (const auto& [key, cfg] : found) forms.emplace(key, canon.form(cfg));
    EnumerationResult r = make_result(k, Method::realizable, std::move(forms));
    if (attach_witness) {
        for (auto& c : r.classes) c.witness = find_witness(c.representative).witness;
    }
    return r;
}

}  // namespace

EnumerationResult enumerate_realizable(GroundSize k) {
    require_ground_size(k, 4, "enumerate_realizable (exhaustive)");
    const SelectionEvaluator eval(k);
    const Canonicalizer canon(k);
    std::map<CanonicalKey, Configuration> found;
    const std::uint64_t limit = std::uint64_t{1} << eval.profile_count();
    std::uint64_t proper = 0;
    for (std::uint64_t sel = 1; sel < limit; ++sel) {
        if (!eval.proper(sel)) continue;
        ++proper;
        const Configuration cfg = eval.induced(sel);
        found.try_emplace(canon.key(cfg), cfg);
    }
    EnumerationResult r = finish_sweep(k, canon, found, true);
    r.progress.nodes = limit - 1;
    r.progress.leaves = proper;
    return r;
}

EnumerationResult sample_realizable(GroundSize k, std::uint64_t samples, std::uint64_t seed) {
    require_ground_size(k, 6, "sample_realizable");
    const SelectionEvaluator eval(k);
    const Canonicalizer canon(k);
    std::mt19937_64 rng(seed);
    const std::uint64_t mask =
        eval.profile_count() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << eval.profile_count()) - 1;
    std::map<CanonicalKey, Configuration> found;
    std::uint64_t proper = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const std::uint64_t sel = rng() & mask;
        if (sel == 0 || !eval.proper(sel)) continue;
        ++proper;
        const Configuration cfg = eval.induced(sel);
        found.try_emplace(canon.key(cfg), cfg);
    }
    EnumerationResult r = finish_sweep(k, canon, found, false);
    r.complete = false;
    r.progress.nodes = samples;
    r.progress.leaves = proper;
    return r;
}

// ------------------------------------------------------------------ corpus

std::vector<CorpusRow> parse_corpus(const std::string& json_text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(source + ": not valid JSON: " + e.what());
    }
    if (!doc.is_array()) throw IoError(source + ": expected a JSON array of rows");
    std::vector<CorpusRow> rows;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& j = doc[i];
        try {
            CorpusRow row;
            row.table = j.at("table").get<int>();
            row.row = j.at("row").get<int>();
            row.top = j.at("top").get<std::vector<std::string>>();
            row.other = j.at("other").get<std::vector<std::string>>();
            row.sets = j.at("sets").get<std::vector<std::vector<std::string>>>();
            rows.push_back(std::move(row));
        } catch (const nlohmann::json::exception& e) {
            throw IoError(source + ": entry " + std::to_string(i) + ": " + e.what());
        }
    }
    return rows;
}

std::vector<CorpusRow> load_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus(buf.str(), path);
}

CorpusReport verify_corpus(const std::vector<CorpusRow>& rows) {
    CorpusReport report;
    const Canonicalizer canon4(GroundSize{4});
    std::vector<CanonicalKey> k4_keys;
    for (const auto& row : rows) {
        CorpusRowResult res;
        res.row = row;
        const std::string where =
            "table " + std::to_string(row.table) + " row " + std::to_string(row.row);
        const GroundSize k{static_cast<int>(row.sets.size())};
        std::vector<Relation> rel;
        try {
            require_ground_size(k, kMaxEnumerationK, where);
            for (const auto& list : {row.top, row.other}) {
                for (const auto& text : list) {
                    auto parsed = parse_relations(text, k);
                    rel.insert(rel.end(), parsed.begin(), parsed.end());
                }
            }
        } catch (const std::exception& e) {
            throw IoError(where + ": " + e.what());
        }
        res.config = closure(k, rel);
        try {
            res.report = verify_witness(*res.config, SetFamily::from_labels(row.sets));
            res.passed = res.report.checked;
            if (!res.passed) res.error = res.report.mismatch;
        } catch (const DomainError& e) {
            res.report.target = *res.config;
            res.error = e.what();
        }
        if (res.passed) ++report.passed;
        if (k.k == 4) {
            ++report.k4_rows;
            k4_keys.push_back(canon4.key(*res.config));
        }
        report.rows.push_back(std::move(res));
    }
    std::vector<CanonicalKey> sorted = k4_keys;
    std::sort(sorted.begin(), sorted.end());
    report.k4_pairwise_inequivalent = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    report.k4_exhaustive = sorted == enumerate_generated(GroundSize{4}).keys();
    return report;
}

}  // namespace latenum
