#include "latenum/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

namespace latenum {

namespace {

void check_domain_mask(GroundSize k, Mask m, std::string_view what) {
    if (m > k.full() || popcount(m) < 2) {
        throw DomainError(std::string(what) + ": subset '" + format_subset(m) +
                          "' is not a subset of size >= 2 of [" + std::to_string(k.k) + "]");
    }
}

std::vector<Mask> discrete_reps(GroundSize k) {
    if (k.k < 0 || k.k > kMaxEnumerationK) {
        throw DomainError("configuration size k=" + std::to_string(k.k) + " unsupported");
    }
    std::vector<Mask> rep(k.mask_count());
    for (Mask m = 0; m < rep.size(); ++m) rep[m] = m;
    return rep;
}

}  // namespace

// ---------------------------------------------------------------- SetFamily

SetFamily::SetFamily(std::vector<std::string> universe, std::vector<ElementSet> sets)
    : universe_(std::move(universe)), sets_(std::move(sets)) {
    if (universe_.size() > kMaxUniverse) {
        throw DomainError("universe has " + std::to_string(universe_.size()) +
                          " elements; at most 64 supported");
    }
    const ElementSet all = universe_.size() == 64 ? ~ElementSet{0}
                                                  : (ElementSet{1} << universe_.size()) - 1;
    ElementSet used = 0;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (sets_[i] == 0) throw DomainError("X_" + std::to_string(i + 1) + " is empty");
        if (sets_[i] & ~all) {
            throw DomainError("X_" + std::to_string(i + 1) + " has elements outside the universe");
        }
        used |= sets_[i];
    }
    if (used != all) throw DomainError("universe element not used by any set");
    std::set<std::string> distinct(universe_.begin(), universe_.end());
    if (distinct.size() != universe_.size()) throw DomainError("duplicate universe label");
}

SetFamily SetFamily::from_labels(const std::vector<std::vector<std::string>>& sets) {
    std::set<std::string> labels;
    for (const auto& s : sets) labels.insert(s.begin(), s.end());
    std::vector<std::string> universe(labels.begin(), labels.end());
    if (universe.size() > kMaxUniverse) {
        throw DomainError("universe has more than 64 elements");
    }
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < universe.size(); ++i) index[universe[i]] = static_cast<int>(i);
    std::vector<ElementSet> masks;
    for (const auto& s : sets) {
        ElementSet m = 0;
        for (const auto& label : s) m |= ElementSet{1} << index.at(label);
        masks.push_back(m);
    }
    return SetFamily(std::move(universe), std::move(masks));
}

ElementSet SetFamily::union_of(Mask s) const {
    ElementSet u = 0;
    for (int i = 1; s != 0; ++i, s >>= 1) {
        if (s & 1) u |= sets_.at(i - 1);
    }
    return u;
}

std::optional<std::pair<int, int>> SetFamily::first_containment() const {
    for (int i = 0; i < k(); ++i) {
        for (int j = 0; j < k(); ++j) {
            if (i != j && (sets_[i] & ~sets_[j]) == 0) return std::pair{i + 1, j + 1};
        }
    }
    return std::nullopt;
}

std::vector<std::vector<std::string>> SetFamily::labeled_sets() const {
    std::vector<std::vector<std::string>> out;
    for (ElementSet s : sets_) {
        auto& row = out.emplace_back();
        for (std::size_t e = 0; e < universe_.size(); ++e) {
            if (s >> e & 1) row.push_back(universe_[e]);
        }
    }
    return out;
}

std::string SetFamily::format_set(int index) const {
    const ElementSet s = set(index);
    std::string out;
    for (std::size_t e = 0; e < universe_.size(); ++e) {
        if (s >> e & 1) out += universe_[e];
    }
    return out;
}

// ------------------------------------------------------------ Configuration

Configuration::Configuration(GroundSize k) : k_(k), rep_(discrete_reps(k)) {}

Configuration Configuration::from_partition(const Partition& p) {
    if (!is_valid_configuration(p)) {
        throw DomainError("partition is not closed under the union rule");
    }
    const auto domain = subset_domain(p.k);
    std::vector<Mask> rep = discrete_reps(p.k);
    std::unordered_map<int, Mask> first;
    for (std::size_t pos = 0; pos < domain.size(); ++pos) {
        auto [it, fresh] = first.try_emplace(p.block_of[pos], domain.members[pos]);
        rep[domain.members[pos]] = it->second;
    }
    return Configuration(p.k, std::move(rep));
}

bool Configuration::is_discrete() const {
    for (Mask m = 0; m < rep_.size(); ++m) {
        if (rep_[m] != m) return false;
    }
    return true;
}

std::vector<std::vector<Mask>> Configuration::nontrivial_blocks() const {
    std::map<Mask, std::vector<Mask>, CanonicalLess> blocks;
    for (Mask m : all_subsets_canonical(k_)) blocks[rep_[m]].push_back(m);
    std::vector<std::vector<Mask>> out;
    for (auto& [rep, members] : blocks) {
        if (members.size() > 1) out.push_back(std::move(members));
    }
    return out;
}

std::vector<Mask> Configuration::representative_vector() const {
    std::vector<Mask> out;
    for (Mask m : subset_domain(k_).members) out.push_back(rep_[m]);
    return out;
}

// ----------------------------------------------------------- ClosureBuilder

ClosureBuilder::ClosureBuilder(GroundSize k) : k_(k), rep_(discrete_reps(k)) {}

ClosureBuilder::ClosureBuilder(const Configuration& cfg) : k_(cfg.k_), rep_(cfg.rep_) {}

bool ClosureBuilder::merge(Mask a, Mask b) {
    bool grew = false;
    pending_.clear();
    pending_.emplace_back(a, b);
    while (!pending_.empty()) {
        auto [x, y] = pending_.back();
        pending_.pop_back();
        const Mask rx = rep_[x], ry = rep_[y];
        if (rx == ry) continue;
        grew = true;
        const Mask keep = canonical_less(rx, ry) ? rx : ry;
        const Mask drop = keep == rx ? ry : rx;
        for (Mask& r : rep_) {
            if (r == drop) r = keep;
        }
        // Earlier members were already closed against their old
        // representative, so propagating from the two old representatives
        // covers every new pair.
        for (int i = 1; i <= k_.k; ++i) pending_.emplace_back(rx | bit(i), ry | bit(i));
    }
    return grew;
}

// ------------------------------------------------------------ operations

Configuration config_from_family(const SetFamily& family) {
    const GroundSize k = family.ground();
    ClosureBuilder builder(k);
    std::unordered_map<ElementSet, Mask> first;
    for (Mask m : subset_domain(k).members) {
        auto [it, fresh] = first.try_emplace(family.union_of(m), m);
        if (!fresh) builder.merge(it->second, m);
    }
    // Equal unions stay equal after adjoining X_i, so the merges above never
    // propagate beyond what the family induces.
    return builder.configuration();
}

Configuration closure(GroundSize k, const std::vector<Relation>& generators) {
    ClosureBuilder builder(k);
    for (auto [a, b] : generators) {
        check_domain_mask(k, a, "closure");
        check_domain_mask(k, b, "closure");
        builder.merge(a, b);
    }
    return builder.configuration();
}

Configuration closure(GroundSize k, const std::vector<CoverPair>& generators) {
    std::vector<Relation> rel;
    for (const auto& p : generators) {
        if (p.added < 1 || p.added > k.k || contains(p.base, p.added)) {
            throw DomainError("cover pair adds index " + std::to_string(p.added) +
                              " already in or outside the base");
        }
        rel.emplace_back(p.base, p.top());
    }
    return closure(k, rel);
}

bool is_valid_configuration(const Partition& p) {
    // Per-k lookup tables; the partition filter calls this once per set
    // partition of the domain.
    struct Tables {
        std::vector<Mask> members;
        std::vector<int> position;
    };
    thread_local std::vector<Tables> cache(kMaxEnumerationK + 1);
    if (p.k.k < 1 || p.k.k > kMaxEnumerationK) return false;
    Tables& t = cache[p.k.k];
    if (t.position.empty()) {
        t.members = subset_domain(p.k).members;
        t.position.assign(p.k.mask_count(), -1);
        for (std::size_t i = 0; i < t.members.size(); ++i) t.position[t.members[i]] = static_cast<int>(i);
    }
    const std::size_t n = t.members.size();
    if (p.block_of.size() != n) return false;

    std::unordered_map<int, Mask> first_map;
    thread_local std::vector<Mask> first_vec;
    const bool dense = std::all_of(p.block_of.begin(), p.block_of.end(),
                                   [n](int b) { return b >= 0 && static_cast<std::size_t>(b) < n; });
    if (dense) {
        first_vec.assign(n, 0);
        for (std::size_t i = n; i-- > 0;) first_vec[p.block_of[i]] = t.members[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) first_map.try_emplace(p.block_of[i], t.members[i]);
    }
    // Related pairs reduce to (S, first member of S's block) by transitivity.
    for (std::size_t i = 0; i < n; ++i) {
        const Mask s = t.members[i];
        const Mask r = dense ? first_vec[p.block_of[i]] : first_map.at(p.block_of[i]);
        if (r == s) continue;
        for (int idx = 1; idx <= p.k.k; ++idx) {
            if (p.block_of[t.position[s | bit(idx)]] != p.block_of[t.position[r | bit(idx)]]) return false;
        }
    }
    return true;
}

Partition to_partition(const Configuration& cfg) {
    const auto domain = subset_domain(cfg.k());
    Partition p{cfg.k(), std::vector<int>(domain.size())};
    std::unordered_map<Mask, int> position;
    for (std::size_t i = 0; i < domain.size(); ++i) position[domain.members[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < domain.size(); ++i) p.block_of[i] = position.at(cfg.class_of(domain.members[i]));
    return p;
}

std::vector<CoverPair> candidate_cover_pairs(GroundSize k) {
    std::vector<CoverPair> out;
    for (Mask s : subset_domain(k).members) {
        for (int i = 1; i <= k.k; ++i) {
            if (!contains(s, i)) out.push_back({s, i});
        }
    }
    return out;
}

std::vector<CoverPair> cover_pairs(const Configuration& cfg) {
    std::vector<CoverPair> out;
    for (const auto& p : candidate_cover_pairs(cfg.k())) {
        if (cfg.equivalent(p.base, p.top())) out.push_back(p);
    }
    return out;
}

std::vector<CoverPair> generating_pairs(const Configuration& cfg) {
    std::vector<CoverPair> kept = cover_pairs(cfg);
    // Drop pairs from the top of the lattice down; what survives is
    // irredundant and tends to read like the hand-written tables.
    for (std::size_t i = kept.size(); i-- > 0;) {
        std::vector<CoverPair> trial = kept;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (closure(cfg.k(), trial) == cfg) kept = std::move(trial);
    }
    return kept;
}

bool leq(const Configuration& cfg, Mask s, Mask t) {
    if (s > cfg.k().full() || t > cfg.k().full()) throw DomainError("leq: mask outside [k]");
    return cfg.equivalent(s | t, t);
}

std::vector<Relation> parse_relations(std::string_view text, GroundSize k) {
    std::vector<Relation> out;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
    while (i < text.size()) {
        if (is_sep(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !is_sep(text[j])) ++j;
        const std::string_view token = text.substr(i, j - i);
        i = j;

        std::vector<Mask> sides;
        std::size_t start = 0;
        for (std::size_t p = 0; p <= token.size(); ++p) {
            if (p == token.size() || token[p] == '~' || token[p] == '-') {
                const auto side = token.substr(start, p - start);
                if (side.empty()) {
                    throw MalformedInput("relation '" + std::string(token) + "': empty side");
                }
                const Mask m = parse_subset(side, k);
                if (popcount(m) < 2) {
                    throw MalformedInput("relation '" + std::string(token) +
                                         "': sides must have at least two indices");
                }
                sides.push_back(m);
                start = p + 1;
            }
        }
        if (sides.size() < 2) {
            throw MalformedInput("relation '" + std::string(token) + "' has no '~' or '-'");
        }
        for (std::size_t s = 1; s < sides.size(); ++s) out.emplace_back(sides[s - 1], sides[s]);
    }
    return out;
}

std::string format_pair(const CoverPair& p, char sep) {
    return format_subset(p.base) + sep + format_subset(p.top());
}

}  // namespace latenum
