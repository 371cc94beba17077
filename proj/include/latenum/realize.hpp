// Realizability of configurations by proper set families.
//
// Which unions coincide depends only on which Venn cells of X_1..X_k are
// inhabited.  A cell is named by its profile, the set of indices i with the
// cell inside X_i, so a family is determined up to element renaming by a
// selection of profiles.  The search space for witnesses is therefore the
// 2^(2^k - 1) profile selections.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latenum/enumerate.hpp"
#include "latenum/lattice.hpp"

namespace latenum {

/// A list of nonzero profiles.  Order fixes element labels; repeats give
/// distinct elements with the same profile.
struct AtomSelection {
    GroundSize k;
    std::vector<Mask> chosen;

    /// For every ordered i != j some profile contains i but not j.
    bool separates_all() const;
};

/// One element per atom, labeled a, b, c, ... in list order.
SetFamily atoms_to_family(const AtomSelection& sel);

/// The element label used for the n-th atom (0-based).
std::string atom_label(std::size_t n);

/// No X_i contained in (or equal to) another X_j.
bool is_proper(const SetFamily& family);

struct WitnessReport {
    Configuration target;
    std::optional<SetFamily> witness;
    std::optional<AtomSelection> atoms;
    bool checked = false;
    /// find_witness: the witness uses the fewest possible atoms.
    bool minimal = false;
    std::string mismatch;
};

struct WitnessOptions {
    /// Upper bound on profile selections examined in the minimality search;
    /// on overflow the maximal witness is returned with minimal = false.
    std::uint64_t max_selections = 50'000'000;
};

/// Fewest-atom proper witness, ties broken by the lexicographically least
/// profile list.  No witness means no family realizes cfg.
WitnessReport find_witness(const Configuration& cfg, const WitnessOptions& options = {});

/// checked iff family is proper and M_S = M_T exactly when S ~ T.
WitnessReport verify_witness(const Configuration& cfg, const SetFamily& family);

/// Pairs {i, j}, i < j, with X_i and X_j intersecting.
std::set<std::pair<int, int>> intersection_graph(const SetFamily& family);

/// Classes of configurations induced by every proper profile selection.
/// k <= 4.
EnumerationResult enumerate_realizable(GroundSize k);

/// Classes induced by `samples` random proper profile selections; any k.
EnumerationResult sample_realizable(GroundSize k, std::uint64_t samples, std::uint64_t seed);

// ------------------------------------------------------------------ corpus

/// One transcribed table row: relations, and the sets realizing them.
struct CorpusRow {
    int table = 0;
    int row = 0;
    std::vector<std::string> top;
    std::vector<std::string> other;
    std::vector<std::vector<std::string>> sets;
};

std::vector<CorpusRow> parse_corpus(const std::string& json_text, const std::string& source = "corpus");
std::vector<CorpusRow> load_corpus_file(const std::string& path);
/// The bundled transcription of the reference tables for k = 3 and k = 4.
const std::string& builtin_corpus_json();

struct CorpusRowResult {
    CorpusRow row;
    std::optional<Configuration> config;
    WitnessReport report;
    bool passed = false;
    std::string error;
};

struct CorpusReport {
    std::vector<CorpusRowResult> rows;
    std::size_t passed = 0;
    std::size_t k4_rows = 0;
    bool k4_pairwise_inequivalent = false;
    bool k4_exhaustive = false;

    bool ok() const { return passed == rows.size() && k4_pairwise_inequivalent && k4_exhaustive; }
};

/// Closes each row's relations, checks its sets realize them, then checks
/// that the k = 4 rows are pairwise inequivalent and cover every class.
CorpusReport verify_corpus(const std::vector<CorpusRow>& rows);

}  // namespace latenum
