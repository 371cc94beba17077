// Command implementations behind the `latenum` executable.  Each returns its
// payload instead of printing so the commands can be exercised in-process.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "latenum/taylor.hpp"

namespace latenum {

/// exit_code: 0 success, 1 verification failure, 2 usage or input error.
struct CommandOutcome {
    int exit_code = 0;
    std::string payload;      // standard output; JSON unless a table was requested
    std::string diagnostics;  // standard error
};

struct EnumerateArgs {
    int k = 0;
    std::string method = "generated";  // generated | partitions | realizable
    std::string format = "json";       // json | table
    unsigned threads = 0;
    std::optional<double> budget_seconds;
    std::string checkpoint;
    bool resume = false;
    /// realizable with k >= 5: number of random profile selections.
    std::uint64_t samples = 0;
    std::uint64_t seed = 0x5eed;
    bool progress = false;  // progress lines on standard error
};

CommandOutcome run_enumerate(const EnumerateArgs& args);

/// Empty path selects the bundled corpus.
CommandOutcome run_verify(const std::string& corpus_path);

CommandOutcome run_betti(const std::string& family_path, Field field, bool with_total);

CommandOutcome run_canon(const std::string& relations, int k);

/// Minimal witness for the closure of a relation string.
CommandOutcome run_witness(const std::string& relations, int k);

}  // namespace latenum
