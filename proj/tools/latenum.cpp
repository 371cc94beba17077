// latenum: enumerate, realize and canonicalize union configurations, and
// compute Taylor-complex Betti tables.
//
//   latenum enumerate --k 4 --method generated
//   latenum enumerate --k 5 --budget 600 --checkpoint k5.json --progress
//   latenum verify [--corpus file.json]
//   latenum canon --k 4 "123~1234, 23~234"
//   latenum witness --k 4 "12~1234, 23~234, 14~134"
//   latenum betti family.json --field q --total

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "latenum/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Enumerate equivalence classes of union configurations"};
    app.require_subcommand(1);
    app.fallthrough();

    latenum::EnumerateArgs enum_args;
    double budget = 0.0;
    auto* enumerate = app.add_subcommand("enumerate", "enumerate configuration classes of size k");
    enumerate->add_option("--k", enum_args.k, "number of sets")->required();
    enumerate->add_option("--method", enum_args.method, "generated | partitions | realizable")
        ->check(CLI::IsMember({"generated", "partitions", "realizable"}));
    enumerate->add_option("--format", enum_args.format, "json | table")->check(CLI::IsMember({"json", "table"}));
    enumerate->add_option("--budget", budget, "time budget in seconds (generated)");
    enumerate->add_option("--checkpoint", enum_args.checkpoint, "checkpoint file (generated)");
    enumerate->add_flag("--resume", enum_args.resume, "resume from --checkpoint");
    enumerate->add_flag("--progress", enum_args.progress, "report progress on stderr");
    enumerate->add_option("--samples", enum_args.samples, "random selections for realizable, k >= 5");
    enumerate->add_option("--seed", enum_args.seed, "seed for sampling");

    std::string corpus;
    auto* verify = app.add_subcommand("verify", "check the bundled or given witness corpus");
    verify->add_option("--corpus", corpus, "corpus JSON file (default: built-in)");

    std::string family_path, field = "q";
    bool with_total = false;
    auto* betti = app.add_subcommand("betti", "bigraded Betti table of a proper family");
    betti->add_option("family", family_path, "family JSON file")->required();
    betti->add_option("--field", field, "q | f2")->check(CLI::IsMember({"q", "f2"}));
    betti->add_flag("--total", with_total, "include ranks by total degree");

    std::string relations;
    int rel_k = 0;
    auto* canon = app.add_subcommand("canon", "canonical key of the closure of a relation list");
    canon->add_option("--k", rel_k, "number of sets")->required();
    canon->add_option("relations", relations, "e.g. \"123~1234, 12~124\"");

    auto* witness = app.add_subcommand("witness", "minimal realizing family for a relation list");
    witness->add_option("--k", rel_k, "number of sets")->required();
    witness->add_option("relations", relations, "e.g. \"123~1234, 12~124\"");

    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: LATENUM_THREADS or all cores)");

    CLI11_PARSE(app, argc, argv);

    latenum::CommandOutcome outcome;
    if (*enumerate) {
        enum_args.threads = threads;
        if (budget > 0) enum_args.budget_seconds = budget;
        outcome = latenum::run_enumerate(enum_args);
    } else if (*verify) {
        outcome = latenum::run_verify(corpus);
    } else if (*betti) {
        outcome = latenum::run_betti(family_path, field == "q" ? latenum::Field::Q : latenum::Field::F2, with_total);
    } else if (*canon) {
        outcome = latenum::run_canon(relations, rel_k);
    } else if (*witness) {
        outcome = latenum::run_witness(relations, rel_k);
    }
    std::cout << outcome.payload;
    std::cerr << outcome.diagnostics;
    return outcome.exit_code;
}
