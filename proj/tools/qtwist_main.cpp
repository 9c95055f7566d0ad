// qtwist: exact verification suites for quaternionic connections and
// twistor-fiber geometry on the flat model.
//
//   qtwist check <suite>... [--n N] [--degree D] [--samples S] [--seed U64]
//                           [--format text|json] [--config PATH]
//
// The configuration file is flat key=value text (same keys as the flags);
// command-line flags override it. QTWIST_SEED is the fallback seed.
// Exit codes: 0 all checks pass, 1 at least one failure, 2 usage error.
#include "qtwist/checks.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    using namespace qtwist;

    CLI::App app{"exact identity checks for quaternionic twistor geometry"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string format = "text";
    // options live on the app so that the flat key=value config file maps
    // onto them directly; the subcommand falls through
    app.add_option("--n", cfg.n, "quaternionic dimension (dim M = 4n)")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    app.add_option("--degree", cfg.degree, "maximum degree of generated polynomial fields")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();
    app.add_option("--samples", cfg.samples, "sample count for randomized identities")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* seed_opt =
        app.add_option("--seed", cfg.seed, "64-bit seed of the deterministic stream");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.set_config("--config", "", "flat key=value configuration file");

    auto* check = app.add_subcommand("check", "run one or more named check suites");
    check->fallthrough();
    std::vector<std::string> suites;
    check->add_option("suite", suites,
                      "suite ids: algebra, connection, ehrep, twistor, penrose, hermtwist, all")
        ->required()
        ->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 exits 0 for --help; everything else is a usage error.
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (seed_opt->count() == 0) {
        if (const char* env = std::getenv("QTWIST_SEED")) {
            try {
                cfg.seed = std::stoull(env);
            } catch (...) {
                std::cerr << "error: QTWIST_SEED is not a 64-bit unsigned integer\n";
                return 2;
            }
        }
    }
    cfg.format = (format == "json") ? OutputFormat::json : OutputFormat::text;
    for (const std::string& s : suites) {
        if (std::find(known_suites().begin(), known_suites().end(), s) ==
            known_suites().end()) {
            std::cerr << "error: unknown suite '" << s << "'\nknown suites:";
            for (const auto& k : known_suites()) std::cerr << " " << k;
            std::cerr << "\n";
            return 2;
        }
    }
    cfg.suites = suites;

    auto start = std::chrono::steady_clock::now();
    std::vector<CheckReport> reports = run_checks(cfg);
    auto end = std::chrono::steady_clock::now();
    int64_t total_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();

    if (cfg.format == OutputFormat::json)
        std::cout << render_json(cfg, reports);
    else
        std::cout << render_text(cfg, reports, total_ms);

    for (const CheckReport& r : reports)
        if (r.status == CheckStatus::fail) return 1;
    return 0;
}
