// Named check suites with deterministic seeded sampling and replayable
// failure witnesses. Each check owns a substream derived from (seed,
// check id), so results are independent of execution order.
#pragma once

#include "qtwist/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace qtwist {

using Json = nlohmann::ordered_json;

enum class OutputFormat { text, json };

struct SuiteConfig {
    int n = 2;
    int degree = 2;
    int samples = 100;
    uint64_t seed = 42;
    std::vector<std::string> suites;  // validated against known ids
    OutputFormat format = OutputFormat::text;
};

enum class CheckStatus { pass, fail, skipped };

struct CheckReport {
    std::string id;
    std::string anchor;  // the identity under test, as a formula string
    std::string suite;
    CheckStatus status = CheckStatus::skipped;
    Json witness;  // replayable counterexample; always present on failure
    int64_t elapsed_ms = 0;
};

// Deterministic stream: mt19937_64 seeded per check from (seed, check id).
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t u64() { return eng_(); }
    // uniform in [lo, hi] without distribution objects (stable across
    // libraries)
    long pick(long lo, long hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(eng_() % span);
    }
    // numerator and denominator uniform in [-9, 9] \ {0}
    Rat rat() {
        long num = nonzero();
        long den = nonzero();
        return make_rat(num, den);
    }
    Rat rat_nonzero() {
        Rat r = rat();
        while (is_zero(r)) r = rat();
        return r;
    }
    long nonzero() {
        long v = pick(-9, 9);
        while (v == 0) v = pick(-9, 9);
        return v;
    }

    Poly poly(int nvars, int max_degree, int terms) {
        Poly p(nvars);
        for (int t = 0; t < terms; ++t) {
            Mono m(static_cast<size_t>(nvars), 0);
            int td = static_cast<int>(pick(0, max_degree));
            for (int k = 0; k < td; ++k)
                m[static_cast<size_t>(pick(0, nvars - 1))] += 1;
            p.add_term(m, rat());
        }
        return p;
    }

    PolyVec one_form(int nvars, int max_degree, int terms_per_entry = 2) {
        PolyVec v(static_cast<size_t>(nvars), Poly::zero(nvars));
        for (int i = 0; i < nvars; ++i) v[static_cast<size_t>(i)] = poly(nvars, max_degree, terms_per_entry);
        return v;
    }

    QSection q_section(int nvars, int max_degree, int terms_per_entry = 2) {
        return {poly(nvars, max_degree, terms_per_entry), poly(nvars, max_degree, terms_per_entry),
                poly(nvars, max_degree, terms_per_entry)};
    }

    std::vector<Rat> point(int nvars) {
        std::vector<Rat> p(static_cast<size_t>(nvars));
        for (auto& v : p) v = rat();
        return p;
    }

    RatMat rat_matrix(int rows, int cols) {
        RatMat m(rows, cols, Rat(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = rat();
        return m;
    }

private:
    std::mt19937_64 eng_;
};

uint64_t check_seed(uint64_t base_seed, const std::string& check_id);

struct CheckContext {
    const SuiteConfig& cfg;
    Rng rng;
    Json witness = Json::object();
    bool failed = false;

    // Records a named condition; on the first failure the witness is kept.
    void require(bool ok, const std::string& what, Json detail = {}) {
        if (ok || failed) return;
        failed = true;
        witness["failed_condition"] = what;
        if (!detail.is_null()) witness["detail"] = std::move(detail);
    }
};

struct Check {
    std::string id;
    std::string anchor;
    std::string suite;
    std::function<void(CheckContext&)> run;
};

const std::vector<Check>& all_checks();
const std::vector<std::string>& known_suites();  // includes "all"

std::vector<CheckReport> run_checks(const SuiteConfig& cfg);

// Witness helpers.
Json json_rat(const Rat& r);
Json json_vec3(const Vec3& v);
Json json_point(std::span<const Rat> p);
Json json_poly(const Poly& p);
Json json_one_form(const PolyVec& v);

// Rendering; JSON output is byte-stable for fixed (config, seed) — timing
// lives only in the human-readable text format.
std::string render_json(const SuiteConfig& cfg, const std::vector<CheckReport>& reports);
std::string render_text(const SuiteConfig& cfg, const std::vector<CheckReport>& reports,
                        int64_t total_ms);

}  // namespace qtwist
