#include "qtwist/checks.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace qtwist {

namespace checks {
void register_algebra(std::vector<Check>&);
void register_connection(std::vector<Check>&);
void register_ehrep(std::vector<Check>&);
void register_twistor(std::vector<Check>&);
void register_penrose(std::vector<Check>&);
void register_hermtwist(std::vector<Check>&);
}  // namespace checks

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

uint64_t check_seed(uint64_t base_seed, const std::string& check_id) {
    return splitmix64(base_seed ^ fnv1a(check_id));
}

const std::vector<Check>& all_checks() {
    static const std::vector<Check> list = [] {
        std::vector<Check> v;
        checks::register_algebra(v);
        checks::register_connection(v);
        checks::register_ehrep(v);
        checks::register_twistor(v);
        checks::register_penrose(v);
        checks::register_hermtwist(v);
        std::sort(v.begin(), v.end(),
                  [](const Check& a, const Check& b) { return a.id < b.id; });
        return v;
    }();
    return list;
}

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> s{"algebra", "connection", "ehrep",
                                            "twistor", "penrose",    "hermtwist",
                                            "all"};
    return s;
}

std::vector<CheckReport> run_checks(const SuiteConfig& cfg) {
    bool run_all = std::find(cfg.suites.begin(), cfg.suites.end(), "all") != cfg.suites.end();
    std::vector<CheckReport> reports;
    for (const Check& check : all_checks()) {
        bool selected = run_all || std::find(cfg.suites.begin(), cfg.suites.end(),
                                             check.suite) != cfg.suites.end();
        if (!selected) continue;
        CheckReport rep;
        rep.id = check.id;
        rep.anchor = check.anchor;
        rep.suite = check.suite;
        CheckContext ctx{cfg, Rng(check_seed(cfg.seed, check.id))};
        auto start = std::chrono::steady_clock::now();
        try {
            check.run(ctx);
            rep.status = ctx.failed ? CheckStatus::fail : CheckStatus::pass;
            rep.witness = ctx.witness;
        } catch (const DegreeOverflow& e) {
            rep.status = CheckStatus::fail;
            rep.witness = Json{{"failed_condition", "degree overflow"}, {"what", e.what()}};
        } catch (const std::exception& e) {
            rep.status = CheckStatus::fail;
            rep.witness = Json{{"failed_condition", "exception"}, {"what", e.what()}};
        }
        auto end = std::chrono::steady_clock::now();
        rep.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
        if (rep.status == CheckStatus::fail && rep.witness.empty()) {
            rep.witness = Json{{"failed_condition", "unspecified"},
                               {"config", {{"n", cfg.n},
                                           {"degree", cfg.degree},
                                           {"samples", cfg.samples},
                                           {"seed", cfg.seed}}}};
        }
        if (rep.status == CheckStatus::fail) {
            rep.witness["replay"] = Json{{"n", cfg.n},
                                         {"degree", cfg.degree},
                                         {"samples", cfg.samples},
                                         {"seed", cfg.seed},
                                         {"check", rep.id}};
        }
        reports.push_back(std::move(rep));
    }
    // canonical order regardless of how suites were listed
    std::sort(reports.begin(), reports.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
    return reports;
}

Json json_rat(const Rat& r) { return to_string(r); }

Json json_vec3(const Vec3& v) {
    return Json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])});
}

Json json_point(std::span<const Rat> p) {
    Json a = Json::array();
    for (const Rat& r : p) a.push_back(to_string(r));
    return a;
}

Json json_poly(const Poly& p) { return p.str(); }

Json json_one_form(const PolyVec& v) {
    Json a = Json::array();
    for (const Poly& p : v) a.push_back(p.str());
    return a;
}

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass:
            return "pass";
        case CheckStatus::fail:
            return "fail";
        default:
            return "skipped";
    }
}

}  // namespace

std::string render_json(const SuiteConfig& cfg, const std::vector<CheckReport>& reports) {
    Json root = Json::object();
    root["schema"] = 1;
    root["config"] = Json{{"n", cfg.n},
                          {"degree", cfg.degree},
                          {"samples", cfg.samples},
                          {"seed", cfg.seed}};
    Json arr = Json::array();
    for (const CheckReport& r : reports) {
        Json item = Json::object();
        item["check_id"] = r.id;
        item["anchor"] = r.anchor;
        item["suite"] = r.suite;
        item["status"] = status_name(r.status);
        if (r.status == CheckStatus::fail) item["witness"] = r.witness;
        // elapsed time is reported in the text format only, so that JSON
        // output is byte-identical for a fixed (config, seed)
        arr.push_back(std::move(item));
    }
    root["checks"] = std::move(arr);
    return root.dump(2) + "\n";
}

std::string render_text(const SuiteConfig& cfg, const std::vector<CheckReport>& reports,
                        int64_t total_ms) {
    std::ostringstream os;
    std::map<std::string, std::pair<int, int>> per_suite;  // pass, fail
    for (const CheckReport& r : reports) {
        os << (r.status == CheckStatus::pass ? "PASS" : "FAIL") << "  " << r.id << "  ["
           << r.anchor << "]  (" << r.elapsed_ms << " ms)\n";
        if (r.status == CheckStatus::fail) {
            os << "      witness: " << r.witness.dump() << "\n";
            per_suite[r.suite].second++;
        } else {
            per_suite[r.suite].first++;
        }
    }
    os << "\n";
    for (const auto& [suite, counts] : per_suite)
        os << suite << ": " << counts.first << " passed, " << counts.second << " failed\n";
    os << "seed " << cfg.seed << ", n = " << cfg.n << ", degree = " << cfg.degree
       << ", samples = " << cfg.samples << "\n";
    os << "total elapsed: " << total_ms << " ms\n";
    return os.str();
}

}  // namespace qtwist
