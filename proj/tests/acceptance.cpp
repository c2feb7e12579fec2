// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include "heatlaw/harness.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace heatlaw;
using harness::SuiteReport;

namespace {

struct Outcome {
    bool ok;
    std::string note;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        o.ok = false;
        o.note += " runtime limit exceeded";
    }
    if (!o.ok) ++failures;
    std::printf("%s  %d  %-28s %8.3f s", o.ok ? "PASS" : "FAIL", id, name, secs);
    if (limit_s > 0) std::printf(" (limit %.0f s)", limit_s);
    std::printf("  %s\n", o.note.c_str());
    std::fflush(stdout);
}

Outcome from_report(const SuiteReport& r, std::string note = "") {
    std::string msg = std::to_string(r.cases) + " cases, " + std::to_string(r.failures.size()) + " failures";
    if (!r.failures.empty()) msg += "; first: " + r.failures.front().case_id + ": " + r.failures.front().message;
    if (!note.empty()) msg += "; " + note;
    return {r.passed(), msg};
}

}  // namespace

int main() {
    const auto seed = harness::kDefaultSeed;

    criterion(1, "recurrence vs explicit", 5.0, [&] {
        return from_report(harness::verify_recurrence_vs_explicit(8, 100, seed));
    });

    criterion(2, "induction round trip", 10.0, [&] {
        const SuiteReport r = harness::verify_induction(6, 50, seed);
        Outcome o = from_report(r, "dirac branches " + r.details.at("dirac_branches").dump());
        o.ok = o.ok && r.details.at("dirac_branches").get<std::size_t>() > 0;
        return o;
    });

    criterion(3, "beta properties", 10.0, [&] { return from_report(harness::verify_beta_properties(6, seed)); });

    criterion(4, "stability dichotomy", 10.0, [&] {
        const SuiteReport r = harness::verify_stability_dichotomy(200, seed, 64, 1.0);
        const double residual = r.details.at("max_root_residual").get<double>();
        Outcome o = from_report(r, "max root residual " + r.details.at("max_root_residual").dump());
        o.ok = o.ok && residual <= 1e-10;
        return o;
    });

    criterion(5, "memory/local equivalence", 30.0, [&] {
        const SuiteReport r = harness::verify_equivalence_numeric({0, 1, 2}, 1e-6, seed, 16);
        return from_report(r, "max discrepancy " + r.details.at("max_discrepancy").dump());
    });

    criterion(6, "dirac limit", 0.0, [&] {
        const SuiteReport r = harness::verify_dirac_limit({0, 1}, seed);
        return from_report(r, "ratios " + r.details.at("ratios").dump());
    });

    criterion(7, "solver anchors", 0.0, [&] { return from_report(harness::verify_solver_anchors(seed)); });

    criterion(8, "catalog coverage", 0.0, [&] {
        const SuiteReport r = harness::verify_catalog();
        Outcome o = from_report(r, r.details.at("matched").dump() + "/" + r.details.at("presets").dump() + " identified");
        o.ok = o.ok && r.details.at("matched").get<std::size_t>() == 10;
        return o;
    });

    std::printf("%s\n", failures == 0 ? "all acceptance criteria passed" : "acceptance criteria failed");
    return failures == 0 ? 0 : 1;
}
