#pragma once

// Verification suites. Each suite compares two independently computed
// artifacts and reports every disagreement with the inputs that produced it.

#include "heatlaw/coefficients.hpp"
#include "heatlaw/json_io.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace heatlaw::harness {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct Failure {
    std::string case_id;
    std::string message;
    Json payload;
};

struct SuiteReport {
    std::string suite;
    std::size_t cases = 0;
    std::vector<Failure> failures;
    std::uint64_t seed = kDefaultSeed;
    double wall_ms = 0.0;
    Json details = Json::object();

    bool passed() const { return failures.empty(); }
};

/// wall_ms is the only field that varies between identical runs.
Json to_json(const SuiteReport& report, bool include_timing = true);

using AlphaBuilder = std::function<RationalVec(const RationalVec&)>;

SuiteReport verify_recurrence_vs_explicit(std::size_t n_max, std::size_t trials, std::uint64_t seed = kDefaultSeed,
                                          const AlphaBuilder& builder = build_alpha);
SuiteReport verify_induction(std::size_t n_max, std::size_t trials, std::uint64_t seed = kDefaultSeed);
SuiteReport verify_beta_properties(std::size_t n_max, std::uint64_t seed = kDefaultSeed);
SuiteReport verify_stability_dichotomy(std::size_t cases, std::uint64_t seed = kDefaultSeed, std::size_t modes = 64,
                                       double length = 1.0);
SuiteReport verify_equivalence_numeric(const std::vector<std::size_t>& orders, double tolerance,
                                       std::uint64_t seed = kDefaultSeed, std::size_t modes = 16);
SuiteReport verify_dirac_limit(const std::vector<std::size_t>& orders, std::uint64_t seed = kDefaultSeed);
SuiteReport verify_solver_anchors(std::uint64_t seed = kDefaultSeed);
SuiteReport verify_catalog();

/// Suite names accepted by run_suite, in the order "all" runs them.
const std::vector<std::string>& suite_names();
std::vector<SuiteReport> run_suite(std::string_view name, std::uint64_t seed = kDefaultSeed);

}  // namespace heatlaw::harness
