#include "heatlaw/harness.hpp"

#include "heatlaw/catalog.hpp"
#include "heatlaw/errors.hpp"
#include "heatlaw/law.hpp"
#include "heatlaw/modal.hpp"
#include "heatlaw/roots.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace heatlaw::harness {

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    // p/q with p in [lo, hi], q in [1, den_max].
    Rational rational(long lo, long hi, long den_max = 100) {
        std::uniform_int_distribution<long> num(lo, hi);
        std::uniform_int_distribution<long> den(1, den_max);
        Rational r(num(rng_), den(rng_));
        r.canonicalize();
        return r;
    }
    Rational positive() { return rational(1, 100); }
    // p/100 with p in [lo, hi].
    Rational percent(long lo, long hi) {
        Rational r(std::uniform_int_distribution<long>(lo, hi)(rng_), 100);
        r.canonicalize();
        return r;
    }
    // Uniform-ish in [0, 1).
    Rational unit_interval() {
        std::uniform_int_distribution<long> den(1, 100);
        const long q = den(rng_);
        std::uniform_int_distribution<long> num(0, q - 1);
        Rational r(num(rng_), q);
        r.canonicalize();
        return r;
    }
    bool chance(int one_in) { return std::uniform_int_distribution<int>(1, one_in)(rng_) == 1; }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

SuiteReport start(std::string name, std::uint64_t seed) {
    SuiteReport r;
    r.suite = std::move(name);
    r.seed = seed;
    return r;
}

void fail(SuiteReport& r, std::string id, std::string message, Json payload = Json::object()) {
    r.failures.push_back({std::move(id), std::move(message), std::move(payload)});
}

Json params_json(const ParameterSequence& p) {
    Json j;
    to_json(j, p);
    return j;
}

// Positive kappa_0..kappa_{n-1}; kappa_n > 0 unless allow_terminal.
ParameterSequence random_params(Sampler& s, std::size_t n, bool zero_epsilons) {
    ParameterSequence p;
    for (std::size_t i = 0; i < n; ++i) {
        p.epsilon.push_back(zero_epsilons && s.chance(4) ? Rational(0) : s.positive());
        p.omega.push_back(s.chance(3) ? Rational(0) : s.unit_interval());
    }
    for (std::size_t i = 0; i <= n; ++i) p.kappa.push_back(s.positive());
    return p;
}

HeatLaw law_of_order(const ParameterSequence& p) { return p.order() == 0 ? fourier_law(p.kappa.at(0)) : build_law(p); }

std::string case_name(std::string_view prefix, std::size_t n, std::size_t trial) {
    return std::string(prefix) + "/n=" + std::to_string(n) + "/" + std::to_string(trial);
}

double relative_l2(const std::vector<double>& ref, const std::vector<double>& other, double length) {
    std::vector<double> diff(ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) diff[k] = ref[k] - other[k];
    const double scale = modal::l2_norm(ref, length);
    return modal::l2_norm(diff, length) / (scale > 0.0 ? scale : 1.0);
}

}  // namespace

Json to_json(const SuiteReport& report, bool include_timing) {
    Json j;
    j["suite"] = report.suite;
    j["cases"] = report.cases;
    j["failures"] = Json::array();
    for (const auto& f : report.failures) {
        j["failures"].push_back({{"case", f.case_id}, {"message", f.message}, {"payload", f.payload}});
    }
    j["seed"] = report.seed;
    if (include_timing) j["wall_ms"] = report.wall_ms;
    j["passed"] = report.passed();
    if (!report.details.empty()) j["details"] = report.details;
    return j;
}

SuiteReport verify_recurrence_vs_explicit(std::size_t n_max, std::size_t trials, std::uint64_t seed,
                                          const AlphaBuilder& builder) {
    if (n_max > 10) throw ValidationError("verify_recurrence_vs_explicit: n_max must be <= 10");
    const Timer timer;
    SuiteReport report = start("recurrence", seed);
    Sampler s(seed);
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::size_t t = 0; t < trials; ++t) {
            RationalVec eps;
            for (std::size_t i = 0; i < n; ++i) eps.push_back(s.chance(5) ? Rational(0) : s.rational(1, 100));
            ++report.cases;
            const RationalVec recurrence = builder(eps);
            for (std::size_t i = 1; i <= n; ++i) {
                const Rational expected = alpha_explicit(eps, i);
                const Rational got = i <= recurrence.size() ? recurrence[i - 1] : Rational(0);
                if (got != expected) {
                    fail(report, case_name("alpha", n, t), "alpha_n^" + std::to_string(i) + " recurrence differs from the symmetric sum",
                         {{"epsilon", to_json_value(eps)}, {"i", i}, {"recurrence", to_string(got)}, {"explicit", to_string(expected)}});
                    break;
                }
            }
        }
    }
    report.wall_ms = timer.ms();
    return report;
}

SuiteReport verify_induction(std::size_t n_max, std::size_t trials, std::uint64_t seed) {
    const Timer timer;
    SuiteReport report = start("induction", seed);
    Sampler s(seed);
    std::size_t dirac = 0;
    std::size_t terminal = 0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        for (std::size_t t = 0; t < trials; ++t) {
            const std::string id = case_name("relax", n, t);
            const ParameterSequence base = random_params(s, n, true);
            const Rational eps_next = s.chance(4) ? Rational(0) : s.positive();
            const Rational omega_next = s.chance(3) ? Rational(0) : s.unit_interval();
            const Rational kappa_next = s.chance(4) ? Rational(0) : s.positive();
            const Kernel kernel = sgn(eps_next) == 0 ? Kernel::dirac() : Kernel::exponential(eps_next);
            dirac += sgn(eps_next) == 0;
            terminal += sgn(kappa_next) == 0;
            ++report.cases;

            ParameterSequence next = base;
            next.epsilon.push_back(eps_next);
            next.omega.push_back(omega_next);
            next.kappa.push_back(kappa_next);
            const Json payload = {{"params", params_json(next)}};
            try {
                const HeatLaw memory = attach_memory(law_of_order(base), omega_next, kernel, kappa_next);
                const HeatLaw relaxed = relax_exponential(memory);
                const HeatLaw expected = build_law(next);
                if (!same_law(relaxed, expected)) {
                    Json p = payload;
                    p["relaxed"] = render(relaxed);
                    p["expected"] = render(expected);
                    fail(report, id, "relaxed memory law differs from the order n+1 law", p);
                    continue;
                }
                if (sgn(eps_next) == 0 && !same_law(localize(memory), expected)) {
                    fail(report, id, "Dirac memory law does not localize to the order n+1 law", payload);
                    continue;
                }
                // Both equations must agree too; the law comparison alone ignores how they are normalized.
                if (to_evolution(relaxed) != to_evolution(expected)) {
                    fail(report, id, "evolution equations of relaxed and built laws differ", payload);
                }
            } catch (const std::exception& e) {
                fail(report, id, std::string("unexpected error: ") + e.what(), payload);
            }
        }

        // omega_{n+1} = 1 must be rejected before any comparison.
        ++report.cases;
        const ParameterSequence base = random_params(s, n, false);
        try {
            (void)attach_memory(law_of_order(base), Rational(1), Kernel::exponential(Rational(1, 2)), Rational(1));
            fail(report, case_name("omega-one", n, 0), "omega = 1 was accepted", {{"params", params_json(base)}});
        } catch (const ValidationError&) {
        }
    }
    report.details = {{"dirac_branches", dirac}, {"terminal_branches", terminal}};
    report.wall_ms = timer.ms();
    return report;
}

SuiteReport verify_beta_properties(std::size_t n_max, std::uint64_t seed) {
    const Timer timer;
    SuiteReport report = start("beta", seed);
    Sampler s(seed);
    std::size_t vanishing_hypotheses = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            for (int omega1_positive = 0; omega1_positive <= 1; ++omega1_positive) {
                ParameterSequence p = random_params(s, n, false);
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(mask >> i & 1U)) p.epsilon[i] = 0;
                }
                p.omega[0] = omega1_positive ? s.percent(1, 99) : Rational(0);
                if (s.chance(4)) p.kappa[n] = 0;
                ++report.cases;
                const std::string id = "n=" + std::to_string(n) + "/mask=" + std::to_string(mask) + "/omega1" +
                                       (omega1_positive ? ">0" : "=0");
                const CoefficientTable table = build_table(p);
                Json payload = {{"params", params_json(p)}, {"beta", to_json_value(table.beta)}};

                for (std::size_t i = 1; i <= n; ++i) {
                    if (sgn(table.beta_at(i)) <= 0) {
                        fail(report, id, "(i) beta_n^" + std::to_string(i) + " is not positive", payload);
                        break;
                    }
                }
                const bool all_eps = mask + 1 == (std::size_t{1} << n);
                const bool predicted = omega1_positive && all_eps;
                if ((sgn(table.beta_at(2 * n)) > 0) != predicted) {
                    fail(report, id, "(ii) sign of beta_n^{2n} contradicts omega_1 > 0 and all epsilon > 0", payload);
                }
                if (sgn(table.beta_at(2 * n)) < 0) fail(report, id, "(ii) beta_n^{2n} is negative", payload);
                for (std::size_t k = 0; k < n; ++k) {
                    if (is_zero(table.alpha_at(n - k))) ++vanishing_hypotheses;
                    if (!beta_vanishing_check(p, k)) {
                        Json q = payload;
                        q["k"] = k;
                        fail(report, id, "(iii) alpha_n^{n-k} = 0 but some beta_n^{2n-j}, j <= k, is nonzero", q);
                    }
                }
            }
        }
    }
    report.details = {{"vanishing_hypotheses_exercised", vanishing_hypotheses}};
    report.wall_ms = timer.ms();
    return report;
}

SuiteReport verify_stability_dichotomy(std::size_t cases, std::uint64_t seed, std::size_t modes, double length) {
    const Timer timer;
    SuiteReport report = start("stability", seed);
    Sampler s(seed);

    struct Case {
        Rational a, b, c;
        std::string id;
    };
    std::vector<Case> grid = {{1, 1, Rational(1, 2), "anchor-stable"}, {1, 1, 2, "anchor-unstable"}, {1, 1, 1, "anchor-critical"}};
    while (grid.size() < cases + 3) {
        Case c{s.positive(), s.positive(), s.positive(), "random/" + std::to_string(grid.size() - 3)};
        const Rational kappa = stability_number(c.a, c.b, c.c);
        if (abs(kappa) > Rational(1, 20)) grid.push_back(std::move(c));
    }

    std::size_t stable = 0;
    std::size_t unstable = 0;
    std::size_t critical = 0;
    double worst_residual = 0.0;
    const std::vector<double> lambdas = modal::eigenvalues(length, modes);
    for (const auto& c : grid) {
        ++report.cases;
        const Rational kappa = stability_number(c.a, c.b, c.c);
        const EvolutionEquation eq = mgt_equation(c.a, c.b, c.c);
        Json payload = {{"a", to_string(c.a)}, {"b", to_string(c.b)}, {"c", to_string(c.c)}, {"kappa", to_string(kappa)}};
        if (sgn(kappa) == 0) {
            ++critical;
            continue;  // boundary: no strict dichotomy
        }
        (sgn(kappa) > 0 ? stable : unstable)++;

        const SpectralAbscissa sa = spectral_abscissa_detail(eq, length, modes);
        worst_residual = std::max(worst_residual, sa.max_residual);
        payload["abscissa"] = sa.value;
        payload["mode"] = sa.mode;
        if (sa.max_residual > 1e-10) fail(report, c.id, "root residual above 1e-10", payload);
        if ((sa.value < 0.0) != (sgn(kappa) > 0)) {
            fail(report, c.id, "sign of the spectral abscissa disagrees with -kappa", payload);
            continue;
        }

        // Routh-Hurwitz on the cubic s^3 + a s^2 + b lambda s + c lambda, mode by mode.
        const double a = to_double(c.a);
        const double b = to_double(c.b);
        const double cc = to_double(c.c);
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            const bool hurwitz = a > 0 && cc * lambdas[k] > 0 && a * b * lambdas[k] > cc * lambdas[k];
            const RootSet roots = characteristic_roots(eq, lambdas[k]);
            double max_re = -INFINITY;
            for (const auto& r : roots.roots) max_re = std::max(max_re, r.real());
            if (hurwitz != (max_re < 0.0) || hurwitz != (sgn(kappa) > 0)) {
                Json q = payload;
                q["lambda"] = lambdas[k];
                q["max_re"] = max_re;
                fail(report, c.id, "Routh-Hurwitz and computed roots disagree", q);
                break;
            }
        }

        // Trajectory of the dominant mode over a horizon of 25 e-folds.
        const double horizon = std::min(25.0 / std::abs(sa.value), 1e6);
        const modal::ModalProblem mode =
            modal::reduce(eq, lambdas[sa.mode - 1], modal::HistorySpec::null(), std::vector<double>{1.0, 0.5, -0.25});
        modal::StepControl control;
        control.dt = horizon / 2000.0;
        const modal::ModeTrajectory traj = modal::integrate(mode, horizon, control);
        const double first = traj.states.front().norm();
        const double last = traj.states.back().norm();
        const bool grew = traj.diverged_at.has_value() || last > first;
        if (grew != (sgn(kappa) < 0)) {
            Json q = payload;
            q["horizon"] = horizon;
            q["initial_norm"] = first;
            q["final_norm"] = last;
            fail(report, c.id, "dominant mode trajectory does not follow the predicted decay or growth", q);
        }
    }
    report.details = {{"stable", stable}, {"unstable", unstable}, {"critical", critical}, {"max_root_residual", worst_residual}};
    report.wall_ms = timer.ms();
    return report;
}

namespace {

struct DualRun {
    double discrepancy = 0.0;
    std::size_t memory_order = 0;
    std::size_t local_order = 0;
    std::string problem;
};

// Memory equation through auxiliaries vs the relaxed local equation with
// compatible initial data, both by matrix-exponential stepping.
DualRun dual_simulation(const HeatLaw& memory_law, const std::vector<modal::HistorySpec>& history,
                        const std::vector<std::vector<double>>& initial, std::size_t modes, double final_time) {
    const EvolutionEquation mem = to_evolution(memory_law);
    const EvolutionEquation loc = to_evolution(relax_exponential(memory_law));
    DualRun out;
    if (mem.variable != loc.variable) {
        out.problem = "memory and local equations are written in different variables";
        return out;
    }
    const std::vector<double> lambdas = modal::eigenvalues(1.0, modes);
    modal::SimulationSetup setup;
    setup.modes = modes;
    setup.final_time = final_time;
    setup.control.dt = 1e-2;
    setup.initial = initial;
    setup.history = history;
    const modal::Trajectory a = modal::simulate(mem, setup);

    modal::SimulationSetup local = setup;
    local.history.clear();
    local.initial.clear();
    for (std::size_t k = 0; k < modes; ++k) {
        local.initial.push_back(modal::compatible_initial_data(mem, lambdas[k], history[k], initial[k]));
    }
    const modal::Trajectory b = modal::simulate(loc, local);
    out.memory_order = modal::reduce(mem, lambdas[0], history[0], {}).time_order;
    out.local_order = modal::reduce(loc, lambdas[0], modal::HistorySpec::null(), {}).time_order;
    if (out.local_order != out.memory_order + 1) {
        out.problem = "relaxed equation is not one time order higher";
        return out;
    }
    if (a.diverged_at || b.diverged_at || a.times.size() != b.times.size()) {
        out.problem = "integration diverged";
        return out;
    }
    out.discrepancy = relative_l2(a.coefficients(a.times.size() - 1), b.coefficients(b.times.size() - 1), 1.0);
    return out;
}

}  // namespace

SuiteReport verify_equivalence_numeric(const std::vector<std::size_t>& orders, double tolerance, std::uint64_t seed,
                                       std::size_t modes) {
    const Timer timer;
    SuiteReport report = start("equivalence", seed);
    Sampler s(seed);
    double worst = 0.0;
    for (std::size_t n : orders) {
        for (const Rational& omega : {Rational(0), Rational(1, 2)}) {
            for (const Rational& kappa_next : {Rational(0), Rational(1, 2)}) {
                for (int tail = 0; tail <= 1; ++tail) {
                    ParameterSequence base;
                    for (std::size_t i = 0; i < n; ++i) {
                        base.epsilon.push_back(s.percent(10, 100));
                        base.omega.push_back(s.percent(0, 50));
                    }
                    for (std::size_t i = 0; i <= n; ++i) base.kappa.push_back(s.percent(50, 200));
                    const Rational eps = s.percent(10, 100);
                    const HeatLaw memory_law =
                        attach_memory(law_of_order(base), omega, Kernel::exponential(eps), kappa_next);

                    const std::size_t d = modal::reduce(to_evolution(memory_law), 1.0, {}, {}).time_order;
                    std::vector<std::vector<double>> initial;
                    std::vector<modal::HistorySpec> history;
                    for (std::size_t k = 1; k <= modes; ++k) {
                        std::vector<double> v;
                        for (std::size_t j = 0; j < d; ++j) v.push_back(s.uniform(-1.0, 1.0) / static_cast<double>(k * k));
                        initial.push_back(std::move(v));
                        history.push_back(tail ? modal::HistorySpec::constant(s.uniform(-1.0, 1.0) / static_cast<double>(k))
                                               : modal::HistorySpec::null());
                    }

                    const std::string id = "n=" + std::to_string(n) + "/omega=" + to_string(omega) + "/kappa_next=" +
                                           to_string(kappa_next) + (tail ? "/constant-history" : "/null-history");
                    ++report.cases;
                    ParameterSequence next = base;
                    next.epsilon.push_back(eps);
                    next.omega.push_back(omega);
                    next.kappa.push_back(kappa_next);
                    Json payload = {{"params", params_json(next)}};
                    try {
                        const DualRun run = dual_simulation(memory_law, history, initial, modes, 1.0);
                        payload["discrepancy"] = run.discrepancy;
                        payload["memory_order"] = run.memory_order;
                        payload["local_order"] = run.local_order;
                        if (!run.problem.empty()) {
                            fail(report, id, run.problem, payload);
                        } else if (!(run.discrepancy <= tolerance)) {
                            fail(report, id, "relative L2 discrepancy at T above tolerance", payload);
                        }
                        worst = std::max(worst, run.discrepancy);
                    } catch (const std::exception& e) {
                        fail(report, id, std::string("unexpected error: ") + e.what(), payload);
                    }
                }
            }
        }
    }
    report.details = {{"max_discrepancy", worst}, {"tolerance", tolerance}, {"modes", modes}};
    report.wall_ms = timer.ms();
    return report;
}

SuiteReport verify_dirac_limit(const std::vector<std::size_t>& orders, std::uint64_t seed) {
    const Timer timer;
    SuiteReport report = start("dirac-limit", seed);
    Sampler s(seed);
    constexpr std::size_t modes = 8;
    const std::vector<double> lambdas = modal::eigenvalues(1.0, modes);
    Json ratios = Json::object();
    for (std::size_t n : orders) {
        ParameterSequence base;
        for (std::size_t i = 0; i < n; ++i) {
            base.epsilon.push_back(s.percent(10, 50));
            base.omega.push_back(s.percent(0, 50));
        }
        for (std::size_t i = 0; i <= n; ++i) base.kappa.push_back(s.percent(25, 75));
        const Rational omega_next = s.percent(0, 50);

        auto next_params = [&](const Rational& eps) {
            ParameterSequence p = base;
            p.epsilon.push_back(eps);
            p.omega.push_back(omega_next);
            p.kappa.push_back(0);
            return p;
        };
        // Limit equation: the same law with epsilon_{n+1} = 0.
        const EvolutionEquation limit = to_evolution(build_law(next_params(0)));
        const std::size_t d = modal::reduce(limit, lambdas[0], {}, {}).time_order;
        std::vector<std::vector<double>> initial;
        for (std::size_t k = 1; k <= modes; ++k) {
            std::vector<double> v;
            for (std::size_t j = 0; j < d; ++j) v.push_back(s.uniform(-1.0, 1.0) / static_cast<double>(k * k));
            initial.push_back(std::move(v));
        }
        modal::SimulationSetup setup;
        setup.modes = modes;
        setup.final_time = 1.0;
        setup.control.dt = 1e-2;
        setup.initial = initial;
        const modal::Trajectory reference = modal::simulate(limit, setup);
        const std::vector<double> ref = reference.coefficients(reference.times.size() - 1);

        // Well-prepared data: the extra top derivative is read off the limit equation.
        modal::SimulationSetup perturbed = setup;
        perturbed.initial.clear();
        for (std::size_t k = 0; k < modes; ++k) {
            perturbed.initial.push_back(modal::compatible_initial_data(limit, lambdas[k], {}, initial[k]));
        }

        std::vector<double> errors;
        std::vector<double> eps_values;
        for (Rational eps(1, 100); eps >= Rational(1, 10000); eps /= 2) {
            const EvolutionEquation eq = to_evolution(build_law(next_params(eps)));
            const modal::Trajectory traj = modal::simulate(eq, perturbed);
            errors.push_back(relative_l2(ref, traj.coefficients(traj.times.size() - 1), 1.0));
            eps_values.push_back(to_double(eps));
        }
        Json list = Json::array();
        for (std::size_t i = 1; i < errors.size(); ++i) {
            ++report.cases;
            const double ratio = errors[i] / errors[i - 1];
            list.push_back(ratio);
            if (!(ratio >= 0.4 && ratio <= 0.6)) {
                fail(report, "n=" + std::to_string(n) + "/eps=" + format_double(eps_values[i]),
                     "error ratio under halving of epsilon outside [0.4, 0.6]",
                     {{"params", params_json(next_params(Rational(0)))}, {"error", errors[i]}, {"previous_error", errors[i - 1]}, {"ratio", ratio}});
            }
        }
        ratios["n=" + std::to_string(n)] = list;
    }
    report.details = {{"ratios", ratios}};
    report.wall_ms = timer.ms();
    return report;
}

SuiteReport verify_solver_anchors(std::uint64_t seed) {
    const Timer timer;
    SuiteReport report = start("solver", seed);
    Sampler s(seed);

    // Heat modes against exp(-kappa lambda t), for both integrators.
    {
        const Rational kappa = s.percent(50, 200);
        const EvolutionEquation heat = to_evolution(fourier_law(kappa));
        constexpr std::size_t modes = 8;
        const std::vector<double> lambdas = modal::eigenvalues(1.0, modes);
        for (auto method : {modal::Method::MatrixExponential, modal::Method::RungeKutta4}) {
            modal::SimulationSetup setup;
            setup.modes = modes;
            setup.final_time = 1.0;
            setup.control.dt = 1e-2;
            setup.control.method = method;
            for (std::size_t k = 0; k < modes; ++k) setup.initial.push_back({1.0});
            const modal::Trajectory traj = modal::simulate(heat, setup);
            double worst = 0.0;
            for (std::size_t i = 0; i < traj.times.size(); ++i) {
                for (std::size_t k = 0; k < modes; ++k) {
                    const double exact = std::exp(-to_double(kappa) * lambdas[k] * traj.times[i]);
                    worst = std::max(worst, std::abs(traj.states[i][k](0) - exact));
                }
            }
            ++report.cases;
            const std::string id = method == modal::Method::MatrixExponential ? "heat/expm" : "heat/rk4";
            report.details[id] = worst;
            if (!(worst <= 1e-8)) fail(report, id, "heat mode deviates from exp(-kappa lambda t) by more than 1e-8", {{"max_error", worst}});
        }
    }

    // Auxiliary-variable memory against the quadrature oracle under dt halving.
    struct OracleCase {
        std::string id;
        HeatLaw law;
        modal::HistorySpec history;
    };
    const Rational eps = s.percent(20, 50);
    const Rational kappa0 = s.percent(50, 100);
    const std::vector<OracleCase> oracle_cases = {
        {"gurtin-pipkin", attach_memory(fourier_law(kappa0), 0, Kernel::exponential(eps), 0), modal::HistorySpec::null()},
        {"coleman-gurtin", attach_memory(fourier_law(kappa0), Rational(1, 2), Kernel::exponential(eps), 0),
         modal::HistorySpec::constant(0.5)},
        {"prony", attach_memory(fourier_law(kappa0), 0, Kernel::prony({{Rational(1, 3), eps}, {Rational(2, 3), 2 * eps}}), 0),
         modal::HistorySpec::from_function([](double t) { return std::cos(t); })},
        {"type-iii-memory", attach_memory(fourier_law(kappa0), Rational(1, 4), Kernel::exponential(eps), Rational(1, 2)),
         modal::HistorySpec::null()},
    };
    const double lambda = modal::eigenvalues(1.0, 1)[0];
    for (const auto& oc : oracle_cases) {
        ++report.cases;
        const EvolutionEquation eq = to_evolution(oc.law);
        const std::size_t d = modal::reduce(eq, lambda, oc.history, {}).time_order;
        std::vector<double> init(d, 0.0);
        init[0] = 1.0;
        const modal::ModalProblem problem = modal::reduce(eq, lambda, oc.history, init);
        modal::StepControl control;
        control.dt = 1e-2;
        const double exact = modal::integrate(problem, 1.0, control).states.back()(0);

        std::vector<double> values;
        for (double dt : {0.02, 0.01, 0.005}) {
            values.push_back(modal::integrate_quadrature_oracle(eq, lambda, oc.history, init, 1.0, dt).states.back()(0));
        }
        const double d1 = std::abs(values[0] - values[1]);
        const double d2 = std::abs(values[1] - values[2]);
        const double order = std::log2(d1 / d2);
        const double error = std::abs(values[2] - exact);
        // Richardson: the finest error is about d2 / 3 for a second-order method.
        const Json payload = {{"aux_ode", exact}, {"oracle", values}, {"observed_order", order}, {"error", error}};
        report.details[oc.id] = payload;
        if (!(order > 1.8 && order < 2.2)) fail(report, oc.id, "oracle is not second order under dt halving", payload);
        if (!(error <= d2)) fail(report, oc.id, "auxiliary-ODE solution outside the oracle's dt^2 envelope", payload);
    }

    // Memory integral at t = 0.
    {
        ++report.cases;
        const HeatLaw gp = attach_memory(fourier_law(1), 0, Kernel::exponential(eps), 0);
        const EvolutionEquation eq = to_evolution(gp);
        const std::vector<double> init{1.0};
        const auto null_traj = modal::integrate_quadrature_oracle(eq, lambda, modal::HistorySpec::null(), init, 0.1, 0.01);
        const auto unit_traj = modal::integrate_quadrature_oracle(eq, lambda, modal::HistorySpec::constant(1.0), init, 0.1, 0.01);
        const double m0 = modal::oracle_memory_integral(eq, modal::HistorySpec::null(), null_traj, 0.01).front();
        const double m1 = modal::oracle_memory_integral(eq, modal::HistorySpec::constant(1.0), unit_traj, 0.01).front();
        if (m0 != 0.0 || std::abs(m1 - 1.0) > 1e-14) {
            fail(report, "memory-at-zero", "memory integral at t = 0 is not 0 (null) and 1 (unit tail)", {{"null", m0}, {"unit", m1}});
        }
    }
    report.wall_ms = timer.ms();
    return report;
}

SuiteReport verify_catalog() {
    const Timer timer;
    SuiteReport report = start("catalog", 0);
    std::size_t matched = 0;
    for (const auto& preset : preset_catalog()) {
        ++report.cases;
        try {
            const PresetInstance inst = instantiate(preset);
            const Classification c = classify(to_evolution(inst.law));
            if (c.item == preset.item) {
                ++matched;
            } else {
                fail(report, preset.name, "classified as " + c.label + ", expected item " + roman(preset.item),
                     {{"equation", render(to_evolution(inst.law))}});
            }
        } catch (const std::exception& e) {
            fail(report, preset.name, std::string("unexpected error: ") + e.what());
        }
    }
    report.details = {{"matched", matched}, {"presets", preset_catalog().size()}};
    report.wall_ms = timer.ms();
    return report;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"recurrence", "induction", "beta", "stability",
                                                   "equivalence", "dirac-limit", "solver", "catalog"};
    return names;
}

std::vector<SuiteReport> run_suite(std::string_view name, std::uint64_t seed) {
    if (name == "all") {
        std::vector<SuiteReport> out;
        for (const auto& n : suite_names()) out.push_back(run_suite(n, seed).front());
        return out;
    }
    if (name == "recurrence") return {verify_recurrence_vs_explicit(8, 100, seed)};
    if (name == "induction") return {verify_induction(6, 50, seed)};
    if (name == "beta") return {verify_beta_properties(6, seed)};
    if (name == "stability") return {verify_stability_dichotomy(200, seed)};
    if (name == "equivalence") return {verify_equivalence_numeric({0, 1, 2}, 1e-6, seed)};
    if (name == "dirac-limit") return {verify_dirac_limit({0, 1}, seed)};
    if (name == "solver") return {verify_solver_anchors(seed)};
    if (name == "catalog") return {verify_catalog()};
    std::string known;
    for (const auto& n : suite_names()) known += " " + n;
    throw ValidationError("verify: unknown suite '" + std::string(name) + "' (known: all" + known + ")");
}

}  // namespace heatlaw::harness
