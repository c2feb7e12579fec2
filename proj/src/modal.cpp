#include "heatlaw/modal.hpp"

#include "heatlaw/errors.hpp"
#include "heatlaw/json_io.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace heatlaw::modal {

namespace {

// Double-precision view of one modal equation:
//   sum_j p_j y^(j) + sum_i c_i z_i = 0,  p_j = a_j + lambda b_j,  c_i = lambda w rho_i
struct ModalCoefficients {
    std::vector<double> p;
    std::size_t order = 0;
    std::size_t convolved_order = 0;
    std::vector<double> aux_weight;  // c_i
    std::vector<double> aux_tau;
};

ModalCoefficients modal_coefficients(const EvolutionEquation& eq, double lambda) {
    if (!(lambda > 0.0)) throw ValidationError("ModalProblem: eigenvalue lambda must be > 0");
    ModalCoefficients m;
    const std::size_t size = std::max(eq.time_coeffs.size(), eq.laplacian_coeffs.size());
    m.p.assign(size + 1, 0.0);
    for (std::size_t j = 0; j < eq.time_coeffs.size(); ++j) m.p[j] += to_double(eq.time_coeffs[j]);
    for (std::size_t j = 0; j < eq.laplacian_coeffs.size(); ++j) m.p[j] += lambda * to_double(eq.laplacian_coeffs[j]);
    if (eq.memory) {
        const double w = to_double(eq.memory->weight);
        m.convolved_order = eq.memory->derivative_order;
        if (eq.memory->kernel.kind() == Kernel::Kind::Dirac) {
            if (m.p.size() <= m.convolved_order) m.p.resize(m.convolved_order + 1, 0.0);
            m.p[m.convolved_order] += lambda * w;
        } else {
            for (const auto& t : eq.memory->kernel.terms()) {
                m.aux_weight.push_back(lambda * w * to_double(t.weight));
                m.aux_tau.push_back(to_double(t.tau));
            }
        }
    }
    while (!m.p.empty() && m.p.back() == 0.0) m.p.pop_back();
    if (m.p.size() < 2) throw ValidationError("ModalProblem: equation has no time derivative");
    m.order = m.p.size() - 1;
    if (!m.aux_tau.empty() && m.convolved_order >= m.order) {
        throw ValidationError("ModalProblem: convolved derivative order must be below the time order");
    }
    return m;
}

double max_tau(const std::vector<double>& taus) {
    return taus.empty() ? 0.0 : *std::max_element(taus.begin(), taus.end());
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Largest r with r^5/120 * e^r <= tol: the RK4 one-step remainder bound for
// |h A| <= r.
double rk4_step_radius(double tol) {
    double lo = 0.0;
    double hi = 4.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::pow(mid, 5) / 120.0 * std::exp(mid) <= tol) lo = mid;
        else hi = mid;
    }
    return lo;
}

std::size_t step_count(double final_time, double dt) {
    if (!(final_time > 0.0)) throw ValidationError("integrate: final time T must be > 0");
    if (!(dt > 0.0)) throw ValidationError("integrate: step dt must be > 0");
    return static_cast<std::size_t>(std::max(1.0, std::ceil(final_time / dt - 1e-9)));
}

bool diverged(const Eigen::VectorXd& x, double threshold) { return !x.allFinite() || x.norm() > threshold; }

}  // namespace

double history_integral(const HistorySpec& history, double tau, double truncation) {
    switch (history.kind) {
        case HistorySpec::Kind::Null: return 0.0;
        case HistorySpec::Kind::ConstantTail: return history.value;
        case HistorySpec::Kind::Function: break;
    }
    if (!history.function) throw ValidationError("HistorySpec: Function history without a callable");
    const double upper = std::max(truncation, tau);
    const std::function<double(double)> f = [&](double s) { return std::exp(-s / tau) / tau * history.function(s); };
    const double fa = f(0.0);
    const double fm = f(0.5 * upper);
    const double fb = f(upper);
    const double body = adaptive_simpson(f, 0.0, upper, fa, fm, fb, simpson(0.0, upper, fa, fm, fb), 1e-10, 50);
    return body + history.function(upper) * std::exp(-upper / tau);
}

std::vector<double> eigenvalues(double length, std::size_t modes) {
    if (!(length > 0.0)) throw ValidationError("eigenvalues: length L must be > 0");
    std::vector<double> out;
    out.reserve(modes);
    for (std::size_t k = 1; k <= modes; ++k) {
        const double w = static_cast<double>(k) * std::numbers::pi / length;
        out.push_back(w * w);
    }
    return out;
}

ModalProblem reduce(const EvolutionEquation& eq, double lambda, const HistorySpec& history,
                    std::span<const double> initial) {
    const ModalCoefficients m = modal_coefficients(eq, lambda);
    const std::size_t d = m.order;
    const std::size_t aux = m.aux_tau.size();
    if (initial.size() > d) {
        throw ValidationError("ModalProblem: " + std::to_string(initial.size()) + " initial values given but the time order is " +
                              std::to_string(d));
    }

    ModalProblem problem;
    problem.lambda = lambda;
    problem.time_order = d;
    problem.convolved_order = m.convolved_order;
    problem.aux_tau = m.aux_tau;
    const auto n = static_cast<Eigen::Index>(d + aux);
    problem.matrix = Eigen::MatrixXd::Zero(n, n);
    problem.initial_state = Eigen::VectorXd::Zero(n);

    const double lead = m.p[d];
    const auto top = static_cast<Eigen::Index>(d - 1);
    for (Eigen::Index j = 0; j < top; ++j) problem.matrix(j, j + 1) = 1.0;
    for (std::size_t j = 0; j < d; ++j) problem.matrix(top, static_cast<Eigen::Index>(j)) = -m.p[j] / lead;
    const double truncation = 40.0 * max_tau(m.aux_tau);
    for (std::size_t i = 0; i < aux; ++i) {
        const auto row = static_cast<Eigen::Index>(d + i);
        problem.matrix(top, row) = -m.aux_weight[i] / lead;
        problem.matrix(row, static_cast<Eigen::Index>(m.convolved_order)) = 1.0 / m.aux_tau[i];
        problem.matrix(row, row) = -1.0 / m.aux_tau[i];
        problem.initial_state(row) = history_integral(history, m.aux_tau[i], truncation);
    }
    for (std::size_t j = 0; j < initial.size(); ++j) problem.initial_state(static_cast<Eigen::Index>(j)) = initial[j];
    return problem;
}

ModeTrajectory integrate(const ModalProblem& problem, double final_time, const StepControl& control) {
    const std::size_t steps = step_count(final_time, control.dt);
    const double h = final_time / static_cast<double>(steps);

    ModeTrajectory out;
    out.times.reserve(steps + 1);
    out.states.reserve(steps + 1);
    out.times.push_back(0.0);
    out.states.push_back(problem.initial_state);

    Eigen::MatrixXd propagator;
    std::size_t substeps = 1;
    if (control.method == Method::MatrixExponential) {
        propagator = (problem.matrix * h).exp();
    } else {
        const double norm = problem.matrix.lpNorm<Eigen::Infinity>();
        const double radius = rk4_step_radius(control.rk4_tolerance);
        substeps = static_cast<std::size_t>(std::max(1.0, std::ceil(h * norm / radius)));
    }
    const double sub = h / static_cast<double>(substeps);
    const Eigen::MatrixXd& a = problem.matrix;

    Eigen::VectorXd x = problem.initial_state;
    for (std::size_t step = 1; step <= steps; ++step) {
        if (control.method == Method::MatrixExponential) {
            x = propagator * x;
        } else {
            for (std::size_t s = 0; s < substeps; ++s) {
                const Eigen::VectorXd k1 = a * x;
                const Eigen::VectorXd k2 = a * (x + 0.5 * sub * k1);
                const Eigen::VectorXd k3 = a * (x + 0.5 * sub * k2);
                const Eigen::VectorXd k4 = a * (x + sub * k3);
                x += sub / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        const double t = static_cast<double>(step) * h;
        if (diverged(x, control.divergence_threshold)) {
            out.diverged_at = t;
            break;
        }
        out.times.push_back(t);
        out.states.push_back(x);
    }
    return out;
}

namespace {

struct OracleSetup {
    ModalCoefficients m;
    std::vector<double> rho;  // kernel weights
    std::vector<double> tau;
    std::vector<double> z0;   // history integrals per term
    double weight = 0.0;
};

OracleSetup oracle_setup(const EvolutionEquation& eq, double lambda, const HistorySpec& history) {
    OracleSetup s;
    s.m = modal_coefficients(eq, lambda);
    if (eq.memory && eq.memory->kernel.kind() != Kernel::Kind::Dirac) {
        s.weight = to_double(eq.memory->weight);
        for (const auto& t : eq.memory->kernel.terms()) {
            s.rho.push_back(to_double(t.weight));
            s.tau.push_back(to_double(t.tau));
        }
        const double truncation = 40.0 * max_tau(s.tau);
        for (double tau : s.tau) s.z0.push_back(history_integral(history, tau, truncation));
    }
    return s;
}

double kernel_value(const OracleSetup& s, double t) {
    double g = 0.0;
    for (std::size_t i = 0; i < s.tau.size(); ++i) g += s.rho[i] / s.tau[i] * std::exp(-t / s.tau[i]);
    return g;
}

// int_t^inf g(s) h(s - t) ds for the pre-t=0 history.
double history_tail(const OracleSetup& s, double t) {
    double v = 0.0;
    for (std::size_t i = 0; i < s.tau.size(); ++i) v += s.rho[i] * std::exp(-t / s.tau[i]) * s.z0[i];
    return v;
}

}  // namespace

ModeTrajectory integrate_quadrature_oracle(const EvolutionEquation& eq, double lambda, const HistorySpec& history,
                                           std::span<const double> initial, double final_time, double dt) {
    const OracleSetup s = oracle_setup(eq, lambda, history);
    const std::size_t d = s.m.order;
    const std::size_t r = s.m.convolved_order;
    if (initial.size() > d) throw ValidationError("integrate_quadrature_oracle: too many initial values");
    const std::size_t steps = step_count(final_time, dt);
    const double h = final_time / static_cast<double>(steps);
    const auto n = static_cast<Eigen::Index>(d);
    const auto top = n - 1;
    const double lead = s.m.p[d];

    // x' = B x + c M(t),  M(t) = int_0^inf g(s) y^(r)(t-s) ds
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < top; ++j) b(j, j + 1) = 1.0;
    for (std::size_t j = 0; j < d; ++j) b(top, static_cast<Eigen::Index>(j)) = -s.m.p[j] / lead;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    c(top) = -lambda * s.weight / lead;

    std::vector<double> g(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) g[j] = kernel_value(s, static_cast<double>(j) * h);

    // Implicit endpoint weight h g_0 / 2 on y^(r)_{k+1}.
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - 0.5 * h * b;
    system.col(static_cast<Eigen::Index>(r)) -= 0.5 * h * c * (0.5 * h * g[0]);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);

    ModeTrajectory out;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (std::size_t j = 0; j < initial.size(); ++j) x(static_cast<Eigen::Index>(j)) = initial[j];
    out.times.push_back(0.0);
    out.states.push_back(x);
    std::vector<double> yr{x(static_cast<Eigen::Index>(r))};
    double memory = history_tail(s, 0.0);

    for (std::size_t k = 0; k < steps; ++k) {
        // Known part of M_{k+1}: interior nodes, the t=0 end node, and the tail.
        double known = 0.0;
        for (std::size_t j = 1; j <= k; ++j) known += g[j] * yr[k + 1 - j];
        known += 0.5 * g[k + 1] * yr[0];
        known = h * known + history_tail(s, static_cast<double>(k + 1) * h);

        const Eigen::VectorXd rhs = x + 0.5 * h * (b * x + c * memory) + 0.5 * h * c * known;
        x = lu.solve(rhs);
        yr.push_back(x(static_cast<Eigen::Index>(r)));
        memory = 0.5 * h * g[0] * yr.back() + known;

        const double t = static_cast<double>(k + 1) * h;
        if (!x.allFinite() || x.norm() > 1e12) {
            out.diverged_at = t;
            break;
        }
        out.times.push_back(t);
        out.states.push_back(x);
    }
    return out;
}

std::vector<double> oracle_memory_integral(const EvolutionEquation& eq, const HistorySpec& history,
                                           const ModeTrajectory& trajectory, double dt) {
    // lambda only scales p_j here, which the integral does not use.
    const OracleSetup s = oracle_setup(eq, 1.0, history);
    const std::size_t r = s.m.convolved_order;
    const std::size_t count = trajectory.states.size();
    const double h = count > 1 ? trajectory.times[1] - trajectory.times[0] : dt;
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k) {
        double v = 0.0;
        for (std::size_t j = 0; j <= k; ++j) {
            const double node = kernel_value(s, static_cast<double>(j) * h) *
                                trajectory.states[k - j](static_cast<Eigen::Index>(r));
            v += (j == 0 || j == k) ? 0.5 * node : node;
        }
        out.push_back((k == 0 ? 0.0 : h * v) + history_tail(s, trajectory.times[k]));
    }
    return out;
}

std::vector<double> compatible_initial_data(const EvolutionEquation& memory_eq, double lambda,
                                            const HistorySpec& history, std::span<const double> initial) {
    const ModalProblem problem = reduce(memory_eq, lambda, history, initial);
    const std::size_t d = problem.time_order;
    // The last companion row is y^(d) = row . x at t = 0.
    const double top = problem.matrix.row(static_cast<Eigen::Index>(d - 1)).dot(problem.initial_state);
    std::vector<double> out(d + 1, 0.0);
    for (std::size_t j = 0; j < d; ++j) out[j] = problem.initial_state(static_cast<Eigen::Index>(j));
    out[d] = top;
    return out;
}

std::vector<double> Trajectory::coefficients(std::size_t time_index) const {
    std::vector<double> y;
    for (const auto& s : states.at(time_index)) y.push_back(s(0));
    return y;
}

double l2_norm(std::span<const double> coefficients, double length) {
    double sum = 0.0;
    for (double y : coefficients) sum += y * y;
    return std::sqrt(0.5 * length * sum);
}

Trajectory simulate(const EvolutionEquation& eq, const SimulationSetup& setup) {
    if (setup.modes < 1) throw ValidationError("simulate: mode count K must be >= 1");
    if (!setup.history.empty() && setup.history.size() != setup.modes) {
        throw ValidationError("simulate: history must list one entry per mode");
    }
    if (setup.initial.size() > setup.modes) throw ValidationError("simulate: more initial-data rows than modes");
    const std::vector<double> lambdas = eigenvalues(setup.length, setup.modes);

    std::vector<ModalProblem> problems;
    problems.reserve(setup.modes);
    for (std::size_t k = 0; k < setup.modes; ++k) {
        const HistorySpec history = setup.history.empty() ? HistorySpec::null() : setup.history[k];
        const std::vector<double> none;
        const std::vector<double>& init = k < setup.initial.size() ? setup.initial[k] : none;
        problems.push_back(reduce(eq, lambdas[k], history, init));
    }

    std::vector<ModeTrajectory> per_mode(setup.modes);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(setup.threads == 0 ? hw : setup.threads, setup.modes));
    if (threads <= 1) {
        for (std::size_t k = 0; k < setup.modes; ++k) per_mode[k] = integrate(problems[k], setup.final_time, setup.control);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < setup.modes; k = next++) {
                    per_mode[k] = integrate(problems[k], setup.final_time, setup.control);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    Trajectory out;
    out.length = setup.length;
    std::size_t count = per_mode.front().states.size();
    for (const auto& m : per_mode) {
        count = std::min(count, m.states.size());
        if (m.diverged_at && (!out.diverged_at || *m.diverged_at < *out.diverged_at)) out.diverged_at = m.diverged_at;
    }
    for (std::size_t i = 0; i < count; ++i) {
        out.times.push_back(per_mode.front().times[i]);
        std::vector<Eigen::VectorXd> row;
        std::vector<double> y;
        std::vector<double> dy;
        for (std::size_t k = 0; k < setup.modes; ++k) {
            const Eigen::VectorXd& x = per_mode[k].states[i];
            row.push_back(x);
            y.push_back(x(0));
            dy.push_back(problems[k].matrix.row(0).dot(x));
        }
        out.states.push_back(std::move(row));
        out.l2_norm.push_back(l2_norm(y, setup.length));
        out.l2_norm_dt.push_back(l2_norm(dy, setup.length));
    }
    return out;
}

std::vector<std::vector<double>> reconstruct(const Trajectory& trajectory, std::span<const double> x) {
    for (double xi : x) {
        if (xi < 0.0 || xi > trajectory.length) throw ValidationError("reconstruct: x-grid must lie in [0, L]");
    }
    std::vector<std::vector<double>> field;
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        std::vector<double> row(x.size(), 0.0);
        for (std::size_t k = 0; k < trajectory.modes(); ++k) {
            const double y = trajectory.states[i][k](0);
            const double w = static_cast<double>(k + 1) * std::numbers::pi / trajectory.length;
            for (std::size_t j = 0; j < x.size(); ++j) row[j] += y * std::sin(w * x[j]);
        }
        field.push_back(std::move(row));
    }
    return field;
}

std::vector<double> project_profile(std::span<const double> samples, double length, std::size_t modes) {
    if (samples.size() < 3) throw ValidationError("project_profile: need at least 3 samples including both ends");
    const double dx = length / static_cast<double>(samples.size() - 1);
    std::vector<double> out;
    for (std::size_t k = 1; k <= modes; ++k) {
        const double w = static_cast<double>(k) * std::numbers::pi / length;
        double sum = 0.0;
        for (std::size_t j = 0; j < samples.size(); ++j) {
            const double f = samples[j] * std::sin(w * static_cast<double>(j) * dx);
            sum += (j == 0 || j + 1 == samples.size()) ? 0.5 * f : f;
        }
        out.push_back(2.0 / length * sum * dx);
    }
    return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream os;
    os << "t";
    for (std::size_t k = 1; k <= trajectory.modes(); ++k) os << ",mode_" << k;
    os << ",l2_norm,l2_norm_dt\n";
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        os << format_double(trajectory.times[i]);
        for (const auto& s : trajectory.states[i]) os << "," << format_double(s(0));
        os << "," << format_double(trajectory.l2_norm[i]) << "," << format_double(trajectory.l2_norm_dt[i]) << "\n";
    }
    return os.str();
}

}  // namespace heatlaw::modal
