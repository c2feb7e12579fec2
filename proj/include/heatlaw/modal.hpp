#pragma once

// Modal reduction of an EvolutionEquation on (0, L) with homogeneous Dirichlet
// conditions. With u = sum_k y_k(t) sin(k pi x / L) and -Lap -> lambda_k, each
// mode obeys a scalar linear ODE; exponential memory terms become auxiliary
// variables z_i with z_i' = (y^(r) - z_i) / tau_i.

#include "heatlaw/law.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heatlaw::modal {

/// Past values of the convolved quantity of one mode, h(s) = y^(r)(-s), s >= 0.
struct HistorySpec {
    enum class Kind { Null, ConstantTail, Function };

    Kind kind = Kind::Null;
    double value = 0.0;
    std::function<double(double)> function;

    static HistorySpec null() { return {}; }
    static HistorySpec constant(double v) { return {Kind::ConstantTail, v, {}}; }
    static HistorySpec from_function(std::function<double(double)> h) { return {Kind::Function, 0.0, std::move(h)}; }
};

/// int_0^inf (1/tau) exp(-s/tau) h(s) ds. Function histories use adaptive
/// Simpson on [0, truncation] plus the tail h(S) exp(-S/tau).
double history_integral(const HistorySpec& history, double tau, double truncation);

struct ModalProblem {
    double lambda = 0.0;
    Eigen::MatrixXd matrix;         // x' = matrix * x
    Eigen::VectorXd initial_state;  // [y, y', ..., y^(d-1), z_1, ..., z_m]
    std::size_t time_order = 0;     // d
    std::size_t convolved_order = 0;
    std::vector<double> aux_tau;

    std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
};

std::vector<double> eigenvalues(double length, std::size_t modes);

/// `initial` lists y(0), y'(0), ...; missing entries are zero, extra entries
/// are an error.
ModalProblem reduce(const EvolutionEquation& eq, double lambda, const HistorySpec& history,
                    std::span<const double> initial);

enum class Method { MatrixExponential, RungeKutta4 };

struct StepControl {
    double dt = 1e-2;
    Method method = Method::MatrixExponential;
    double rk4_tolerance = 1e-12;  // local error bound per RK4 substep, relative to |x|
    double divergence_threshold = 1e12;
};

struct ModeTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    std::optional<double> diverged_at;
};

ModeTrajectory integrate(const ModalProblem& problem, double final_time, const StepControl& control);

/// Reference solution that never introduces auxiliary variables: trapezoidal
/// quadrature of the convolution over the computed past, the analytic tail for
/// t <= 0, and Crank-Nicolson in time. States hold [y, ..., y^(d-1)].
ModeTrajectory integrate_quadrature_oracle(const EvolutionEquation& eq, double lambda, const HistorySpec& history,
                                           std::span<const double> initial, double final_time, double dt);

/// Memory integral int_0^inf g(s) y^(r)(t-s) ds along an oracle trajectory.
std::vector<double> oracle_memory_integral(const EvolutionEquation& eq, const HistorySpec& history,
                                           const ModeTrajectory& trajectory, double dt);

/// Initial data for the relaxed (one order higher) local equation: the given
/// values plus y^(d)(0) read off the memory equation at t = 0.
std::vector<double> compatible_initial_data(const EvolutionEquation& memory_eq, double lambda,
                                            const HistorySpec& history, std::span<const double> initial);

struct Trajectory {
    double length = 1.0;
    std::vector<double> times;
    std::vector<std::vector<Eigen::VectorXd>> states;  // [time][mode]
    std::vector<double> l2_norm;
    std::vector<double> l2_norm_dt;
    std::optional<double> diverged_at;

    std::size_t modes() const { return states.empty() ? 0 : states.front().size(); }
    std::vector<double> coefficients(std::size_t time_index) const;
};

struct SimulationSetup {
    double length = 1.0;
    std::size_t modes = 1;
    double final_time = 1.0;
    StepControl control;
    std::vector<std::vector<double>> initial;  // per mode
    std::vector<HistorySpec> history;          // per mode; empty means Null everywhere
    unsigned threads = 0;                      // 0: hardware concurrency
};

/// Integrates every mode independently (concurrently when threads > 1) and
/// merges in mode order. A diverging mode truncates the whole trajectory.
Trajectory simulate(const EvolutionEquation& eq, const SimulationSetup& setup);

/// sqrt(L/2 sum y_k^2)
double l2_norm(std::span<const double> coefficients, double length);

/// u(x_j, t_i) = sum_k y_k(t_i) sin(k pi x_j / L)
std::vector<std::vector<double>> reconstruct(const Trajectory& trajectory, std::span<const double> x);

/// (2/L) int_0^L u sin(k pi x/L) dx by the trapezoidal rule on uniform samples
/// that include both end points.
std::vector<double> project_profile(std::span<const double> samples, double length, std::size_t modes);

std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace heatlaw::modal
