#include "heatlaw/roots.hpp"

#include "heatlaw/errors.hpp"
#include "heatlaw/modal.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace heatlaw {

namespace {

std::complex<double> horner(std::span<const double> c, std::complex<double> s, std::complex<double>* derivative) {
    std::complex<double> p = 0.0;
    std::complex<double> dp = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) {
        dp = dp * s + p;
        p = p * s + c[j];
    }
    if (derivative) *derivative = dp;
    return p;
}

}  // namespace

CharacteristicPolynomial characteristic_polynomial(const EvolutionEquation& eq, double lambda) {
    std::vector<double> local(std::max(eq.time_coeffs.size(), eq.laplacian_coeffs.size()), 0.0);
    for (std::size_t j = 0; j < eq.time_coeffs.size(); ++j) local[j] += to_double(eq.time_coeffs[j]);
    for (std::size_t j = 0; j < eq.laplacian_coeffs.size(); ++j) local[j] += lambda * to_double(eq.laplacian_coeffs[j]);

    std::vector<double> total = local;
    std::size_t extra = 0;
    if (eq.memory) {
        const double w = lambda * to_double(eq.memory->weight);
        const std::size_t r = eq.memory->derivative_order;
        if (eq.memory->kernel.kind() == Kernel::Kind::Dirac) {
            if (total.size() <= r) total.resize(r + 1, 0.0);
            total[r] += w;
        } else {
            // prod(1 + tau_i s) local(s) + w s^r sum_i rho_i prod_{l != i}(1 + tau_l s)
            const auto& terms = eq.memory->kernel.terms();
            extra = terms.size();
            auto factor = [&](std::size_t skip) {
                std::vector<double> f{1.0};
                for (std::size_t l = 0; l < terms.size(); ++l) {
                    if (l == skip) continue;
                    const double tau = to_double(terms[l].tau);
                    std::vector<double> next(f.size() + 1, 0.0);
                    for (std::size_t j = 0; j < f.size(); ++j) {
                        next[j] += f[j];
                        next[j + 1] += tau * f[j];
                    }
                    f = std::move(next);
                }
                return f;
            };
            const std::vector<double> all = factor(terms.size());
            total.assign(local.size() + all.size(), 0.0);
            for (std::size_t i = 0; i < local.size(); ++i) {
                for (std::size_t j = 0; j < all.size(); ++j) total[i + j] += local[i] * all[j];
            }
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::vector<double> f = factor(i);
                const double rho = to_double(terms[i].weight);
                if (total.size() < r + f.size()) total.resize(r + f.size(), 0.0);
                for (std::size_t j = 0; j < f.size(); ++j) total[r + j] += w * rho * f[j];
            }
        }
    }

    CharacteristicPolynomial out;
    std::size_t nominal = 0;
    for (std::size_t j = 0; j < eq.time_coeffs.size(); ++j) {
        if (!is_zero(eq.time_coeffs[j])) nominal = j;
    }
    out.nominal_degree = nominal + extra;
    while (!total.empty() && total.back() == 0.0) total.pop_back();
    out.coeffs = std::move(total);
    return out;
}

double relative_residual(std::span<const double> coeffs, std::complex<double> s) {
    const std::complex<double> p = horner(coeffs, s, nullptr);
    double scale = 0.0;
    double power = 1.0;
    for (double c : coeffs) {
        scale += std::abs(c) * power;
        power *= std::abs(s);
    }
    return scale == 0.0 ? 0.0 : std::abs(p) / scale;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
    std::size_t size = coeffs.size();
    while (size > 0 && coeffs[size - 1] == 0.0) --size;
    if (size <= 1) return {};
    const std::span<const double> c = coeffs.first(size);
    const auto degree = static_cast<Eigen::Index>(size - 1);
    const double lead = c[size - 1];

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -c[static_cast<std::size_t>(i)] / lead;
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("polynomial_roots: eigenvalue iteration failed");

    std::vector<std::complex<double>> roots;
    for (Eigen::Index i = 0; i < degree; ++i) {
        std::complex<double> s = solver.eigenvalues()(i);
        std::complex<double> dp;
        const std::complex<double> p = horner(c, s, &dp);
        if (std::abs(dp) > 0.0) {
            const std::complex<double> polished = s - p / dp;
            if (relative_residual(c, polished) < relative_residual(c, s)) s = polished;
        }
        roots.push_back(s);
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    return roots;
}

RootSet characteristic_roots(const EvolutionEquation& eq, double lambda) {
    if (!(lambda > 0.0)) throw ValidationError("characteristic_roots: eigenvalue lambda must be > 0");
    const CharacteristicPolynomial poly = characteristic_polynomial(eq, lambda);
    RootSet out;
    out.lambda = lambda;
    if (poly.degree_reduced()) {
        out.note = "leading coefficient vanished: degree reduced from " + std::to_string(poly.nominal_degree) + " to " +
                   std::to_string(poly.coeffs.empty() ? 0 : poly.coeffs.size() - 1);
    }
    out.roots = polynomial_roots(poly.coeffs);
    for (const auto& s : out.roots) out.max_residual = std::max(out.max_residual, relative_residual(poly.coeffs, s));
    return out;
}

SpectralAbscissa spectral_abscissa_detail(const EvolutionEquation& eq, double length, std::size_t modes) {
    const std::vector<double> lambdas = modal::eigenvalues(length, modes);
    SpectralAbscissa out;
    out.value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const RootSet roots = characteristic_roots(eq, lambdas[k]);
        out.max_residual = std::max(out.max_residual, roots.max_residual);
        for (const auto& s : roots.roots) {
            if (s.real() > out.value) {
                out.value = s.real();
                out.mode = k + 1;
            }
        }
    }
    return out;
}

double spectral_abscissa(const EvolutionEquation& eq, double length, std::size_t modes) {
    return spectral_abscissa_detail(eq, length, modes).value;
}

Json roots_to_json(const RootSet& roots) {
    Json j;
    j["lambda"] = roots.lambda;
    j["roots"] = Json::array();
    for (const auto& s : roots.roots) j["roots"].push_back({{"re", s.real()}, {"im", s.imag()}});
    if (!roots.note.empty()) j["note"] = roots.note;
    return j;
}

}  // namespace heatlaw
