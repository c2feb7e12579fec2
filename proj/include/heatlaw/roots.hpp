#pragma once

#include "heatlaw/json_io.hpp"
#include "heatlaw/law.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace heatlaw {

/// Modal characteristic polynomial, ascending coefficients. Exponential and
/// Prony memory multiply through by prod_i (1 + tau_i s).
struct CharacteristicPolynomial {
    std::vector<double> coeffs;
    std::size_t nominal_degree = 0;
    bool degree_reduced() const { return coeffs.size() < nominal_degree + 1; }
};

CharacteristicPolynomial characteristic_polynomial(const EvolutionEquation& eq, double lambda);

/// Companion-matrix eigenvalues followed by one Newton step per root.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

/// |P(s)| / sum_j |p_j| |s|^j
double relative_residual(std::span<const double> coeffs, std::complex<double> s);

struct RootSet {
    double lambda = 0.0;
    std::vector<std::complex<double>> roots;
    double max_residual = 0.0;
    std::string note;  // set when the leading coefficient vanished
};

RootSet characteristic_roots(const EvolutionEquation& eq, double lambda);

struct SpectralAbscissa {
    double value = 0.0;
    std::size_t mode = 1;  // first mode attaining the maximum
    double max_residual = 0.0;
};

SpectralAbscissa spectral_abscissa_detail(const EvolutionEquation& eq, double length, std::size_t modes);
double spectral_abscissa(const EvolutionEquation& eq, double length, std::size_t modes);

Json roots_to_json(const RootSet& roots);

}  // namespace heatlaw
