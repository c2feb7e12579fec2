#pragma once

// Coefficient tables of the order-n heat laws
//
//   q + sum_{i=1..n} alpha_n^i d_t^i q = -kappa_n grad u_n - sum_{i=1..2n} beta_n^i grad d_t^i u_n
//
// All arithmetic is exact. Public accessors take 1-based indices; storage is
// 0-based.

#include "heatlaw/rational.hpp"

#include <cstddef>

namespace heatlaw {

/// Model constants for a law of order n: relaxation times epsilon_1..epsilon_n,
/// instantaneous fractions omega_1..omega_n, conductivities kappa_0..kappa_n.
struct ParameterSequence {
    RationalVec epsilon;
    RationalVec omega;
    RationalVec kappa;

    std::size_t order() const { return epsilon.size(); }

    // 1-based for epsilon/omega, 0-based for kappa, as in the model.
    const Rational& eps(std::size_t i) const;
    const Rational& om(std::size_t i) const;
    const Rational& kap(std::size_t i) const;

    /// kappa_n == 0: the sequence stops here and cannot be extended.
    bool terminal() const;

    /// Throws ValidationError naming the violated invariant.
    void validate() const;

    /// Appends (epsilon_{n+1}, omega_{n+1}, kappa_{n+1}). Refuses terminal sequences.
    ParameterSequence extended(const Rational& epsilon_next, const Rational& omega_next,
                               const Rational& kappa_next) const;

    bool operator==(const ParameterSequence&) const = default;
};

struct CoefficientTable {
    std::size_t order = 0;
    RationalVec alpha;  // alpha_n^1..alpha_n^n
    RationalVec beta;   // beta_n^1..beta_n^{2n}

    const Rational& alpha_at(std::size_t i) const;
    const Rational& beta_at(std::size_t i) const;

    bool operator==(const CoefficientTable&) const = default;
};

/// Recurrence for alpha_n^i, starting from alpha_1^1 = epsilon_1.
RationalVec build_alpha(const RationalVec& epsilon);

/// (1/i!) sum over distinct index tuples of epsilon_{k1}...epsilon_{ki}, that is,
/// the i-th elementary symmetric polynomial of epsilon. i is 1-based.
Rational alpha_explicit(const RationalVec& epsilon, std::size_t i);

/// Recurrence for beta_n^i, starting from
/// beta_1^1 = epsilon_1 kappa_1 + kappa_0, beta_1^2 = epsilon_1 omega_1 kappa_0.
RationalVec build_beta(const ParameterSequence& params);

CoefficientTable build_table(const ParameterSequence& params);

/// Checks the implication alpha_n^{n-k} = 0  =>  beta_n^{2n} = ... = beta_n^{2n-k} = 0
/// on the exact tables. k ranges over 0..n-1.
bool beta_vanishing_check(const ParameterSequence& params, std::size_t k);

}  // namespace heatlaw
