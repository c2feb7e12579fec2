#include "heatlaw/coefficients.hpp"

#include "heatlaw/errors.hpp"

#include <string>
#include <vector>

namespace heatlaw {

namespace {

void check_epsilon(const RationalVec& epsilon, const char* where) {
    if (epsilon.empty()) throw ValidationError(std::string(where) + ": order n must be at least 1");
    for (std::size_t i = 0; i < epsilon.size(); ++i) {
        if (sgn(epsilon[i]) < 0) {
            throw ValidationError(std::string(where) + ": epsilon_" + std::to_string(i + 1) + " = " +
                                  to_string(epsilon[i]) + " must be >= 0");
        }
    }
}

}  // namespace

const Rational& ParameterSequence::eps(std::size_t i) const {
    if (i < 1 || i > epsilon.size()) throw std::out_of_range("ParameterSequence: epsilon index out of range");
    return epsilon[i - 1];
}

const Rational& ParameterSequence::om(std::size_t i) const {
    if (i < 1 || i > omega.size()) throw std::out_of_range("ParameterSequence: omega index out of range");
    return omega[i - 1];
}

const Rational& ParameterSequence::kap(std::size_t i) const {
    if (i >= kappa.size()) throw std::out_of_range("ParameterSequence: kappa index out of range");
    return kappa[i];
}

bool ParameterSequence::terminal() const { return !kappa.empty() && is_zero(kappa.back()); }

void ParameterSequence::validate() const {
    const std::size_t n = epsilon.size();
    if (n < 1) throw ValidationError("ParameterSequence: order n must be at least 1 (|epsilon| = 0)");
    if (omega.size() != n) {
        throw ValidationError("ParameterSequence: |omega| = " + std::to_string(omega.size()) +
                              " must equal |epsilon| = " + std::to_string(n));
    }
    if (kappa.size() != n + 1) {
        throw ValidationError("ParameterSequence: |kappa| = " + std::to_string(kappa.size()) +
                              " must equal n+1 = " + std::to_string(n + 1));
    }
    check_epsilon(epsilon, "ParameterSequence");
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(omega[i]) < 0 || omega[i] >= 1) {
            throw ValidationError("ParameterSequence: omega_" + std::to_string(i + 1) + " = " + to_string(omega[i]) +
                                  " outside [0,1)");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(kappa[i]) <= 0) {
            throw ValidationError("ParameterSequence: kappa_" + std::to_string(i) + " = " + to_string(kappa[i]) +
                                  " must be > 0 (only the last conductivity may vanish)");
        }
    }
    if (sgn(kappa[n]) < 0) {
        throw ValidationError("ParameterSequence: kappa_" + std::to_string(n) + " = " + to_string(kappa[n]) +
                              " must be >= 0");
    }
}

ParameterSequence ParameterSequence::extended(const Rational& epsilon_next, const Rational& omega_next,
                                              const Rational& kappa_next) const {
    validate();
    if (terminal()) {
        throw ValidationError("ParameterSequence: kappa_" + std::to_string(order()) +
                              " = 0 is terminal; order " + std::to_string(order() + 1) + " cannot be built");
    }
    ParameterSequence out = *this;
    out.epsilon.push_back(epsilon_next);
    out.omega.push_back(omega_next);
    out.kappa.push_back(kappa_next);
    out.validate();
    return out;
}

const Rational& CoefficientTable::alpha_at(std::size_t i) const {
    if (i < 1 || i > alpha.size()) throw std::out_of_range("CoefficientTable: alpha index out of range");
    return alpha[i - 1];
}

const Rational& CoefficientTable::beta_at(std::size_t i) const {
    if (i < 1 || i > beta.size()) throw std::out_of_range("CoefficientTable: beta index out of range");
    return beta[i - 1];
}

RationalVec build_alpha(const RationalVec& epsilon) {
    check_epsilon(epsilon, "build_alpha");
    RationalVec alpha{epsilon[0]};
    for (std::size_t n = 2; n <= epsilon.size(); ++n) {
        const Rational& eps_n = epsilon[n - 1];
        RationalVec next(n);
        next[0] = eps_n + alpha[0];
        for (std::size_t i = 2; i <= n - 1; ++i) next[i - 1] = eps_n * alpha[i - 2] + alpha[i - 1];
        next[n - 1] = eps_n * alpha[n - 2];
        alpha = std::move(next);
    }
    return alpha;
}

Rational alpha_explicit(const RationalVec& epsilon, std::size_t i) {
    check_epsilon(epsilon, "alpha_explicit");
    const std::size_t n = epsilon.size();
    if (i < 1 || i > n) {
        throw ValidationError("alpha_explicit: index i = " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    // Ordered tuples of distinct indices come in groups of i! sharing one index
    // set, so the normalized sum runs over increasing tuples k1 < ... < ki.
    Rational sum(0);
    std::vector<std::size_t> idx(i);
    for (std::size_t j = 0; j < i; ++j) idx[j] = j;
    while (true) {
        Rational term(1);
        for (std::size_t j = 0; j < i; ++j) term *= epsilon[idx[j]];
        sum += term;
        std::size_t pos = i;
        while (pos > 0 && idx[pos - 1] == n - i + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < i; ++j) idx[j] = idx[j - 1] + 1;
    }
    return sum;
}

RationalVec build_beta(const ParameterSequence& params) {
    params.validate();
    const std::size_t order = params.order();
    RationalVec beta{params.eps(1) * params.kap(1) + params.kap(0), params.eps(1) * params.om(1) * params.kap(0)};
    for (std::size_t n = 2; n <= order; ++n) {
        const Rational& eps_n = params.eps(n);
        RationalVec next(2 * n);
        // prev holds beta_{n-1}^1..beta_{n-1}^{2n-2} at 0-based slots.
        const RationalVec& prev = beta;
        next[0] = eps_n * params.kap(n) + params.kap(n - 1);
        next[1] = eps_n * params.om(n) * params.kap(n - 1) + prev[0];
        for (std::size_t i = 3; i <= 2 * n - 1; ++i) next[i - 1] = eps_n * prev[i - 3] + prev[i - 2];
        next[2 * n - 1] = eps_n * prev[2 * n - 3];
        beta = std::move(next);
    }
    return beta;
}

CoefficientTable build_table(const ParameterSequence& params) {
    params.validate();
    return CoefficientTable{params.order(), build_alpha(params.epsilon), build_beta(params)};
}

bool beta_vanishing_check(const ParameterSequence& params, std::size_t k) {
    const std::size_t n = params.order();
    if (n == 0 || k > n - 1) {
        throw ValidationError("beta_vanishing_check: k = " + std::to_string(k) + " outside 0.." +
                              std::to_string(n == 0 ? 0 : n - 1));
    }
    const CoefficientTable table = build_table(params);
    if (!is_zero(table.alpha_at(n - k))) return true;
    for (std::size_t j = 0; j <= k; ++j) {
        if (!is_zero(table.beta_at(2 * n - j))) return false;
    }
    return true;
}

}  // namespace heatlaw
