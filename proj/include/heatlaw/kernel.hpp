#pragma once

#include "heatlaw/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heatlaw {

/// One weighted normalized exponential, weight * (1/tau) exp(-s/tau).
struct PronyTerm {
    Rational weight;
    Rational tau;

    bool operator==(const PronyTerm&) const = default;
};

/// Memory kernel: Dirac mass at zero, the unit-mass exponential
/// (1/tau) exp(-s/tau), or a Prony sum of weighted exponentials.
class Kernel {
public:
    enum class Kind { Dirac, Exponential, PronySum };

    static Kernel dirac();
    static Kernel exponential(const Rational& tau);
    static Kernel prony(std::vector<PronyTerm> terms);

    Kind kind() const { return kind_; }
    std::string kind_name() const;

    /// Exponential: one term of weight 1. Dirac: empty.
    const std::vector<PronyTerm>& terms() const { return terms_; }

    Rational mass() const;

    /// Relaxation time when the kernel is a single exponential; Dirac counts as
    /// the tau = 0 limit.
    std::optional<Rational> relaxation_time() const;

    /// g(s) for s >= 0. Dirac has no pointwise value and throws.
    double evaluate(double s) const;

    bool operator==(const Kernel&) const = default;

private:
    Kernel(Kind kind, std::vector<PronyTerm> terms) : kind_(kind), terms_(std::move(terms)) {}

    Kind kind_;
    std::vector<PronyTerm> terms_;
};

/// Sum of plain exponentials  sum_i amplitude_i exp(-s/tau_i).
struct ExponentialSum {
    struct Term {
        Rational amplitude;
        Rational tau;
        bool operator==(const Term&) const = default;
    };
    std::vector<Term> terms;

    double evaluate(double s) const;
    bool operator==(const ExponentialSum&) const = default;
};

struct KernelTransforms {
    ExponentialSum differentiated;  // mu(s) = -(1-omega) kappa g'(s)
    ExponentialSum integrated;      // G(s) = (1-omega) kappa int_s^inf g(y) dy
};

/// Closed forms of the differentiated and integrated kernels for the memory
/// term -(1-omega) kappa int g(s) grad u(t-s) ds. Dirac has neither.
KernelTransforms kernel_transforms(const Kernel& kernel, const Rational& omega, const Rational& kappa);

}  // namespace heatlaw
