#include "heatlaw/kernel.hpp"

#include "heatlaw/errors.hpp"

#include <cmath>

namespace heatlaw {

Kernel Kernel::dirac() { return Kernel(Kind::Dirac, {}); }

Kernel Kernel::exponential(const Rational& tau) {
    if (sgn(tau) <= 0) throw ValidationError("Kernel: exponential relaxation time " + to_string(tau) + " must be > 0");
    return Kernel(Kind::Exponential, {PronyTerm{Rational(1), tau}});
}

Kernel Kernel::prony(std::vector<PronyTerm> terms) {
    if (terms.empty()) throw ValidationError("Kernel: Prony sum needs at least one term");
    for (const auto& t : terms) {
        if (sgn(t.weight) <= 0) throw ValidationError("Kernel: Prony weight " + to_string(t.weight) + " must be > 0");
        if (sgn(t.tau) <= 0) throw ValidationError("Kernel: Prony relaxation time " + to_string(t.tau) + " must be > 0");
    }
    return Kernel(Kind::PronySum, std::move(terms));
}

std::string Kernel::kind_name() const {
    switch (kind_) {
        case Kind::Dirac: return "dirac";
        case Kind::Exponential: return "exponential";
        case Kind::PronySum: return "prony";
    }
    return "unknown";
}

Rational Kernel::mass() const {
    if (kind_ == Kind::Dirac) return Rational(1);
    Rational m(0);
    for (const auto& t : terms_) m += t.weight;
    return m;
}

std::optional<Rational> Kernel::relaxation_time() const {
    if (kind_ == Kind::Dirac) return Rational(0);
    if (kind_ == Kind::Exponential) return terms_.front().tau;
    return std::nullopt;
}

double Kernel::evaluate(double s) const {
    if (kind_ == Kind::Dirac) throw ValidationError("Kernel: Dirac mass has no pointwise value");
    double g = 0.0;
    for (const auto& t : terms_) {
        const double tau = to_double(t.tau);
        g += to_double(t.weight) / tau * std::exp(-s / tau);
    }
    return g;
}

double ExponentialSum::evaluate(double s) const {
    double v = 0.0;
    for (const auto& t : terms) v += to_double(t.amplitude) * std::exp(-s / to_double(t.tau));
    return v;
}

KernelTransforms kernel_transforms(const Kernel& kernel, const Rational& omega, const Rational& kappa) {
    if (kernel.kind() == Kernel::Kind::Dirac) {
        throw ValidationError("kernel_transforms: Dirac kernel has no classical derivative");
    }
    const Rational scale = (1 - omega) * kappa;
    KernelTransforms out;
    for (const auto& t : kernel.terms()) {
        // g_i = (w/tau) e^{-s/tau}:  -g_i' = (w/tau^2) e^{-s/tau},  int_s^inf g_i = w e^{-s/tau}
        out.differentiated.terms.push_back({scale * t.weight / (t.tau * t.tau), t.tau});
        out.integrated.terms.push_back({scale * t.weight, t.tau});
    }
    return out;
}

}  // namespace heatlaw
