#include "heatlaw/law.hpp"

#include "heatlaw/errors.hpp"

#include <algorithm>
#include <sstream>

namespace heatlaw {

namespace {

RationalVec shifted(const RationalVec& values, std::size_t by) {
    RationalVec out(by, Rational(0));
    out.insert(out.end(), values.begin(), values.end());
    return out;
}

Rational at_or_zero(const RationalVec& values, std::size_t i) { return i < values.size() ? values[i] : Rational(0); }

void check_law(const HeatLaw& law, const char* where) {
    if (law.q_coeffs.empty() || law.q_coeffs.front() != 1) {
        throw ValidationError(std::string(where) + ": HeatLaw requires c_0 = 1");
    }
    if (law.grad_coeffs.empty()) throw ValidationError(std::string(where) + ": HeatLaw has no gradient terms");
}

void check_omega(const Rational& omega, const LawOptions& options) {
    if (omega == 1) {
        throw ValidationError("MemoryTerm: omega = 1 is excluded (omega must lie in [0,1))");
    }
    if (sgn(omega) < 0 || (omega > 1 && !options.extended_omega)) {
        throw ValidationError("MemoryTerm: omega = " + to_string(omega) +
                              " outside [0,1) (omega > 1 needs extended-omega mode)");
    }
}

std::string coefficient(const Rational& c) {
    if (c == 1) return "";
    const std::string s = to_string(c);
    return s.find('/') != std::string::npos || sgn(c) < 0 ? "(" + s + ") " : s + " ";
}

std::string derivative(std::size_t j) {
    if (j == 0) return "";
    if (j == 1) return "d_t ";
    return "d_t^" + std::to_string(j) + " ";
}

std::string kernel_text(const Kernel& k) {
    std::ostringstream os;
    switch (k.kind()) {
        case Kernel::Kind::Dirac: return "delta";
        case Kernel::Kind::Exponential: os << "g[exp tau=" << to_string(k.terms().front().tau) << "]"; break;
        case Kernel::Kind::PronySum: {
            os << "g[prony";
            for (const auto& t : k.terms()) os << " " << to_string(t.weight) << "@" << to_string(t.tau);
            os << "]";
            break;
        }
    }
    return os.str();
}

}  // namespace

HeatLaw fourier_law(const Rational& kappa0) {
    if (sgn(kappa0) <= 0) throw ValidationError("HeatLaw: Fourier conductivity kappa_0 = " + to_string(kappa0) + " must be > 0");
    return HeatLaw{0, 0, {Rational(1)}, {kappa0}, std::nullopt};
}

HeatLaw build_law(const ParameterSequence& params) {
    const CoefficientTable table = build_table(params);
    HeatLaw law;
    law.order = table.order;
    law.variable = table.order;
    law.q_coeffs.push_back(Rational(1));
    law.q_coeffs.insert(law.q_coeffs.end(), table.alpha.begin(), table.alpha.end());
    law.grad_coeffs.push_back(params.kap(table.order));
    law.grad_coeffs.insert(law.grad_coeffs.end(), table.beta.begin(), table.beta.end());
    return law;
}

HeatLaw attach_memory(const HeatLaw& law, const Rational& omega_next, const Kernel& kernel,
                      const Rational& kappa_next, LawOptions options) {
    check_law(law, "attach_memory");
    if (law.has_memory()) throw ValidationError("attach_memory: law already carries a memory term");
    const Rational& kappa_n = law.grad_coeffs.front();
    if (sgn(kappa_n) <= 0) {
        throw ValidationError("attach_memory: kappa_" + std::to_string(law.variable) + " = " + to_string(kappa_n) +
                              " must be > 0; cannot relax a terminal law");
    }
    check_omega(omega_next, options);
    if (sgn(kappa_next) < 0) {
        throw ValidationError("MemoryTerm: kappa_" + std::to_string(law.variable + 1) + " = " + to_string(kappa_next) +
                              " must be >= 0");
    }
    HeatLaw out = law;
    out.memory = MemoryTerm{omega_next, kappa_n, kernel, kappa_next};
    return out;
}

HeatLaw relax_exponential(const HeatLaw& memory_law) {
    check_law(memory_law, "relax_exponential");
    if (!memory_law.has_memory()) throw ValidationError("relax_exponential: law has no memory term");
    const MemoryTerm& mem = *memory_law.memory;
    const auto tau = mem.kernel.relaxation_time();
    if (!tau) throw ValidationError("relax_exponential: relaxation defined only for exponential kernels");

    // The law written in u_{m+1} with the convolution C = int g grad u_m moved left:
    //   Q(d) q + P(d) grad u_{m+1} + (1-omega) kappa_m C = 0,
    //   P = kappa_next + omega kappa_m d + sum_{j>=1} grad_coeffs[j] d^{j+1}.
    // Since tau d_t C = grad u_m - C = d grad u_{m+1} - C, applying (1 + tau d)
    // removes C and adds (1-omega) kappa_m d to the gradient operator.
    RationalVec p{mem.kappa_next, mem.instantaneous_weight()};
    for (std::size_t j = 1; j < memory_law.grad_coeffs.size(); ++j) p.push_back(memory_law.grad_coeffs[j]);
    const RationalVec relax{Rational(1), *tau};

    HeatLaw out;
    out.order = memory_law.order + 1;
    out.variable = memory_law.variable + 1;
    out.q_coeffs = poly_multiply(relax, memory_law.q_coeffs);
    out.grad_coeffs = poly_add(poly_multiply(relax, p), RationalVec{Rational(0), mem.convolved_weight()});
    return out;
}

HeatLaw localize(const HeatLaw& memory_law) {
    check_law(memory_law, "localize");
    if (!memory_law.has_memory()) return memory_law;
    const MemoryTerm& mem = *memory_law.memory;
    if (mem.kernel.kind() != Kernel::Kind::Dirac) {
        throw ValidationError("localize: only a Dirac memory kernel can be rewritten locally");
    }
    HeatLaw out;
    out.order = memory_law.order;
    out.variable = memory_law.variable + 1;
    out.q_coeffs = memory_law.q_coeffs;
    out.grad_coeffs = {mem.kappa_next, mem.kappa_relaxed};
    for (std::size_t j = 1; j < memory_law.grad_coeffs.size(); ++j) out.grad_coeffs.push_back(memory_law.grad_coeffs[j]);
    return out;
}

HeatLaw re_expressed(const HeatLaw& law, std::size_t target_variable) {
    if (law.has_memory()) throw ValidationError("re_expressed: memory laws keep their variable");
    HeatLaw out = law;
    if (target_variable >= law.variable) {
        out.grad_coeffs = shifted(law.grad_coeffs, target_variable - law.variable);
    } else {
        const std::size_t drop = law.variable - target_variable;
        for (std::size_t j = 0; j < drop; ++j) {
            if (!is_zero(at_or_zero(law.grad_coeffs, j))) {
                throw ValidationError("re_expressed: grad d_t^" + std::to_string(j) + " u_" +
                                      std::to_string(law.variable) + " has a nonzero coefficient; cannot lower to u_" +
                                      std::to_string(target_variable));
            }
        }
        out.grad_coeffs.erase(out.grad_coeffs.begin(),
                              out.grad_coeffs.begin() + static_cast<std::ptrdiff_t>(std::min(drop, out.grad_coeffs.size())));
    }
    out.variable = target_variable;
    return out;
}

bool same_law(const HeatLaw& lhs, const HeatLaw& rhs) {
    if (lhs.has_memory() || rhs.has_memory()) return lhs == rhs;
    const std::size_t m = std::max(lhs.variable, rhs.variable);
    const HeatLaw a = re_expressed(lhs, m);
    const HeatLaw b = re_expressed(rhs, m);
    return trim_trailing_zeros(a.q_coeffs) == trim_trailing_zeros(b.q_coeffs) &&
           trim_trailing_zeros(a.grad_coeffs) == trim_trailing_zeros(b.grad_coeffs);
}

std::size_t EvolutionEquation::order() const {
    const RationalVec trimmed = trim_trailing_zeros(time_coeffs);
    return trimmed.empty() ? 0 : trimmed.size() - 1;
}

EvolutionEquation EvolutionEquation::shifted_up() const {
    EvolutionEquation out = *this;
    out.variable = variable + 1;
    out.time_coeffs = shifted(time_coeffs, 1);
    out.laplacian_coeffs = shifted(laplacian_coeffs, 1);
    if (out.memory) ++out.memory->derivative_order;
    return out;
}

EvolutionEquation EvolutionEquation::normalized() const {
    EvolutionEquation out = *this;
    while (out.variable > 0 && is_zero(at_or_zero(out.time_coeffs, 0)) && is_zero(at_or_zero(out.laplacian_coeffs, 0)) &&
           (!out.memory || out.memory->derivative_order > 0)) {
        --out.variable;
        if (!out.time_coeffs.empty()) out.time_coeffs.erase(out.time_coeffs.begin());
        if (!out.laplacian_coeffs.empty()) out.laplacian_coeffs.erase(out.laplacian_coeffs.begin());
        if (out.memory) --out.memory->derivative_order;
    }
    return out;
}

EvolutionEquation to_evolution(const HeatLaw& law) {
    check_law(law, "to_evolution");
    if (law.has_memory() && law.memory->kernel.kind() == Kernel::Kind::Dirac) return to_evolution(localize(law));

    // Applying sum_i c_i d_t^i to the energy balance, with u = d_t^m u_m, turns
    // c_i d_t^i div q into -sum_j grad_coeffs[j] Lap d_t^j u_m next to c_i d_t^{i+m+1} u_m.
    EvolutionEquation eq;
    eq.variable = law.variable;
    eq.time_coeffs = shifted(law.q_coeffs, law.variable + 1);
    eq.laplacian_coeffs = law.grad_coeffs;

    if (!law.has_memory()) {
        // kappa_n = 0: the equation lives in u_{n-1}.
        while (eq.variable > 0 && !eq.laplacian_coeffs.empty() && is_zero(eq.laplacian_coeffs[0])) {
            --eq.variable;
            eq.time_coeffs.erase(eq.time_coeffs.begin());
            eq.laplacian_coeffs.erase(eq.laplacian_coeffs.begin());
        }
        return eq;
    }

    const MemoryTerm& mem = *law.memory;
    eq.laplacian_coeffs[0] = mem.instantaneous_weight();
    eq.memory = EquationMemory{mem.convolved_weight(), mem.kernel, 0};
    if (is_zero(mem.kappa_next)) return eq;

    // kappa_next != 0: rewrite in u_{m+1}, which adds the -kappa_next Lap u_{m+1} term.
    eq = eq.shifted_up();
    eq.laplacian_coeffs[0] = mem.kappa_next;
    return eq;
}

std::string render(const HeatLaw& law) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < law.q_coeffs.size(); ++i) {
        if (is_zero(law.q_coeffs[i])) continue;
        if (!first) os << " + ";
        os << coefficient(law.q_coeffs[i]) << derivative(i) << "q";
        first = false;
    }
    os << " =";
    const std::string u = "u_" + std::to_string(law.variable);
    bool any = false;
    for (std::size_t j = 0; j < law.grad_coeffs.size(); ++j) {
        if (law.has_memory() && j == 0) {
            const MemoryTerm& mem = *law.memory;
            if (!is_zero(mem.instantaneous_weight())) {
                os << " - " << coefficient(mem.instantaneous_weight()) << "grad " << u;
            }
            os << " - " << coefficient(mem.convolved_weight()) << "int_0^inf " << kernel_text(mem.kernel)
               << "(s) grad " << u << "(t-s) ds";
            any = true;
            continue;
        }
        if (is_zero(law.grad_coeffs[j])) continue;
        os << " - " << coefficient(law.grad_coeffs[j]) << "grad " << derivative(j) << u;
        any = true;
    }
    if (law.has_memory() && !is_zero(law.memory->kappa_next)) {
        os << " - " << coefficient(law.memory->kappa_next) << "grad u_" << law.variable + 1;
        any = true;
    }
    if (!any) os << " 0";
    return os.str();
}

std::string render(const EvolutionEquation& eq) {
    std::ostringstream os;
    const std::string u = "u_" + std::to_string(eq.variable);
    bool first = true;
    for (std::size_t j = eq.time_coeffs.size(); j-- > 0;) {
        if (is_zero(eq.time_coeffs[j])) continue;
        if (!first) os << " + ";
        os << coefficient(eq.time_coeffs[j]) << derivative(j) << u;
        first = false;
    }
    for (std::size_t j = eq.laplacian_coeffs.size(); j-- > 0;) {
        if (is_zero(eq.laplacian_coeffs[j])) continue;
        os << " - " << coefficient(eq.laplacian_coeffs[j]) << "Lap " << derivative(j) << u;
    }
    if (eq.memory) {
        os << " - " << coefficient(eq.memory->weight) << "int_0^inf " << kernel_text(eq.memory->kernel) << "(s) Lap "
           << derivative(eq.memory->derivative_order) << u << "(t-s) ds";
    }
    os << " = 0";
    return os.str();
}

}  // namespace heatlaw
