#pragma once

// Symbolic heat laws and the evolution equations they induce through the
// energy balance d_t u + div q = 0.
//
// A law is stored as two coefficient lists:
//   sum_i q_coeffs[i] d_t^i q = - sum_j grad_coeffs[j] grad d_t^j u_m      (m = variable)
// optionally with the grad u_m term relaxed by a memory term.

#include "heatlaw/coefficients.hpp"
#include "heatlaw/kernel.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace heatlaw {

/// Memory relaxation of the kappa_m grad u_m term, plus the perturbation
/// -kappa_next grad u_{m+1}:
///   -omega kappa_m grad u_m - (1-omega) kappa_m int_0^inf g(s) grad u_m(t-s) ds - kappa_next grad u_{m+1}
struct MemoryTerm {
    Rational omega;
    Rational kappa_relaxed;
    Kernel kernel;
    Rational kappa_next;

    Rational instantaneous_weight() const { return omega * kappa_relaxed; }
    Rational convolved_weight() const { return (1 - omega) * kappa_relaxed; }

    bool operator==(const MemoryTerm&) const = default;
};

struct HeatLaw {
    std::size_t order = 0;     // highest time derivative of q
    std::size_t variable = 0;  // m in u_m
    RationalVec q_coeffs;      // c_0 = 1, c_i = alpha_n^i
    RationalVec grad_coeffs;   // [kappa_n, beta_n^1, ..., beta_n^{2n}] for canonical laws
    std::optional<MemoryTerm> memory;

    bool has_memory() const { return memory.has_value(); }
    bool operator==(const HeatLaw&) const = default;
};

struct LawOptions {
    /// Permits omega_next > 1 in attach_memory (MGT with memory of type I).
    /// omega_next = 1 is always rejected.
    bool extended_omega = false;
};

/// q = -kappa_0 grad u, the law of order 0.
HeatLaw fourier_law(const Rational& kappa0);

HeatLaw build_law(const ParameterSequence& params);

HeatLaw attach_memory(const HeatLaw& law, const Rational& omega_next, const Kernel& kernel,
                      const Rational& kappa_next, LawOptions options = {});

/// Forms (law) + tau d_t (law) for an exponential (or Dirac, tau = 0) memory law
/// and eliminates the convolution, yielding a local law of one order higher
/// written in u_{m+1}.
HeatLaw relax_exponential(const HeatLaw& memory_law);

/// Dirac memory law rewritten as a local law in u_{m+1}.
HeatLaw localize(const HeatLaw& memory_law);

/// Rewrites a local law in u_target. Raising the variable always succeeds;
/// lowering needs vanishing leading gradient coefficients.
HeatLaw re_expressed(const HeatLaw& law, std::size_t target_variable);

/// Equal as operators after moving both to a common variable and dropping
/// trailing zero coefficients.
bool same_law(const HeatLaw& lhs, const HeatLaw& rhs);

struct EquationMemory {
    Rational weight;
    Kernel kernel;
    std::size_t derivative_order = 0;  // r in int g(s) Lap d_t^r u_m(t-s) ds

    bool operator==(const EquationMemory&) const = default;
};

/// sum_j time_coeffs[j] d_t^j u_m - sum_j laplacian_coeffs[j] Lap d_t^j u_m
///   - weight int_0^inf g(s) Lap d_t^r u_m(t-s) ds = 0
struct EvolutionEquation {
    std::size_t variable = 0;
    RationalVec time_coeffs;
    RationalVec laplacian_coeffs;
    std::optional<EquationMemory> memory;

    /// Highest time derivative with a nonzero coefficient.
    std::size_t order() const;

    /// Same equation in u_{m+1}: every derivative order goes up by one.
    EvolutionEquation shifted_up() const;

    /// Lowers the variable while the zeroth-order coefficients (and the memory
    /// derivative order) allow it.
    EvolutionEquation normalized() const;

    bool operator==(const EvolutionEquation&) const = default;
};

EvolutionEquation to_evolution(const HeatLaw& law);

std::string render(const HeatLaw& law);
std::string render(const EvolutionEquation& eq);

}  // namespace heatlaw
