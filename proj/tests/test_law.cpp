#include "heatlaw/errors.hpp"
#include "heatlaw/law.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace heatlaw;
using Catch::Matchers::ContainsSubstring;

namespace {

Rational q(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

ParameterSequence params(RationalVec eps, RationalVec omega, RationalVec kappa) {
    ParameterSequence p{std::move(eps), std::move(omega), std::move(kappa)};
    p.validate();
    return p;
}

}  // namespace

TEST_CASE("build_law of order 1") {
    const Rational e(1, 3), w(1, 2), k0(2), k1(5);
    const HeatLaw law = build_law(params({e}, {w}, {k0, k1}));
    CHECK(law.order == 1);
    CHECK(law.variable == 1);
    CHECK(law.q_coeffs == RationalVec{1, e});
    CHECK(law.grad_coeffs == RationalVec{k1, e * k1 + k0, e * w * k0});
    CHECK_FALSE(law.has_memory());
}

TEST_CASE("order-1 law with epsilon = 0 is the type III law") {
    const HeatLaw law = build_law(params({0}, {Rational(1, 3)}, {2, 3}));
    CHECK(same_law(law, HeatLaw{0, 1, {1}, {3, 2}, std::nullopt}));
}

TEST_CASE("build_law of order 2 with unit parameters") {
    const HeatLaw law = build_law(params({1, 1}, {0, 0}, {1, 1, 1}));
    CHECK(law.q_coeffs == RationalVec{1, 2, 1});
    CHECK(law.grad_coeffs == RationalVec{1, 2, 2, 2, 0});
}

TEST_CASE("Fourier law and heat equation") {
    const EvolutionEquation eq = to_evolution(fourier_law(Rational(3, 2)));
    CHECK(eq.variable == 0);
    CHECK(eq.time_coeffs == RationalVec{0, 1});
    CHECK(eq.laplacian_coeffs == RationalVec{Rational(3, 2)});
    CHECK_FALSE(eq.memory.has_value());
    CHECK(eq.order() == 1);
    CHECK_THROWS_AS(fourier_law(0), ValidationError);
}

TEST_CASE("order-1 law gives the third-order equation") {
    const Rational e(2, 7), w(1, 3), k(3, 2), k1(4);
    const EvolutionEquation eq = to_evolution(build_law(params({e}, {w}, {k, k1})));
    CHECK(eq.variable == 1);
    CHECK(eq.time_coeffs == RationalVec{0, 0, 1, e});
    CHECK(eq.laplacian_coeffs == RationalVec{k1, k + e * k1, e * w * k});
}

TEST_CASE("kappa_n = 0 lowers the equation to u_{n-1}") {
    const Rational e1(1, 2), e2(1, 3), k0(1), k1(2);
    const ParameterSequence p = params({e1, e2}, {0, Rational(1, 4)}, {k0, k1, 0});
    const HeatLaw law = build_law(p);
    const EvolutionEquation eq = to_evolution(law);
    CHECK(eq.variable == 1);
    const CoefficientTable t = build_table(p);
    CHECK(eq.time_coeffs == RationalVec{0, 0, 1, t.alpha_at(1), t.alpha_at(2)});
    CHECK(eq.laplacian_coeffs == RationalVec{t.beta_at(1), t.beta_at(2), t.beta_at(3), t.beta_at(4)});
    CHECK(t.beta_at(4) == 0);
    CHECK(eq.order() == 4);
}

TEST_CASE("to_evolution keeps the coefficient multiset") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(1, 20);
    for (std::size_t n = 1; n <= 5; ++n) {
        ParameterSequence p;
        for (std::size_t i = 0; i < n; ++i) {
            p.epsilon.push_back(q(num(rng), 7));
            p.omega.push_back(q(num(rng), 21));
        }
        for (std::size_t i = 0; i <= n; ++i) p.kappa.push_back(q(num(rng), 5));
        const HeatLaw law = build_law(p);
        const EvolutionEquation eq = to_evolution(law);
        REQUIRE(eq.variable == n);
        RationalVec a(eq.time_coeffs.begin() + static_cast<long>(n + 1), eq.time_coeffs.end());
        CHECK(a == law.q_coeffs);
        CHECK(std::all_of(eq.time_coeffs.begin(), eq.time_coeffs.begin() + static_cast<long>(n + 1), is_zero));
        CHECK(eq.laplacian_coeffs == law.grad_coeffs);
    }
}

TEST_CASE("attach_memory validation") {
    const HeatLaw f = fourier_law(1);
    const Kernel g = Kernel::exponential(Rational(1, 2));
    CHECK_THROWS_WITH(attach_memory(f, 1, g, 0), ContainsSubstring("[0,1)"));
    CHECK_THROWS_AS(attach_memory(f, 2, g, 0), ValidationError);
    CHECK_NOTHROW(attach_memory(f, 2, g, 0, LawOptions{true}));
    CHECK_THROWS_AS(attach_memory(f, 1, g, 0, LawOptions{true}), ValidationError);
    CHECK_THROWS_AS(attach_memory(f, Rational(-1, 2), g, 0), ValidationError);
    CHECK_THROWS_AS(attach_memory(f, 0, g, -1), ValidationError);
    const HeatLaw terminal = build_law(params({1}, {0}, {1, 0}));
    CHECK_THROWS_WITH(attach_memory(terminal, 0, g, 0), ContainsSubstring("cannot relax a terminal law"));
    CHECK_THROWS_AS(attach_memory(attach_memory(f, 0, g, 0), 0, g, 0), ValidationError);
}

TEST_CASE("memory term weights split kappa_n") {
    const HeatLaw law = attach_memory(fourier_law(4), Rational(1, 4), Kernel::exponential(1), 2);
    const MemoryTerm& m = *law.memory;
    CHECK(m.instantaneous_weight() == 1);
    CHECK(m.convolved_weight() == 3);
    CHECK(m.instantaneous_weight() + m.convolved_weight() == 4);
    CHECK(m.kappa_next == 2);
}

TEST_CASE("relaxing the order-0 memory law gives the order-1 law") {
    const Rational eps(1, 3), omega(2, 5), k0(3), k1(1, 2);
    const HeatLaw memory = attach_memory(fourier_law(k0), omega, Kernel::exponential(eps), k1);
    CHECK(same_law(relax_exponential(memory), build_law(params({eps}, {omega}, {k0, k1}))));
}

TEST_CASE("Gurtin-Pipkin with exponential kernel relaxes to Maxwell-Cattaneo") {
    const Rational eps(1, 4), k0(2);
    const HeatLaw relaxed = relax_exponential(attach_memory(fourier_law(k0), 0, Kernel::exponential(eps), 0));
    // q + eps d_t q = -k0 grad u_0
    CHECK(same_law(relaxed, HeatLaw{1, 0, {1, eps}, {k0}, std::nullopt}));
    const EvolutionEquation eq = to_evolution(relaxed);
    CHECK(eq.variable == 0);
    CHECK(eq.time_coeffs == RationalVec{0, 1, eps});
    CHECK(eq.laplacian_coeffs == RationalVec{k0, 0});
}

TEST_CASE("relaxing an order-2 memory law matches build_law at order 3") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(1, 40);
    for (int t = 0; t < 10; ++t) {
        const ParameterSequence p = params({q(num(rng), 9), q(num(rng), 13)}, {q(num(rng), 41), 0},
                                           {q(num(rng), 3), q(num(rng), 7), q(num(rng), 5)});
        const Rational eps = q(num(rng), 17), omega = q(num(rng), 41), kappa = q(num(rng), 2);
        const HeatLaw relaxed = relax_exponential(attach_memory(build_law(p), omega, Kernel::exponential(eps), kappa));
        CHECK(same_law(relaxed, build_law(p.extended(eps, omega, kappa))));
    }
}

TEST_CASE("Dirac memory degenerates to the local law") {
    const ParameterSequence p = params({Rational(1, 2)}, {Rational(1, 3)}, {2, 3});
    const HeatLaw memory = attach_memory(build_law(p), Rational(1, 5), Kernel::dirac(), Rational(7, 2));
    const HeatLaw local = localize(memory);
    CHECK(same_law(relax_exponential(memory), local));
    CHECK(same_law(local, build_law(p.extended(0, Rational(1, 5), Rational(7, 2)))));
    // With kappa_next = 0 it is the original law.
    CHECK(same_law(localize(attach_memory(build_law(p), Rational(1, 5), Kernel::dirac(), 0)), build_law(p)));
    CHECK(to_evolution(memory) == to_evolution(local));
}

TEST_CASE("relax_exponential needs an exponential memory") {
    CHECK_THROWS_AS(relax_exponential(fourier_law(1)), ValidationError);
    const HeatLaw prony = attach_memory(fourier_law(1), 0, Kernel::prony({{1, 1}}), 0);
    CHECK_THROWS_WITH(relax_exponential(prony), ContainsSubstring("only for exponential kernels"));
}

TEST_CASE("memory laws give the two memory equations") {
    const Rational eps(1, 2), omega(1, 3), k0(3), k1(2);
    const Kernel g = Kernel::exponential(eps);

    const EvolutionEquation a = to_evolution(attach_memory(fourier_law(k0), omega, g, 0));
    CHECK(a.variable == 0);
    CHECK(a.time_coeffs == RationalVec{0, 1});
    CHECK(a.laplacian_coeffs == RationalVec{omega * k0});
    REQUIRE(a.memory.has_value());
    CHECK(a.memory->weight == (1 - omega) * k0);
    CHECK(a.memory->derivative_order == 0);

    const EvolutionEquation b = to_evolution(attach_memory(fourier_law(k0), omega, g, k1));
    CHECK(b.variable == 1);
    CHECK(b.time_coeffs == RationalVec{0, 0, 1});
    CHECK(b.laplacian_coeffs == RationalVec{k1, omega * k0});
    REQUIRE(b.memory.has_value());
    CHECK(b.memory->derivative_order == 1);
    CHECK(b.memory->kernel == g);
}

TEST_CASE("order-1 memory law with kappa_2 = 0") {
    const ParameterSequence p = params({Rational(1, 2)}, {0}, {1, 2});
    const EvolutionEquation eq = to_evolution(attach_memory(build_law(p), Rational(1, 4), Kernel::exponential(1), 0));
    CHECK(eq.variable == 1);
    CHECK(eq.time_coeffs == RationalVec{0, 0, 1, Rational(1, 2)});
    CHECK(eq.memory->derivative_order == 0);
    CHECK(eq.memory->weight == Rational(3, 4) * 2);
}

TEST_CASE("re_expressed shifts the variable") {
    const HeatLaw law{0, 0, {1}, {2}, std::nullopt};
    const HeatLaw up = re_expressed(law, 2);
    CHECK(up.variable == 2);
    CHECK(up.grad_coeffs == RationalVec{0, 0, 2});
    CHECK(re_expressed(up, 0) == law);
    CHECK_THROWS_AS(re_expressed(HeatLaw{0, 1, {1}, {1, 1}, std::nullopt}, 0), ValidationError);
}

TEST_CASE("shifted_up and normalized are inverse") {
    const EvolutionEquation eq = to_evolution(attach_memory(fourier_law(1), 0, Kernel::exponential(1), 0));
    const EvolutionEquation up = eq.shifted_up().shifted_up();
    CHECK(up.variable == 2);
    CHECK(up.memory->derivative_order == 2);
    CHECK(up.normalized() == eq);
}

TEST_CASE("render is plain text") {
    const HeatLaw law = build_law(params({Rational(1, 2)}, {0}, {1, 2}));
    CHECK(render(law) == "q + (1/2) d_t q = - 2 grad u_1 - 2 grad d_t u_1");
    CHECK(render(to_evolution(fourier_law(1))) == "d_t u_0 - Lap u_0 = 0");
    const HeatLaw memory = attach_memory(fourier_law(1), 0, Kernel::exponential(Rational(1, 2)), 0);
    CHECK_THAT(render(to_evolution(memory)), ContainsSubstring("int_0^inf"));
}
