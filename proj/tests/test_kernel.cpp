#include "heatlaw/errors.hpp"
#include "heatlaw/kernel.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace heatlaw;
using Catch::Matchers::WithinRel;

TEST_CASE("kernel masses") {
    CHECK(Kernel::dirac().mass() == 1);
    CHECK(Kernel::exponential(Rational(1, 3)).mass() == 1);
    CHECK(Kernel::prony({{Rational(1, 4), 1}, {Rational(1, 2), 2}}).mass() == Rational(3, 4));
}

TEST_CASE("kernel construction is validated") {
    CHECK_THROWS_AS(Kernel::exponential(0), ValidationError);
    CHECK_THROWS_AS(Kernel::prony({}), ValidationError);
    CHECK_THROWS_AS(Kernel::prony({{-1, 1}}), ValidationError);
    CHECK_THROWS_AS(Kernel::prony({{1, 0}}), ValidationError);
}

TEST_CASE("kernel evaluation") {
    const double eps = 0.25;
    const Kernel g = Kernel::exponential(Rational(1, 4));
    CHECK_THAT(g.evaluate(0.1), WithinRel(std::exp(-0.1 / eps) / eps, 1e-15));
    const Kernel single = Kernel::prony({{Rational(3, 2), Rational(1, 4)}});
    CHECK_THAT(single.evaluate(0.3), WithinRel(1.5 * g.evaluate(0.3), 1e-15));
    CHECK_THROWS_AS(Kernel::dirac().evaluate(0.0), ValidationError);
}

TEST_CASE("relaxation times") {
    CHECK(Kernel::dirac().relaxation_time() == Rational(0));
    CHECK(Kernel::exponential(Rational(2, 3)).relaxation_time() == Rational(2, 3));
    CHECK_FALSE(Kernel::prony({{1, 1}}).relaxation_time().has_value());
}

TEST_CASE("exponential kernel transforms in closed form") {
    const Rational eps(2, 5);
    const KernelTransforms t = kernel_transforms(Kernel::exponential(eps), 0, 1);
    REQUIRE(t.differentiated.terms.size() == 1);
    CHECK(t.differentiated.terms[0].amplitude == 1 / (eps * eps));
    CHECK(t.differentiated.terms[0].tau == eps);
    REQUIRE(t.integrated.terms.size() == 1);
    CHECK(t.integrated.terms[0].amplitude == 1);
    CHECK(t.integrated.terms[0].tau == eps);
}

TEST_CASE("transforms scale with (1 - omega) kappa") {
    const Rational eps(1, 3);
    const Rational omega(1, 4);
    const Rational kappa(6);
    const KernelTransforms base = kernel_transforms(Kernel::exponential(eps), 0, 1);
    const KernelTransforms t = kernel_transforms(Kernel::exponential(eps), omega, kappa);
    CHECK(t.differentiated.terms[0].amplitude == (1 - omega) * kappa * base.differentiated.terms[0].amplitude);
    CHECK(t.integrated.terms[0].amplitude == (1 - omega) * kappa * base.integrated.terms[0].amplitude);
    CHECK_THROWS_AS(kernel_transforms(Kernel::dirac(), 0, 1), ValidationError);
}

TEST_CASE("Prony transforms agree with numerical differentiation and integration") {
    const Kernel g = Kernel::prony({{Rational(1, 3), Rational(1, 5)}, {Rational(2, 3), Rational(3, 2)}});
    const double scale = (1.0 - 0.2) * 2.0;
    const KernelTransforms t = kernel_transforms(g, Rational(1, 5), 2);
    for (double s : {0.05, 0.4, 1.7}) {
        const double h = 1e-5;
        const double derivative = (g.evaluate(s + h) - g.evaluate(s - h)) / (2 * h);
        CHECK_THAT(t.differentiated.evaluate(s), WithinRel(-scale * derivative, 1e-8));
        // Composite Simpson on [s, 60].
        const int n = 200000;
        const double b = 60.0;
        const double dx = (b - s) / n;
        double sum = g.evaluate(s) + g.evaluate(b);
        for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * g.evaluate(s + i * dx);
        CHECK_THAT(t.integrated.evaluate(s), WithinRel(scale * sum * dx / 3.0, 1e-9));
    }
}
