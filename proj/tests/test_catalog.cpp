#include "heatlaw/catalog.hpp"
#include "heatlaw/errors.hpp"

#include <catch_amalgamated.hpp>

using namespace heatlaw;
using Catch::Matchers::ContainsSubstring;

namespace {

EvolutionEquation equation(RationalVec time, RationalVec lap, std::optional<EquationMemory> memory = std::nullopt) {
    return EvolutionEquation{0, std::move(time), std::move(lap), std::move(memory)};
}

EquationMemory memory(Rational weight, std::size_t r) { return {std::move(weight), Kernel::exponential(1), r}; }

}  // namespace

TEST_CASE("classify the structural patterns") {
    CHECK(classify(equation({0, 1}, {3})).label == "(i) heat equation");
    CHECK(classify(equation({0, 2, 1}, {5})).item == 4);
    CHECK(classify(equation({0, 0, 1}, {5, 2})).item == 5);
    CHECK(classify(equation({0, 1}, {0}, memory(1, 0))).item == 2);
    CHECK(classify(equation({0, 1}, {2}, memory(1, 0))).item == 3);
    CHECK(classify(equation({0, 0, 2, 1}, {1, 3})).item == 6);
    CHECK(classify(equation({0, 0, 2, 1}, {1, 3, 1})).item == 7);
    CHECK(classify(equation({0, 0, 2, 1}, {1, 3}, memory(-1, 0))).item == 8);
    CHECK(classify(equation({0, 0, 2, 1}, {1, 3}, memory(1, 0))).item == 9);
    CHECK(classify(equation({0, 0, 2, 1}, {0, 3}, memory(1, 0))).item == 9);
    CHECK(classify(equation({0, 0, 2, 1}, {1, 3}, memory(-1, 1))).item == 9);
    CHECK(classify(equation({0, 0, 1, 2, 1}, {1, 1, 1})).item == 10);
}

TEST_CASE("classify ignores the variable offset") {
    const EvolutionEquation heat = equation({0, 1}, {3});
    CHECK(classify(heat.shifted_up().shifted_up()).item == 1);
}

TEST_CASE("unmatched equations are general") {
    const Classification c = classify(equation({0, 1, 1, 1}, {1}));
    CHECK_FALSE(c.is_catalog());
    CHECK(c.label == "general(order=3, memory=no)");
    CHECK(classify(equation({0, 0, 2, 1}, {1, 3}, memory(1, 1))).label == "general(order=3, memory=yes)");
}

TEST_CASE("every preset lands on its catalog entry") {
    const auto& catalog = preset_catalog();
    REQUIRE(catalog.size() == 10);
    for (const auto& preset : catalog) {
        INFO(preset.name);
        const PresetInstance inst = instantiate(preset);
        CHECK(classify(to_evolution(inst.law)).item == preset.item);
    }
    CHECK(catalog.front().name == "heat");
    CHECK(catalog.back().name == "mgt4");
}

TEST_CASE("preset constants can be overridden") {
    const PresetInstance inst = instantiate(find_preset("mgt"), {{"a", 2}, {"b", 1}, {"c", 1}});
    REQUIRE(inst.params.has_value());
    CHECK(*inst.params == mgt_to_params(2, 1, 1));
    CHECK_THROWS_WITH(instantiate(find_preset("mgt"), {{"z", 1}}), ContainsSubstring("z"));
    CHECK_THROWS_AS(instantiate(find_preset("mgt"), {{"a", -1}}), ValidationError);
    CHECK_THROWS_AS(find_preset("nope"), ValidationError);
}

TEST_CASE("mgt-memory-1 needs the extended omega range") {
    const PresetInstance inst = instantiate(find_preset("mgt-memory-1"));
    CHECK(inst.options.extended_omega);
    CHECK(inst.law.memory->omega > 1);
}

TEST_CASE("mgt_to_params examples") {
    const ParameterSequence p = mgt_to_params(2, 1, 1);
    CHECK(p.epsilon == RationalVec{Rational(1, 2)});
    CHECK(p.omega == RationalVec{0});
    CHECK(p.kappa == RationalVec{Rational(1, 4), Rational(1, 2)});
    CHECK(stability_number(2, 1, 1) == Rational(1, 2));
    CHECK_THROWS_WITH(mgt_to_params(1, 1, 2), ContainsSubstring("-1"));
    CHECK_THROWS_AS(mgt_to_params(3, 2, 6), ValidationError);
    CHECK_THROWS_AS(mgt_to_params(0, 1, 1), ValidationError);
}

TEST_CASE("mgt_to_params round trip reproduces the MGT equation over a") {
    for (const auto& [a, b, c] : {std::tuple<Rational, Rational, Rational>{2, 1, 1}, {Rational(1, 3), 5, Rational(1, 2)}, {4, 3, 7}}) {
        const EvolutionEquation eq = to_evolution(build_law(mgt_to_params(a, b, c)));
        const EvolutionEquation target = mgt_equation(a, b, c);
        RationalVec scaled_time;
        for (const auto& v : target.time_coeffs) scaled_time.push_back(v / a);
        RationalVec scaled_lap;
        for (const auto& v : target.laplacian_coeffs) scaled_lap.push_back(v / a);
        CHECK(trim_trailing_zeros(eq.time_coeffs) == scaled_time);
        CHECK(trim_trailing_zeros(eq.laplacian_coeffs) == scaled_lap);
        CHECK(classify(eq).item == 6);
    }
}

TEST_CASE("evaluate_expression") {
    const Constants vars{{"a", 2}, {"b", Rational(1, 3)}};
    CHECK(evaluate_expression("(b - 1/a)/a", vars) == Rational(-1, 12));
    CHECK(evaluate_expression("-a*b + 0.5", vars) == Rational(-1, 6));
    CHECK(evaluate_expression("a/(a + b)", vars) == Rational(6, 7));
    CHECK_THROWS_AS(evaluate_expression("a/0", vars), ValidationError);
    CHECK_THROWS_AS(evaluate_expression("a + q", vars), ValidationError);
    CHECK_THROWS_AS(evaluate_expression("(a", vars), ValidationError);
}

TEST_CASE("roman numerals") {
    CHECK(roman(1) == "i");
    CHECK(roman(4) == "iv");
    CHECK(roman(9) == "ix");
    CHECK(roman(10) == "x");
}
