#pragma once

// Named equations of the hierarchy: preset templates, the structural
// classifier, and the MGT parameter mapping.

#include "heatlaw/coefficients.hpp"
#include "heatlaw/json_io.hpp"
#include "heatlaw/law.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heatlaw {

using Constants = std::map<std::string, Rational>;

struct Classification {
    int item = 0;       // 1..10 for the catalog equations, 0 otherwise
    std::string label;  // "(vi) Moore-Gibson-Thompson equation" or "general(order=4, memory=no)"

    bool is_catalog() const { return item != 0; }
};

/// Structural match: which derivative orders carry nonzero coefficients,
/// whether memory is present, its convolved derivative order and sign.
Classification classify(const EvolutionEquation& eq);

std::string roman(int item);

/// b - c/a.
Rational stability_number(const Rational& a, const Rational& b, const Rational& c);

/// d_ttt v + a d_tt v - b Lap d_t v - c Lap v = 0, any positive a, b, c.
EvolutionEquation mgt_equation(const Rational& a, const Rational& b, const Rational& c);

/// omega = 0, epsilon = 1/a, kappa_1 = c/a, kappa_0 = (b - c/a)/a. Only the
/// subcritical regime b > c/a is representable.
ParameterSequence mgt_to_params(const Rational& a, const Rational& b, const Rational& c);

/// Arithmetic over rationals with + - * / and parentheses; identifiers are
/// looked up in `vars`.
Rational evaluate_expression(std::string_view expr, const Constants& vars);

struct PresetTemplate {
    std::string name;
    int item = 0;
    std::string title;
    std::string notes;
    Constants defaults;
    Json law;                    // {"epsilon": [...], "omega": [...], "kappa": [...]} of expressions
    std::optional<Json> memory;  // {"omega", "kernel", "kappa", "extended_omega"}
};

struct PresetInstance {
    std::string name;
    Constants constants;
    std::optional<ParameterSequence> params;  // empty for the Fourier law (order 0)
    HeatLaw law;                              // with memory when the template has one
    LawOptions options;
};

std::vector<PresetTemplate> load_catalog(const Json& catalog);

/// Catalog compiled in from data/presets.json.
const std::vector<PresetTemplate>& preset_catalog();

const PresetTemplate& find_preset(std::string_view name);

PresetInstance instantiate(const PresetTemplate& preset, const Constants& overrides = {});

}  // namespace heatlaw
