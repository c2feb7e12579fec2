#include "heatlaw/catalog.hpp"

#include "heatlaw/errors.hpp"
#include "presets_data.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

namespace heatlaw {

namespace {

using Support = std::set<std::size_t>;

Support support(const RationalVec& values) {
    Support s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!is_zero(values[i])) s.insert(i);
    }
    return s;
}

bool all_positive(const RationalVec& values) {
    for (const auto& v : values) {
        if (sgn(v) < 0) return false;
    }
    return true;
}

constexpr std::array<const char*, 11> kTitles = {
    "",
    "heat equation",
    "Gurtin-Pipkin heat equation",
    "Coleman-Gurtin heat equation",
    "weakly damped wave equation",
    "strongly damped wave equation",
    "Moore-Gibson-Thompson equation",
    "regularized MGT equation",
    "MGT equation with memory of type I",
    "MGT equation with memory of type II",
    "fourth order equation of MGT type",
};

int match(const EvolutionEquation& eq) {
    if (!all_positive(eq.time_coeffs) || !all_positive(eq.laplacian_coeffs)) return 0;
    const Support a = support(eq.time_coeffs);
    const Support b = support(eq.laplacian_coeffs);
    const bool mem = eq.memory.has_value() && !is_zero(eq.memory->weight);
    const std::size_t r = mem ? eq.memory->derivative_order : 0;
    const int sign = mem ? sgn(eq.memory->weight) : 0;

    if (!mem) {
        if (a == Support{1} && b == Support{0}) return 1;
        if (a == Support{1, 2} && b == Support{0}) return 4;
        if (a == Support{2} && b == Support{0, 1}) return 5;
        if (a == Support{2, 3} && b == Support{0, 1}) return 6;
        if (a == Support{2, 3} && b == Support{0, 1, 2}) return 7;
        if (a == Support{2, 3, 4} && b == Support{0, 1, 2}) return 10;
        return 0;
    }
    if (a == Support{1} && r == 0 && sign > 0) {
        if (b.empty()) return 2;
        if (b == Support{0}) return 3;
        return 0;
    }
    if (a == Support{2, 3}) {
        if (r == 0 && sign < 0 && b == Support{0, 1}) return 8;
        // A positive convolution of Lap v turns into +int G Lap d_t v with the
        // integrated kernel, which restores the full -c Lap v term.
        if (r == 0 && sign > 0 && (b == Support{1} || b == Support{0, 1})) return 9;
        if (r == 1 && sign < 0 && b == Support{0, 1}) return 9;
    }
    return 0;
}

// Recursive-descent evaluator for preset expressions.
class ExpressionParser {
public:
    ExpressionParser(std::string_view text, const Constants& vars) : text_(text), vars_(vars) {}

    Rational parse() {
        Rational v = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    Rational expr() {
        Rational v = term();
        while (true) {
            skip_space();
            if (accept('+')) v += term();
            else if (accept('-')) v -= term();
            else return v;
        }
    }

    Rational term() {
        Rational v = factor();
        while (true) {
            skip_space();
            if (accept('*')) {
                v *= factor();
            } else if (accept('/')) {
                Rational d = factor();
                if (is_zero(d)) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    Rational factor() {
        skip_space();
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        if (accept('(')) {
            Rational v = expr();
            skip_space();
            if (!accept(')')) fail("missing ')'");
            return v;
        }
        if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
            return parse_rational(text_.substr(start, pos_ - start));
        }
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            auto it = vars_.find(name);
            if (it == vars_.end()) fail("unknown constant '" + name + "'");
            return it->second;
        }
        fail("expected a number, constant or '('");
        return Rational(0);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ValidationError("PresetTemplate: " + why + " in expression '" + std::string(text_) + "'");
    }

    std::string_view text_;
    const Constants& vars_;
    std::size_t pos_ = 0;
};

Rational eval_field(const Json& j, const Constants& vars) {
    if (j.is_string()) return evaluate_expression(j.get<std::string>(), vars);
    return rational_from_json(j);
}

RationalVec eval_list(const Json& j, const Constants& vars) {
    RationalVec out;
    for (const auto& v : j) out.push_back(eval_field(v, vars));
    return out;
}

}  // namespace

std::string roman(int item) {
    static constexpr std::array<const char*, 11> numerals = {"", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"};
    return item >= 1 && item <= 10 ? numerals[static_cast<std::size_t>(item)] : "";
}

Classification classify(const EvolutionEquation& eq) {
    const EvolutionEquation normal = eq.normalized();
    const int item = match(normal);
    if (item != 0) return Classification{item, "(" + roman(item) + ") " + kTitles[static_cast<std::size_t>(item)]};
    std::ostringstream os;
    os << "general(order=" << normal.order() << ", memory=" << (normal.memory ? "yes" : "no") << ")";
    return Classification{0, os.str()};
}

Rational stability_number(const Rational& a, const Rational& b, const Rational& c) {
    if (sgn(a) <= 0) throw ValidationError("mgt: a = " + to_string(a) + " must be > 0");
    return b - c / a;
}

EvolutionEquation mgt_equation(const Rational& a, const Rational& b, const Rational& c) {
    if (sgn(a) <= 0 || sgn(b) <= 0 || sgn(c) <= 0) throw ValidationError("mgt: constants a, b, c must be > 0");
    EvolutionEquation eq;
    eq.time_coeffs = {Rational(0), Rational(0), a, Rational(1)};
    eq.laplacian_coeffs = {c, b};
    return eq;
}

ParameterSequence mgt_to_params(const Rational& a, const Rational& b, const Rational& c) {
    if (sgn(a) <= 0 || sgn(b) <= 0 || sgn(c) <= 0) throw ValidationError("mgt_to_params: constants a, b, c must be > 0");
    const Rational kappa_number = stability_number(a, b, c);
    if (sgn(kappa_number) <= 0) {
        throw ValidationError("mgt_to_params: stability number b - c/a = " + to_string(kappa_number) +
                              (sgn(kappa_number) == 0 ? " (critical)" : " (supercritical)") +
                              "; not representable, only the subcritical case b - c/a > 0 is");
    }
    ParameterSequence p;
    p.epsilon = {Rational(1 / a)};
    p.omega = {Rational(0)};
    p.kappa = {Rational(kappa_number / a), Rational(c / a)};
    p.validate();
    return p;
}

Rational evaluate_expression(std::string_view expr, const Constants& vars) { return ExpressionParser(expr, vars).parse(); }

std::vector<PresetTemplate> load_catalog(const Json& catalog) {
    std::vector<PresetTemplate> out;
    for (const auto& [name, entry] : catalog.at("presets").items()) {
        PresetTemplate t;
        t.name = name;
        t.item = entry.at("item").get<int>();
        t.title = entry.value("title", std::string());
        t.notes = entry.value("notes", std::string());
        for (const auto& [k, v] : entry.at("constants").items()) t.defaults[k] = rational_from_json(v);
        t.law = entry.at("law");
        if (entry.contains("memory")) t.memory = entry.at("memory");
        out.push_back(std::move(t));
    }
    std::stable_sort(out.begin(), out.end(), [](const PresetTemplate& l, const PresetTemplate& r) { return l.item < r.item; });
    return out;
}

const std::vector<PresetTemplate>& preset_catalog() {
    static const std::vector<PresetTemplate> catalog = load_catalog(Json::parse(kPresetCatalogJson));
    return catalog;
}

const PresetTemplate& find_preset(std::string_view name) {
    for (const auto& p : preset_catalog()) {
        if (p.name == name) return p;
    }
    std::string known;
    for (const auto& p : preset_catalog()) known += (known.empty() ? "" : ", ") + p.name;
    throw ValidationError("PresetTemplate: unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

PresetInstance instantiate(const PresetTemplate& preset, const Constants& overrides) {
    PresetInstance inst;
    inst.name = preset.name;
    inst.constants = preset.defaults;
    for (const auto& [k, v] : overrides) {
        if (!preset.defaults.count(k)) {
            throw ValidationError("PresetTemplate: preset '" + preset.name + "' has no constant '" + k + "'");
        }
        inst.constants[k] = v;
    }
    for (const auto& [k, v] : inst.constants) {
        if (sgn(v) <= 0) throw ValidationError("PresetTemplate: constant " + k + " = " + to_string(v) + " must be > 0");
    }

    const RationalVec epsilon = eval_list(preset.law.at("epsilon"), inst.constants);
    const RationalVec omega = eval_list(preset.law.at("omega"), inst.constants);
    const RationalVec kappa = eval_list(preset.law.at("kappa"), inst.constants);
    if (epsilon.empty()) {
        if (kappa.size() != 1) throw ValidationError("PresetTemplate: order-0 law needs exactly one conductivity");
        inst.law = fourier_law(kappa.front());
    } else {
        inst.params = ParameterSequence{epsilon, omega, kappa};
        inst.law = build_law(*inst.params);
    }

    if (preset.memory) {
        const Json& m = *preset.memory;
        inst.options.extended_omega = m.value("extended_omega", false);
        Json kernel = m.at("kernel");
        Json evaluated = kernel;
        if (kernel.contains("tau")) evaluated["tau"] = to_string(eval_field(kernel.at("tau"), inst.constants));
        if (kernel.contains("terms")) {
            for (std::size_t i = 0; i < kernel.at("terms").size(); ++i) {
                evaluated["terms"][i]["weight"] = to_string(eval_field(kernel["terms"][i].at("weight"), inst.constants));
                evaluated["terms"][i]["tau"] = to_string(eval_field(kernel["terms"][i].at("tau"), inst.constants));
            }
        }
        inst.law = attach_memory(inst.law, eval_field(m.at("omega"), inst.constants), kernel_from_json(evaluated),
                                 eval_field(m.at("kappa"), inst.constants), inst.options);
    }
    return inst;
}

}  // namespace heatlaw
