#include "heatlaw/json_io.hpp"

#include "heatlaw/errors.hpp"

#include <cstdio>

namespace heatlaw {

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
    if (j.is_number_float()) return parse_rational(j.dump());
    throw ValidationError("Rational: expected a string or number, got " + j.dump());
}

RationalVec rationals_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("Rational list: expected an array, got " + j.dump());
    RationalVec out;
    for (const auto& v : j) out.push_back(rational_from_json(v));
    return out;
}

Json to_json_value(const Rational& r) { return to_string(r); }

Json to_json_value(const RationalVec& values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(to_string(v));
    return arr;
}

void to_json(Json& j, const ParameterSequence& p) {
    j = Json{{"epsilon", to_json_value(p.epsilon)}, {"omega", to_json_value(p.omega)}, {"kappa", to_json_value(p.kappa)}};
}

void from_json(const Json& j, ParameterSequence& p) {
    for (const char* key : {"epsilon", "omega", "kappa"}) {
        if (!j.contains(key)) throw ValidationError(std::string("ParameterSequence: missing field '") + key + "'");
    }
    p.epsilon = rationals_from_json(j.at("epsilon"));
    p.omega = rationals_from_json(j.at("omega"));
    p.kappa = rationals_from_json(j.at("kappa"));
}

void to_json(Json& j, const CoefficientTable& t) {
    j = Json{{"order", t.order}, {"alpha", to_json_value(t.alpha)}, {"beta", to_json_value(t.beta)}};
}

void from_json(const Json& j, CoefficientTable& t) {
    t.order = j.at("order").get<std::size_t>();
    t.alpha = rationals_from_json(j.at("alpha"));
    t.beta = rationals_from_json(j.at("beta"));
    if (t.alpha.size() != t.order || t.beta.size() != 2 * t.order) {
        throw ValidationError("CoefficientTable: expected n alpha and 2n beta entries");
    }
}

Json kernel_to_json(const Kernel& k) {
    switch (k.kind()) {
        case Kernel::Kind::Dirac: return Json{{"type", "dirac"}};
        case Kernel::Kind::Exponential: return Json{{"type", "exponential"}, {"tau", to_string(k.terms().front().tau)}};
        case Kernel::Kind::PronySum: {
            Json terms = Json::array();
            for (const auto& t : k.terms()) terms.push_back({{"weight", to_string(t.weight)}, {"tau", to_string(t.tau)}});
            return Json{{"type", "prony"}, {"terms", terms}};
        }
    }
    return Json();
}

Kernel kernel_from_json(const Json& j) {
    const std::string type = j.value("type", std::string());
    if (type == "dirac") return Kernel::dirac();
    if (type == "exponential") {
        const Rational tau = rational_from_json(j.at("tau"));
        return is_zero(tau) ? Kernel::dirac() : Kernel::exponential(tau);
    }
    if (type == "prony") {
        std::vector<PronyTerm> terms;
        for (const auto& t : j.at("terms")) terms.push_back({rational_from_json(t.at("weight")), rational_from_json(t.at("tau"))});
        return Kernel::prony(std::move(terms));
    }
    throw ValidationError("Kernel: unknown type '" + type + "' (expected dirac, exponential or prony)");
}

void to_json(Json& j, const HeatLaw& law) {
    j = Json{{"order", law.order},
             {"variable", law.variable},
             {"q_coeffs", to_json_value(law.q_coeffs)},
             {"grad_coeffs", to_json_value(law.grad_coeffs)},
             {"memory", nullptr}};
    if (law.memory) {
        j["memory"] = Json{{"omega", to_string(law.memory->omega)},
                           {"kappa_relaxed", to_string(law.memory->kappa_relaxed)},
                           {"instantaneous_weight", to_string(law.memory->instantaneous_weight())},
                           {"convolved_weight", to_string(law.memory->convolved_weight())},
                           {"kernel", kernel_to_json(law.memory->kernel)},
                           {"kappa_next", to_string(law.memory->kappa_next)}};
    }
}

HeatLaw law_from_json(const Json& j) {
    HeatLaw law;
    law.order = j.at("order").get<std::size_t>();
    law.variable = j.at("variable").get<std::size_t>();
    law.q_coeffs = rationals_from_json(j.at("q_coeffs"));
    law.grad_coeffs = rationals_from_json(j.at("grad_coeffs"));
    if (j.contains("memory") && !j.at("memory").is_null()) {
        const Json& m = j.at("memory");
        law.memory = MemoryTerm{rational_from_json(m.at("omega")), rational_from_json(m.at("kappa_relaxed")),
                                kernel_from_json(m.at("kernel")), rational_from_json(m.at("kappa_next"))};
    }
    return law;
}

namespace {

Json coefficient_map(const RationalVec& values) {
    Json m = Json::object();
    for (std::size_t i = 0; i < values.size(); ++i) m[std::to_string(i)] = to_string(values[i]);
    return m;
}

RationalVec coefficients_from_map(const Json& m) {
    RationalVec out;
    for (const auto& [key, value] : m.items()) {
        const std::size_t order = std::stoul(key);
        if (out.size() <= order) out.resize(order + 1, Rational(0));
        out[order] = rational_from_json(value);
    }
    return out;
}

}  // namespace

void to_json(Json& j, const EvolutionEquation& eq) {
    j = Json{{"variable", eq.variable},
             {"order", eq.order()},
             {"time", coefficient_map(eq.time_coeffs)},
             {"laplacian", coefficient_map(eq.laplacian_coeffs)},
             {"memory", nullptr}};
    if (eq.memory) {
        j["memory"] = Json{{"weight", to_string(eq.memory->weight)},
                           {"kernel", kernel_to_json(eq.memory->kernel)},
                           {"derivative_order", eq.memory->derivative_order}};
    }
}

EvolutionEquation equation_from_json(const Json& j) {
    EvolutionEquation eq;
    eq.variable = j.value("variable", std::size_t{0});
    eq.time_coeffs = coefficients_from_map(j.at("time"));
    eq.laplacian_coeffs = coefficients_from_map(j.at("laplacian"));
    if (j.contains("memory") && !j.at("memory").is_null()) {
        const Json& m = j.at("memory");
        eq.memory = EquationMemory{rational_from_json(m.at("weight")), kernel_from_json(m.at("kernel")),
                                   m.value("derivative_order", std::size_t{0})};
    }
    return eq;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace heatlaw
