#include "heatlaw/rational.hpp"

#include "heatlaw/errors.hpp"

#include <algorithm>
#include <cctype>

namespace heatlaw {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Rational parse_integer(std::string_view text, std::string_view original) {
    std::string_view body = text;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
    if (!all_digits(body)) {
        throw ValidationError("Rational: cannot parse '" + std::string(original) + "'");
    }
    std::string digits(text.front() == '+' ? text.substr(1) : text);
    return Rational(mpz_class(digits, 10));
}

Rational pow10(long exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r(p);
    if (exponent < 0) r = 1 / r;
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ValidationError("Rational: empty string");
    const std::string_view original = text;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_integer(text.substr(0, slash), original);
        Rational den = parse_integer(text.substr(slash + 1), original);
        if (is_zero(den)) throw ValidationError("Rational: zero denominator in '" + std::string(original) + "'");
        Rational r = num / den;
        r.canonicalize();
        return r;
    }

    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        Rational exp_part = parse_integer(text.substr(e + 1), original);
        exponent = exp_part.get_num().get_si();
        text = text.substr(0, e);
    }

    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
            (whole.empty() && frac.empty())) {
            throw ValidationError("Rational: cannot parse '" + std::string(original) + "'");
        }
        digits = std::string(whole) + std::string(frac);
        fraction_digits = static_cast<long>(frac.size());
    } else {
        if (!all_digits(text)) throw ValidationError("Rational: cannot parse '" + std::string(original) + "'");
        digits = std::string(text);
    }
    Rational r(mpz_class(digits.empty() ? std::string("0") : digits, 10));
    r *= pow10(exponent - fraction_digits);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::vector<double> to_doubles(const RationalVec& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(to_double(v));
    return out;
}

RationalVec trim_trailing_zeros(RationalVec values) {
    while (!values.empty() && is_zero(values.back())) values.pop_back();
    return values;
}

RationalVec poly_multiply(const RationalVec& lhs, const RationalVec& rhs) {
    if (lhs.empty() || rhs.empty()) return {};
    RationalVec out(lhs.size() + rhs.size() - 1, Rational(0));
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (is_zero(lhs[i])) continue;
        for (std::size_t j = 0; j < rhs.size(); ++j) out[i + j] += lhs[i] * rhs[j];
    }
    return out;
}

RationalVec poly_add(const RationalVec& lhs, const RationalVec& rhs) {
    RationalVec out(std::max(lhs.size(), rhs.size()), Rational(0));
    for (std::size_t i = 0; i < lhs.size(); ++i) out[i] += lhs[i];
    for (std::size_t i = 0; i < rhs.size(); ++i) out[i] += rhs[i];
    return out;
}

}  // namespace heatlaw
