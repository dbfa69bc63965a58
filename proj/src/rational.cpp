#include "pcspan/rational.hpp"

#include "pcspan/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace pcspan {

namespace {

using boost::multiprecision::mpz_int;

mpz_int parse_integer(std::string_view text, std::string_view whole) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) {
        throw ParseError("malformed rational \"" + std::string(whole) + "\"");
    }
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw ParseError("malformed rational \"" + std::string(whole) + "\"");
        }
    }
    mpz_int value(std::string(text.substr(pos)));
    return negative ? mpz_int(-value) : value;
}

std::int64_t to_int64(const mpz_int& value) {
    if (value > std::numeric_limits<std::int64_t>::max() ||
        value < std::numeric_limits<std::int64_t>::min()) {
        throw ScaleError("integer out of 64-bit range");
    }
    return value.convert_to<std::int64_t>();
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    mpz_int num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
        throw ParseError("malformed rational \"" + std::string(text) + "\"");
    }
    mpz_int den = parse_integer(den_text, text);
    if (den == 0) {
        throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    }
    return Rational(num, den);
}

std::string to_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

int sign(const Rational& value) {
    return value > 0 ? 1 : (value < 0 ? -1 : 0);
}

std::int64_t floor_to_int(const Rational& value) {
    mpz_int num = numerator(value);
    mpz_int den = denominator(value);
    mpz_int q = num / den;
    if (num % den != 0 && num < 0) {
        q -= 1;
    }
    return to_int64(q);
}

std::int64_t ceil_to_int(const Rational& value) {
    return -floor_to_int(-value);
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

Rational from_double(double value) {
    if (!std::isfinite(value)) {
        throw LpError("non-finite value");
    }
    return Rational(value);
}

std::optional<Rational> snap_double(double value, std::int64_t max_den, double tol) {
    if (!std::isfinite(value)) {
        return std::nullopt;
    }
    // Continued-fraction convergents.
    double x = value;
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(x);
        if (std::fabs(a) > 1e15) {
            break;
        }
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t h2 = ai * h1 + h0;
        std::int64_t k2 = ai * k1 + k0;
        if (k2 > max_den) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - value) <= tol) {
            return Rational(h1, k1);
        }
        double frac = x - a;
        if (frac < 1e-18) {
            break;
        }
        x = 1.0 / frac;
    }
    return std::nullopt;
}

Rational pow2(int exponent) {
    Rational result = 1;
    if (exponent >= 0) {
        for (int i = 0; i < exponent; ++i) result *= 2;
    } else {
        for (int i = 0; i < -exponent; ++i) result /= 2;
    }
    return result;
}

}  // namespace pcspan
