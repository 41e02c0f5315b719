#include "pou/rational.hpp"

#include "pou/errors.hpp"

#include <cctype>

namespace pou {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text)) {
            throw ParseError("not a rational: \"" + text + "\"");
        }
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) {
        throw ParseError("not a rational: \"" + text + "\"");
    }
    BigInt q(den);
    if (q <= 0) {
        throw ParseError("denominator must be positive in \"" + text + "\"");
    }
    return Rational(BigInt(num), q);
}

std::string format_rational(const Rational& value) {
    const BigInt num = numerator(value);
    const BigInt den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace pou
