#include "morsekit/rational.hpp"

#include "morsekit/errors.hpp"

#include <sstream>

namespace morsekit {

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // trim
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty rational literal");
    s = s.substr(b, e - b + 1);

    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(s));
        }
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw ParseError("malformed rational '" + text + "'");
        BigInt d(den);
        if (d == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(BigInt(num), d);
    } catch (const std::runtime_error& err) {
        throw ParseError("cannot parse rational '" + text + "': " + err.what());
    }
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream out;
    out << numerator(q);
    if (denominator(q) != 1) out << '/' << denominator(q);
    return out.str();
}

}  // namespace morsekit
