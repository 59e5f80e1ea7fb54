#include "lps/rational.hpp"

#include "lps/error.hpp"

#include <cctype>
#include <cmath>

namespace lps {

namespace {

BigInt parse_integer(const std::string& s, const std::string& ctx) {
    if (s.empty()) throw InputError("empty number in " + ctx);
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InputError("bare sign in " + ctx);
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw InputError("invalid digit '" + std::string(1, s[k]) + "' in " + ctx);
    return BigInt(s);
}

} // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InputError("empty number");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_integer(text.substr(0, slash), "'" + text + "'");
        BigInt den = parse_integer(text.substr(slash + 1), "'" + text + "'");
        if (den == 0) throw InputError("zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_integer(text, "'" + text + "'"));
    std::string head = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.empty()) throw InputError("trailing decimal point in '" + text + "'");
    bool neg = !head.empty() && head[0] == '-';
    if (head.empty() || head == "-" || head == "+") head += "0";
    BigInt whole = parse_integer(head, "'" + text + "'");
    BigInt digits = parse_integer(frac, "'" + text + "'");
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r = Rational(abs(whole)) + Rational(digits, den);
    return neg ? -r : r;
}

std::string to_string(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    if (den == 1) return num.str();
    // Emit a finite decimal when possible, a fraction otherwise.
    BigInt d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return num.str() + "/" + den.str();
    int digits = twos > fives ? twos : fives;
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    BigInt scaled = num * (scale / den);
    bool neg = scaled < 0;
    std::string body = BigInt(abs(scaled)).str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(0, std::string(digits + 1 - body.size(), '0'));
    body.insert(body.size() - digits, ".");
    return (neg ? "-" : "") + body;
}

BigInt floor_rat(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    BigInt quot = num / den;
    if (num < 0 && quot * den != num) --quot;
    return quot;
}

BigInt ceil_rat(const Rational& q) { return -floor_rat(-q); }

Rational pow_rat(const Rational& base, long long exp) {
    if (exp < 0) {
        if (base == 0) throw ContractViolation("pow_rat: 0 with negative exponent");
        return pow_rat(Rational(denominator(base), numerator(base)), -exp);
    }
    Rational result = 1;
    Rational b = base;
    unsigned long long e = static_cast<unsigned long long>(exp);
    while (e > 0) {
        if (e & 1ULL) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

Rational pow_rat_big(const Rational& base, const BigInt& exp) {
    if (exp < 0) throw ContractViolation("pow_rat_big: negative exponent");
    Rational result = 1;
    Rational b = base;
    BigInt e = exp;
    while (e > 0) {
        if ((e & 1) != 0) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

long long ceil_log(const Rational& base, const Rational& x) {
    if (base <= 1 || x <= 0) throw ContractViolation("ceil_log: need base > 1, x > 0");
    double est = std::log(to_double(x)) / std::log(to_double(base));
    long long j = std::isfinite(est) ? static_cast<long long>(std::llround(est)) : 0;
    while (pow_rat(base, j) < x) ++j;
    while (j > 0 ? pow_rat(base, j - 1) >= x : pow_rat(base, j - 1) >= x) --j;
    return j;
}

long long floor_log(const Rational& base, const Rational& x) {
    long long j = ceil_log(base, x);
    if (pow_rat(base, j) == x) return j;
    return j - 1;
}

Rational floor_to_multiple(const Rational& q, const Rational& step) {
    if (step <= 0) throw ContractViolation("floor_to_multiple: step must be positive");
    return Rational(floor_rat(q / step)) * step;
}

Rational ceil_to_multiple(const Rational& q, const Rational& step) {
    if (step <= 0) throw ContractViolation("ceil_to_multiple: step must be positive");
    return Rational(ceil_rat(q / step)) * step;
}

} // namespace lps
