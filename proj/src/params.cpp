#include "lps/params.hpp"

#include "lps/error.hpp"

#include <cmath>

namespace lps {

double alpha(const Rational& delta, const ProblemSpec& spec) {
    if (delta <= 0 || delta > spec.eps)
        throw ContractViolation("alpha: need 0 < delta <= eps");
    if (spec.direction == Direction::Minimize) return to_double(delta) / 2.0;
    double p = spec.p_double();
    double d = to_double(delta);
    return std::pow(std::pow(1.0 + d, p) - 1.0, 1.0 / p);
}

double beta_value(Direction dir, double p, const Rational& gamma) {
    if (dir == Direction::Minimize) return 2.0 * to_double(gamma);
    // 1/alpha(1/gamma) computed in log space so huge gamma does not overflow.
    double log_delta = -std::log(to_double(gamma));
    double d = std::exp(log_delta);
    double a;
    if (std::isfinite(d) && d > 1e-12) {
        a = std::pow(std::pow(1.0 + d, p) - 1.0, 1.0 / p);
    } else {
        // (1+d)^p - 1 ~ p*d for tiny d
        a = std::exp((std::log(p) + log_delta) / p);
    }
    return 1.0 / a;
}

double beta(const ProblemSpec& spec, const Rational& gamma) {
    if (gamma < Rational(denominator(spec.eps), numerator(spec.eps)))
        throw ContractViolation("beta: gamma must be at least 1/eps");
    return beta_value(spec.direction, spec.p_double(), gamma);
}

BigInt rho(const Rational& eps, const Rational& p) {
    if (eps <= 0 || eps > Rational(1, 2)) throw ContractViolation("rho: eps out of range");
    if (numerator(eps) != 1) throw ContractViolation("rho: eps must be normalized to 1/k");
    BigInt inv_eps = denominator(eps);
    BigInt e = 2 * ceil_rat(p) + 1;
    BigInt result = 1;
    for (BigInt i = 0; i < e; ++i) result *= inv_eps;
    return result;
}

Rational gamma_of(const Rational& eps, const BigInt& rho) {
    if (rho < 1) throw ContractViolation("gamma: rho must be >= 1");
    Rational inv_eps = Rational(denominator(eps), numerator(eps));
    return pow_rat_big(inv_eps, 2 * rho - 1);
}

Rational gamma(const Rational& eps, const Rational& p) { return gamma_of(eps, rho(eps, p)); }

SchemeParams make_params(const ProblemSpec& spec, const BigInt& rho_override) {
    SchemeParams params;
    params.eps = spec.eps;
    params.p = spec.p;
    params.direction = spec.direction;
    params.rho_default = rho(spec.eps, spec.p);
    params.rho = rho_override > 0 ? rho_override : params.rho_default;
    params.gamma = gamma_of(spec.eps, params.rho);
    return params;
}

} // namespace lps
