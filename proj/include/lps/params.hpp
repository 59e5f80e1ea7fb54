#pragma once

#include "lps/instance.hpp"

namespace lps {

/// Derived scalars of the scheme. gamma can be astronomically large, hence
/// the arbitrary-precision types.
struct SchemeParams {
    Rational eps;
    Rational p;
    Direction direction = Direction::Minimize;
    BigInt rho;          // number of shift iterations actually used
    BigInt rho_default;  // (1/eps)^(2*ceil(p)+1)
    Rational gamma;      // (1/eps)^(2*rho - 1)
    Rational mu;         // arithmetic rounding unit; set after rounding
    Rational p_min;      // extreme sizes of the working instance
    Rational p_max;
};

/// alpha(delta): delta/2 for minimization, ((1+delta)^p - 1)^(1/p) for
/// maximization. Always <= delta. Requires 0 < delta <= eps.
double alpha(const Rational& delta, const ProblemSpec& spec);

/// Speed-ratio bound paired with gamma: 2*gamma for minimization,
/// 1/alpha(1/gamma) for maximization. Diagnostics only.
double beta(const ProblemSpec& spec, const Rational& gamma);
double beta_value(Direction dir, double p, const Rational& gamma);

/// rho = (1/eps)^(2*ceil(p)+1); equals 1/eps^3 for p < 1.
BigInt rho(const Rational& eps, const Rational& p);

/// gamma = (1/eps)^(2*rho - 1), exact.
Rational gamma_of(const Rational& eps, const BigInt& rho);
Rational gamma(const Rational& eps, const Rational& p);

/// Assembles rho (honoring an override; 0 means none) and gamma.
SchemeParams make_params(const ProblemSpec& spec, const BigInt& rho_override = 0);

} // namespace lps
