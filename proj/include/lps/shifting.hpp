#pragma once

#include "lps/params.hpp"

#include <vector>

namespace lps {

/// Forbidden machine-weight range (a, b), open at both ends, with b/a = 1/eps.
struct IllegalInterval {
    Rational a;
    Rational b;
    long long ell = 0; // index within the eta-iteration family
};

enum class Parity { Even, Odd };

struct ShiftChoice {
    BigInt eta;   // in [0, rho)
    Parity phi = Parity::Even;
};

/// Illegal intervals of iteration eta:
/// (p_min*(1/eps)^(eta+l*rho), p_min*(1/eps)^(eta+l*rho+1)) while b <= total.
std::vector<IllegalInterval> illegal_intervals(const BigInt& eta, const BigInt& rho,
                                               const Rational& eps, const Rational& p_min,
                                               const Rational& total_size);

/// g(x): x outside every interval; inside one, 2b for minimization and 0 for
/// maximization. Endpoints are legal (intervals are open).
Rational modified_weight(const Rational& x, const std::vector<IllegalInterval>& intervals,
                         Direction dir);

/// Keeps intervals whose index has the given parity.
std::vector<IllegalInterval> filter_parity(const std::vector<IllegalInterval>& intervals,
                                           Parity phi);

/// Closed valid intervals [omega_0, omega_1], [omega_2, omega_3], ...
struct ValidIntervals {
    std::vector<Rational> omegas; // even count, strictly increasing

    int count() const { return static_cast<int>(omegas.size() / 2); }
    const Rational& lo(int t) const { return omegas[2 * t]; }
    const Rational& hi(int t) const { return omegas[2 * t + 1]; }
};

/// Complements the kept illegal intervals over [p_min, top] where top is
/// max(total, b_last*gamma) when intervals were kept and total otherwise.
ValidIntervals valid_intervals(const std::vector<IllegalInterval>& kept, const Rational& p_min,
                               const Rational& total_size, const Rational& gamma);

/// Maps each size to the first valid interval whose upper endpoint reaches
/// it. Sizes must lie in (0, top].
std::vector<int> associate_jobs(const ValidIntervals& omega, const std::vector<Rational>& sizes);

} // namespace lps
