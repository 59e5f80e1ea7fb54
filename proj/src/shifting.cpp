#include "lps/shifting.hpp"

#include "lps/error.hpp"

#include <algorithm>

namespace lps {

std::vector<IllegalInterval> illegal_intervals(const BigInt& eta, const BigInt& rho,
                                               const Rational& eps, const Rational& p_min,
                                               const Rational& total_size) {
    if (eta < 0 || eta >= rho) throw ContractViolation("illegal_intervals: eta out of [0, rho)");
    if (p_min <= 0) throw ContractViolation("illegal_intervals: p_min must be positive");
    const Rational inv_eps(denominator(eps), numerator(eps));

    std::vector<IllegalInterval> out;
    // a_0 = p_min * inv_eps^eta, computed incrementally with an early exit so
    // huge eta never materializes a huge power.
    Rational a = p_min;
    const Rational cap = total_size / inv_eps; // need b = a*inv_eps <= total
    for (BigInt i = 0; i < eta; ++i) {
        if (a > cap) return out;
        a *= inv_eps;
    }
    const Rational step = pow_rat_big(inv_eps, rho); // could be huge; used at most log times
    for (long long ell = 0;; ++ell) {
        Rational b = a * inv_eps;
        if (b > total_size) break;
        out.push_back(IllegalInterval{a, b, ell});
        if (a > total_size / step) break; // next a would overshoot
        a *= step;
    }
    return out;
}

Rational modified_weight(const Rational& x, const std::vector<IllegalInterval>& intervals,
                         Direction dir) {
    if (x < 0) throw ContractViolation("modified_weight: negative weight");
    for (const auto& iv : intervals) {
        if (x > iv.a && x < iv.b)
            return dir == Direction::Minimize ? 2 * iv.b : Rational(0);
    }
    return x;
}

std::vector<IllegalInterval> filter_parity(const std::vector<IllegalInterval>& intervals,
                                           Parity phi) {
    std::vector<IllegalInterval> out;
    for (const auto& iv : intervals) {
        bool even = iv.ell % 2 == 0;
        if ((phi == Parity::Even) == even) out.push_back(iv);
    }
    return out;
}

ValidIntervals valid_intervals(const std::vector<IllegalInterval>& kept, const Rational& p_min,
                               const Rational& total_size, const Rational& gamma) {
    ValidIntervals omega;
    Rational start = p_min;
    for (const auto& iv : kept) {
        if (iv.a < start) throw ContractViolation("valid_intervals: intervals out of order");
        omega.omegas.push_back(start);
        omega.omegas.push_back(iv.a);
        start = iv.b;
    }
    Rational top = total_size;
    if (!kept.empty()) top = std::max(total_size, Rational(start * gamma));
    if (top < start) throw ContractViolation("valid_intervals: empty top interval");
    omega.omegas.push_back(start);
    omega.omegas.push_back(top);
    return omega;
}

std::vector<int> associate_jobs(const ValidIntervals& omega, const std::vector<Rational>& sizes) {
    std::vector<int> assoc(sizes.size(), -1);
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] <= 0) throw ContractViolation("associate_jobs: non-positive size");
        int t = -1;
        for (int i = 0; i < omega.count(); ++i) {
            if (sizes[j] <= omega.hi(i)) { t = i; break; }
        }
        if (t < 0)
            throw ContractViolation("associate_jobs: size exceeds the top valid endpoint");
        assoc[j] = t;
    }
    return assoc;
}

} // namespace lps
