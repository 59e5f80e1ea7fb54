#pragma once

#include "lps/instance.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lps::testing {

inline Instance make_instance(const std::vector<long long>& sizes,
                              const std::vector<long long>& speeds, const Rational& p,
                              Direction dir, const Rational& eps = Rational(1, 2)) {
    Instance inst;
    inst.spec = make_spec(p, dir, eps);
    for (std::size_t i = 0; i < sizes.size(); ++i)
        inst.jobs.push_back(Job{"j" + std::to_string(i), Rational(sizes[i])});
    for (std::size_t i = 0; i < speeds.size(); ++i)
        inst.machines.push_back(Machine{"m" + std::to_string(i), Rational(speeds[i])});
    return inst;
}

inline Instance make_instance_rat(const std::vector<Rational>& sizes,
                                  const std::vector<Rational>& speeds, const Rational& p,
                                  Direction dir, const Rational& eps = Rational(1, 2)) {
    Instance inst;
    inst.spec = make_spec(p, dir, eps);
    for (std::size_t i = 0; i < sizes.size(); ++i)
        inst.jobs.push_back(Job{"j" + std::to_string(i), sizes[i]});
    for (std::size_t i = 0; i < speeds.size(); ++i)
        inst.machines.push_back(Machine{"m" + std::to_string(i), speeds[i]});
    return inst;
}

// Deterministic small-instance generator for property tests.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : engine_(seed) {}
    long long range(long long lo, long long hi) {
        std::uint64_t n = static_cast<std::uint64_t>(hi - lo + 1);
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
        std::uint64_t v;
        do { v = engine_(); } while (v >= limit);
        return lo + static_cast<long long>(v % n);
    }

private:
    std::mt19937_64 engine_;
};

inline Instance random_instance(TestRng& rng, int max_n, int max_m, const Rational& p,
                                Direction dir, const Rational& eps = Rational(1, 2)) {
    int n = static_cast<int>(rng.range(1, max_n));
    int m = static_cast<int>(rng.range(1, max_m));
    std::vector<long long> sizes, speeds;
    for (int i = 0; i < n; ++i) sizes.push_back(rng.range(1, 50));
    for (int i = 0; i < m; ++i) speeds.push_back(rng.range(1, 6));
    return make_instance(sizes, speeds, p, dir, eps);
}

} // namespace lps::testing
