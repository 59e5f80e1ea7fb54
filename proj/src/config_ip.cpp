#include "lps/config_ip.hpp"

#include "lps/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>

namespace lps {

namespace {

long long checked_ll(const BigInt& v, const char* what) {
    static const BigInt hi = BigInt(std::numeric_limits<long long>::max()) / 4;
    if (v < 0 || v > hi) throw ResourceCapError(std::string(what) + ": unit value out of range");
    return v.convert_to<long long>();
}

long long total_large_units(const BRInput& input) {
    long long t = 0;
    for (const auto& j : input.large) t += j.units;
    return t;
}

} // namespace

std::vector<std::string> check_br_invariants(const BRInput& input, const Rational& gamma) {
    std::vector<std::string> bad;
    if (input.mu <= 0) bad.push_back("mu must be positive");
    if (input.w_lo < input.mu) bad.push_back("w_lo below mu");
    if (input.w_hi < input.w_lo) bad.push_back("empty weight window");
    if (gamma > 0 && input.w_hi > gamma * input.w_lo)
        bad.push_back("window ratio exceeds gamma");
    const Rational floor_large = input.eps * input.w_lo;
    for (const auto& job : input.large)
        if (Rational(job.units) * input.mu < floor_large) {
            bad.push_back("large job below eps*w_lo");
            break;
        }
    if (!input.machines.empty() && gamma > 0) {
        Rational s_min = input.machines.front().speed;
        Rational s_max = s_min;
        for (const auto& m : input.machines) {
            s_min = std::min(s_min, m.speed);
            s_max = std::max(s_max, m.speed);
        }
        double b = beta_value(input.dir, input.p, gamma);
        if (to_double(s_max / s_min) > b) bad.push_back("speed ratio exceeds beta");
    }
    return bad;
}

ConfigSet enumerate_configurations(const BRInput& input) {
    if (input.machines.empty())
        throw ContractViolation("enumerate_configurations: no machines");
    if (input.mu <= 0 || input.w_lo < input.mu || input.w_hi < input.w_lo)
        throw ContractViolation("enumerate_configurations: bad weight window");

    ConfigSet cs;
    // Large size classes, descending by size.
    {
        std::map<long long, std::vector<int>, std::greater<long long>> by_size;
        const Rational floor_large = input.eps * input.w_lo;
        for (std::size_t i = 0; i < input.large.size(); ++i) {
            const auto& job = input.large[i];
            if (job.units <= 0)
                throw ContractViolation("enumerate_configurations: large job without units");
            if (Rational(job.units) * input.mu < floor_large)
                throw ContractViolation("enumerate_configurations: large job below eps*w_lo");
            by_size[job.units].push_back(static_cast<int>(i));
        }
        for (auto& [units, members] : by_size) {
            cs.h_units.push_back(units);
            cs.n_h.push_back(static_cast<int>(members.size()));
            cs.h_members.push_back(members);
        }
    }
    // Speed classes in order of first occurrence.
    cs.class_of_machine.resize(input.machines.size());
    for (std::size_t i = 0; i < input.machines.size(); ++i) {
        int cls = -1;
        for (std::size_t k = 0; k < cs.classes.size(); ++k)
            if (cs.classes[k].sigma == input.machines[i].speed) { cls = static_cast<int>(k); break; }
        if (cls < 0) {
            cls = static_cast<int>(cs.classes.size());
            cs.classes.push_back(SpeedClass{input.machines[i].speed, 0});
        }
        cs.classes[cls].count += 1;
        cs.class_of_machine[i] = cls;
    }

    const Rational base = 1 + input.eps;
    const bool minimize = input.dir == Direction::Minimize;
    long long j_lo = minimize ? ceil_log(base, input.w_lo) : floor_log(base, input.w_lo);
    long long j_hi = minimize ? ceil_log(base, input.w_hi) : floor_log(base, input.w_hi);

    struct WCand {
        long long exp;
        Rational w;
        long long w_tilde;
    };
    std::vector<WCand> wcands;
    long long max_budget = 0;
    for (long long j = j_lo; j <= j_hi; ++j) {
        Rational w = pow_rat(base, j);
        BigInt wt = minimize ? floor_rat(w / input.mu) : ceil_rat(w / input.mu);
        long long wt_ll = checked_ll(wt, "enumerate_configurations");
        if (input.w_tilde_cap >= 0 && wt_ll > input.w_tilde_cap) continue;
        wcands.push_back(WCand{j, w, wt_ll});
        max_budget = std::max(max_budget, wt_ll);
    }
    if (!minimize) {
        // Large totals are capped by the window top, not by w~.
        BigInt cap = floor_rat(input.w_hi / input.mu);
        long long cap_ll = input.w_tilde_cap >= 0
            ? std::min(checked_ll(cap, "enumerate_configurations"), input.w_tilde_cap)
            : checked_ll(cap, "enumerate_configurations");
        max_budget = std::max(max_budget, cap_ll);
    }

    // Master list of count vectors with sum h*n <= max_budget.
    struct CountVec {
        std::vector<int> counts;
        long long large_units;
    };
    std::vector<CountVec> cvs;
    {
        std::vector<int> counts(cs.h_units.size(), 0);
        long long cap = input.config_cap;
        std::function<void(std::size_t, long long)> rec = [&](std::size_t h, long long used) {
            if (h == cs.h_units.size()) {
                cvs.push_back(CountVec{counts, used});
                if (static_cast<long long>(cvs.size()) > cap)
                    throw ResourceCapError("configuration cap exceeded while enumerating counts");
                return;
            }
            long long sz = cs.h_units[h];
            int limit = cs.n_h[h];
            for (int c = 0; c <= limit && used + sz * c <= max_budget; ++c) {
                counts[h] = c;
                rec(h + 1, used + sz * c);
            }
            counts[h] = 0;
        };
        rec(0, 0);
    }
    std::stable_sort(cvs.begin(), cvs.end(),
                     [](const CountVec& a, const CountVec& b) { return a.large_units < b.large_units; });

    long long max_large = minimize ? 0 : max_budget;
    cs.by_class.resize(cs.classes.size());
    for (const auto& wc : wcands) {
        long long budget = minimize ? wc.w_tilde : max_large;
        for (std::size_t cls = 0; cls < cs.classes.size(); ++cls) {
            double cost = std::pow(to_double(wc.w / cs.classes[cls].sigma), input.p);
            for (const auto& cv : cvs) {
                if (cv.large_units > budget) break; // sorted ascending
                Configuration cfg;
                cfg.counts = cv.counts;
                cfg.large_units = cv.large_units;
                cfg.w_exp = wc.exp;
                cfg.w = wc.w;
                cfg.w_tilde_units = wc.w_tilde;
                cfg.gap_units = minimize ? wc.w_tilde - cv.large_units
                                         : std::max(0LL, wc.w_tilde - cv.large_units);
                cfg.speed_class = static_cast<int>(cls);
                cfg.cost = cost;
                cs.by_class[cls].push_back(static_cast<int>(cs.configs.size()));
                cs.configs.push_back(std::move(cfg));
                if (static_cast<long long>(cs.configs.size()) > input.config_cap)
                    throw ResourceCapError("configuration cap exceeded");
            }
        }
    }
    return cs;
}

namespace {

// Frontier per DP state: entries sorted by gap ascending with strictly
// ascending cost; both directions keep the same staircase shape.
struct Staircase {
    std::vector<int> items;
};

struct DpEntry {
    long long g;
    double cost;
    int prev;   // entry index in the previous layer, -1 at layer 0
    int config; // config placed on this layer's machine, -1 at layer 0
};

bool staircase_insert(Staircase& st, std::vector<DpEntry>& arena, DpEntry cand, Direction dir,
                      int& out_index) {
    if (dir == Direction::Minimize) {
        for (int idx : st.items) {
            const auto& e = arena[idx];
            if (e.g >= cand.g && e.cost <= cand.cost) return false; // dominated
        }
        std::erase_if(st.items, [&](int idx) {
            const auto& e = arena[idx];
            return e.g <= cand.g && e.cost >= cand.cost;
        });
    } else {
        for (int idx : st.items) {
            const auto& e = arena[idx];
            if (e.g <= cand.g && e.cost >= cand.cost) return false;
        }
        std::erase_if(st.items, [&](int idx) {
            const auto& e = arena[idx];
            return e.g >= cand.g && e.cost <= cand.cost;
        });
    }
    out_index = static_cast<int>(arena.size());
    arena.push_back(cand);
    auto pos = std::lower_bound(st.items.begin(), st.items.end(), out_index, [&](int a, int b) {
        return arena[a].g < arena[b].g;
    });
    st.items.insert(pos, out_index);
    return true;
}

} // namespace

std::vector<ArcProfile> enumerate_profiles(const BRInput& input, const ConfigSet& cfg) {
    const std::size_t ell = input.machines.size();
    if (ell == 0) {
        ArcProfile skip;
        skip.u = total_large_units(input);
        skip.g = 0;
        skip.cost = 0;
        return {skip};
    }

    // Mixed-radix encoding of remaining large counts.
    const std::size_t H = cfg.h_units.size();
    std::vector<long long> radix(H, 1);
    long long states = 1;
    for (std::size_t h = 0; h < H; ++h) {
        radix[h] = states;
        states *= cfg.n_h[h] + 1;
        if (states > 100'000'000)
            throw ResourceCapError("enumerate_profiles: state space too large");
    }
    auto encode = [&](const std::vector<int>& counts) {
        long long key = 0;
        for (std::size_t h = 0; h < H; ++h) key += counts[h] * radix[h];
        return key;
    };
    auto decode = [&](long long key) {
        std::vector<int> counts(H);
        for (std::size_t h = 0; h < H; ++h)
            counts[h] = static_cast<int>(key / radix[h] % (cfg.n_h[h] + 1));
        return counts;
    };

    std::vector<std::vector<DpEntry>> arenas(ell + 1);
    std::vector<std::map<long long, Staircase>> layers(ell + 1);
    {
        DpEntry root{0, 0.0, -1, -1};
        arenas[0].push_back(root);
        layers[0][encode(cfg.n_h)].items.push_back(0);
    }

    long long work = 0;
    for (std::size_t m = 0; m < ell; ++m) {
        int cls = cfg.class_of_machine[m];
        const auto& ids = cfg.by_class[cls];
        for (const auto& [key, stair] : layers[m]) {
            std::vector<int> remaining = decode(key);
            for (int cid : ids) {
                const auto& conf = cfg.configs[cid];
                bool fits = true;
                for (std::size_t h = 0; h < H; ++h)
                    if (conf.counts[h] > remaining[h]) { fits = false; break; }
                if (!fits) continue;
                long long nkey = key;
                for (std::size_t h = 0; h < H; ++h) nkey -= conf.counts[h] * radix[h];
                for (int eidx : stair.items) {
                    const auto& e = arenas[m][eidx];
                    DpEntry cand{e.g + conf.gap_units, e.cost + conf.cost, eidx, cid};
                    int out;
                    staircase_insert(layers[m + 1][nkey], arenas[m + 1], cand, input.dir, out);
                    if (++work > input.config_cap * 8)
                        throw ResourceCapError("enumerate_profiles: work cap exceeded");
                }
            }
        }
    }

    std::vector<ArcProfile> profiles;
    for (const auto& [key, stair] : layers[ell]) {
        std::vector<int> remaining = decode(key);
        long long u = 0;
        for (std::size_t h = 0; h < H; ++h) u += cfg.h_units[h] * remaining[h];
        for (int eidx : stair.items) {
            ArcProfile p;
            p.u = u;
            p.g = arenas[ell][eidx].g;
            p.cost = arenas[ell][eidx].cost;
            p.machine_config.resize(ell);
            int cur = eidx;
            for (std::size_t m = ell; m-- > 0;) {
                p.machine_config[m] = arenas[m + 1][cur].config;
                cur = arenas[m + 1][cur].prev;
            }
            profiles.push_back(std::move(p));
        }
    }

    // Per-u staircase prune across states, then a deterministic order.
    std::sort(profiles.begin(), profiles.end(), [](const ArcProfile& a, const ArcProfile& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.g != b.g) return a.g < b.g;
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.machine_config < b.machine_config;
    });
    std::vector<ArcProfile> pruned;
    std::size_t i = 0;
    while (i < profiles.size()) {
        std::size_t j = i;
        while (j < profiles.size() && profiles[j].u == profiles[i].u) ++j;
        // same-u block: keep the (g, cost) frontier
        std::vector<char> dead(j - i, 0);
        for (std::size_t a = i; a < j; ++a) {
            if (dead[a - i]) continue;
            for (std::size_t b = i; b < j; ++b) {
                if (a == b || dead[b - i]) continue;
                const auto& pa = profiles[a];
                const auto& pb = profiles[b];
                bool dom = input.dir == Direction::Minimize
                               ? (pa.cost <= pb.cost && pa.g >= pb.g)
                               : (pa.cost >= pb.cost && pa.g <= pb.g);
                if (dom && (pa.cost != pb.cost || pa.g != pb.g || a < b)) dead[b - i] = 1;
            }
        }
        for (std::size_t a = i; a < j; ++a)
            if (!dead[a - i]) pruned.push_back(std::move(profiles[a]));
        i = j;
    }
    return pruned;
}

namespace {

IPSolution solution_from_profile(const BRInput& input, const ConfigSet& cfg,
                                 const ArcProfile& profile) {
    IPSolution sol;
    sol.machine_config = profile.machine_config;
    sol.x.assign(cfg.configs.size(), 0);
    sol.y.assign(cfg.h_units.size(), 0);
    std::vector<int> used(cfg.h_units.size(), 0);
    for (int cid : profile.machine_config) {
        sol.x[cid] += 1;
        const auto& conf = cfg.configs[cid];
        for (std::size_t h = 0; h < cfg.h_units.size(); ++h) used[h] += conf.counts[h];
    }
    for (std::size_t h = 0; h < cfg.h_units.size(); ++h) sol.y[h] = cfg.n_h[h] - used[h];
    sol.u_units = profile.u;
    sol.gap_units = profile.g;
    sol.objective = profile.cost;
    verify_ip_solution(input, cfg, sol);
    return sol;
}

} // namespace

std::optional<IPSolution> solve_ip_min(const BRInput& input, const ConfigSet& cfg) {
    if (input.dir != Direction::Minimize)
        throw ContractViolation("solve_ip_min: direction must be Minimize");
    auto profiles = enumerate_profiles(input, cfg);
    const ArcProfile* best = nullptr;
    for (const auto& p : profiles) {
        if (p.u > input.a_units) continue;
        if (p.u - p.g > input.a_units - input.b_units) continue; // constraint (3)
        if (!best || p.cost < best->cost) best = &p;
    }
    if (!best) return std::nullopt;
    return solution_from_profile(input, cfg, *best);
}

std::optional<IPSolution> solve_ip_max(const BRInput& input, const ConfigSet& cfg) {
    if (input.dir != Direction::Maximize)
        throw ContractViolation("solve_ip_max: direction must be Maximize");
    auto profiles = enumerate_profiles(input, cfg);
    const ArcProfile* best = nullptr;
    for (const auto& p : profiles) {
        if (p.g > input.b_units) continue;                        // constraint (9)
        if (p.u - p.g < input.a_units - input.b_units) continue;  // constraint (8)
        if (!best || p.cost > best->cost) best = &p;
    }
    if (!best) return std::nullopt;
    return solution_from_profile(input, cfg, *best);
}

void verify_ip_solution(const BRInput& input, const ConfigSet& cfg, const IPSolution& sol) {
    auto fail = [](const std::string& what) {
        throw ContractViolation("IP solution violates " + what);
    };
    const std::size_t H = cfg.h_units.size();
    if (sol.machine_config.size() != input.machines.size()) fail("machine coverage");
    if (sol.y.size() != H) fail("y dimension");

    const bool minimize = input.dir == Direction::Minimize;
    std::vector<BigInt> used(H, BigInt(0));
    BigInt gap_total = 0;
    for (std::size_t m = 0; m < sol.machine_config.size(); ++m) {
        const auto& conf = cfg.configs.at(sol.machine_config[m]);
        if (conf.speed_class != cfg.class_of_machine[m]) fail("speed-class constraint (1)/(6)");
        // Recompute w~ and the gap from w with exact arithmetic.
        Rational w = pow_rat(1 + input.eps, conf.w_exp);
        if (w != conf.w) fail("configuration weight bookkeeping");
        BigInt wt = minimize ? floor_rat(w / input.mu) : ceil_rat(w / input.mu);
        if (wt != conf.w_tilde_units) fail("w~ bookkeeping");
        BigInt large = 0;
        for (std::size_t h = 0; h < H; ++h) {
            large += BigInt(cfg.h_units[h]) * conf.counts[h];
            used[h] += conf.counts[h];
        }
        if (large != conf.large_units) fail("large-units bookkeeping");
        if (minimize) {
            if (large > wt) fail("configuration capacity (large > w~)");
            gap_total += wt - large;
        } else {
            BigInt cap = floor_rat(input.w_hi / input.mu);
            if (large > cap) fail("configuration capacity (large > w_hi)");
            gap_total += wt - large > 0 ? wt - large : BigInt(0);
        }
    }
    BigInt u = 0;
    for (std::size_t h = 0; h < H; ++h) {
        if (sol.y[h] < 0) fail("non-negativity (5)/(10)");
        if (used[h] + sol.y[h] != cfg.n_h[h]) fail("job conservation (2)/(7)");
        u += BigInt(cfg.h_units[h]) * sol.y[h];
    }
    if (u != sol.u_units) fail("unscheduled bookkeeping");
    if (gap_total != sol.gap_units) fail("gap bookkeeping");
    const BigInt A = input.a_units, B = input.b_units;
    if (minimize) {
        if (u - gap_total > A - B) fail("unscheduled-size constraint (3)");
        if (u > A) fail("unscheduled-size constraint (4)");
    } else {
        if (u - gap_total < A - B) fail("unscheduled-size constraint (8)");
        if (gap_total > B) fail("gap-coverage constraint (9)");
    }
    // Objective re-sum (double path, tolerant to accumulation order).
    double re = 0;
    for (int cid : sol.machine_config) re += cfg.configs[cid].cost;
    if (std::abs(re - sol.objective) > 1e-9 * (1 + std::abs(re))) fail("objective value");
}

BRSolution assign_fractional_next_fit(const BRInput& input, const ConfigSet& cfg,
                                      const IPSolution& ip) {
    const std::size_t ell = input.machines.size();
    BRSolution sol;
    sol.machine_config = ip.machine_config;
    sol.large_jobs.resize(ell);
    sol.small_pieces.resize(ell);
    sol.weight_units.assign(ell, 0);
    sol.objective = ip.objective;

    // Large jobs: per size class in input order, machines in index order.
    std::vector<std::size_t> cursor(cfg.h_units.size(), 0);
    for (std::size_t m = 0; m < ell; ++m) {
        const auto& conf = cfg.configs[ip.machine_config[m]];
        for (std::size_t h = 0; h < cfg.h_units.size(); ++h) {
            for (int c = 0; c < conf.counts[h]; ++c) {
                sol.large_jobs[m].push_back(cfg.h_members[h][cursor[h]++]);
            }
        }
        sol.weight_units[m] = conf.large_units;
    }
    for (std::size_t h = 0; h < cfg.h_units.size(); ++h)
        for (std::size_t k = cursor[h]; k < cfg.h_members[h].size(); ++k)
            sol.unscheduled_large.push_back(cfg.h_members[h][k]);
    std::sort(sol.unscheduled_large.begin(), sol.unscheduled_large.end());

    // Small jobs: next-fit with splits exactly at gap boundaries.
    std::deque<SmallPiece> pool;
    for (std::size_t s = 0; s < input.smalls.size(); ++s) {
        if (input.smalls[s].units < 0)
            throw ContractViolation("next_fit: negative small size");
        if (input.smalls[s].units > 0)
            pool.push_back(SmallPiece{static_cast<int>(s), input.smalls[s].units});
    }
    for (std::size_t m = 0; m < ell; ++m) {
        long long need = cfg.configs[ip.machine_config[m]].gap_units;
        while (need > 0 && !pool.empty()) {
            auto& front = pool.front();
            long long take = std::min(front.units, need);
            sol.small_pieces[m].push_back(SmallPiece{front.job_pos, take});
            sol.weight_units[m] += take;
            need -= take;
            front.units -= take;
            if (front.units == 0) pool.pop_front();
        }
    }
    for (const auto& piece : pool) sol.unscheduled_small.push_back(piece);
    return sol;
}

void integralize(const BRInput& input, BRSolution& sol) {
    if (sol.integral) return;
    const std::size_t ell = sol.small_pieces.size();
    // Gather pieces per small job in machine order.
    std::map<int, std::vector<std::pair<std::size_t, long long>>> by_job;
    for (std::size_t m = 0; m < ell; ++m)
        for (const auto& piece : sol.small_pieces[m])
            by_job[piece.job_pos].emplace_back(m, piece.units);
    std::map<int, long long> tail; // unscheduled remainder per job
    for (const auto& piece : sol.unscheduled_small) tail[piece.job_pos] += piece.units;

    std::vector<std::vector<SmallPiece>> rebuilt(ell);
    std::vector<SmallPiece> unscheduled;
    const bool minimize = input.dir == Direction::Minimize;
    std::map<int, long long> handled;
    for (auto& [job, pieces] : by_job) {
        long long whole = input.smalls[job].units;
        long long placed = 0;
        for (auto& [m, units] : pieces) placed += units;
        bool split = pieces.size() > 1 || placed < whole;
        if (!split) {
            rebuilt[pieces[0].first].push_back(SmallPiece{job, whole});
            continue;
        }
        if (minimize) {
            // Whole job moves to the first machine hosting a fraction.
            std::size_t first = pieces[0].first;
            for (auto& [m, units] : pieces) sol.weight_units[m] -= units;
            sol.weight_units[first] += whole;
            rebuilt[first].push_back(SmallPiece{job, whole});
        } else {
            // Fractional parts are dropped; the job goes back to unscheduled.
            for (auto& [m, units] : pieces) sol.weight_units[m] -= units;
            unscheduled.push_back(SmallPiece{job, whole});
        }
        handled[job] = whole;
    }
    // Jobs never touched by machines keep their unscheduled remainders.
    for (auto& [job, units] : tail)
        if (!handled.count(job)) unscheduled.push_back(SmallPiece{job, units});
    sol.small_pieces = std::move(rebuilt);
    std::sort(unscheduled.begin(), unscheduled.end(),
              [](const SmallPiece& a, const SmallPiece& b) { return a.job_pos < b.job_pos; });
    sol.unscheduled_small = std::move(unscheduled);
    sol.integral = true;
}

std::optional<BRSolution> ibr_eptas(const BRInput& input) {
    if (input.machines.empty()) {
        // Degenerate range: value 0 iff the flow balances exactly.
        if (input.b_units + total_large_units(input) != input.a_units) return std::nullopt;
        BRSolution sol;
        sol.objective = 0;
        sol.integral = true;
        for (std::size_t i = 0; i < input.large.size(); ++i)
            sol.unscheduled_large.push_back(static_cast<int>(i));
        for (std::size_t s = 0; s < input.smalls.size(); ++s)
            if (input.smalls[s].units > 0)
                sol.unscheduled_small.push_back(
                    SmallPiece{static_cast<int>(s), input.smalls[s].units});
        return sol;
    }
    ConfigSet cfg = enumerate_configurations(input);
    auto ip = input.dir == Direction::Minimize ? solve_ip_min(input, cfg)
                                               : solve_ip_max(input, cfg);
    if (!ip) return std::nullopt;
    BRSolution sol = assign_fractional_next_fit(input, cfg, *ip);
    integralize(input, sol);
    return sol;
}

double realized_objective(const BRInput& input, const BRSolution& sol) {
    double total = 0;
    for (std::size_t m = 0; m < sol.weight_units.size(); ++m) {
        if (sol.weight_units[m] <= 0) continue;
        Rational w = Rational(sol.weight_units[m]) * input.mu;
        total += std::pow(to_double(w / input.machines[m].speed), input.p);
    }
    return total;
}

} // namespace lps
