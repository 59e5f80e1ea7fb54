#include "lps/interval_dp.hpp"

#include "lps/error.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>

namespace lps {

LayeredGraph::LayeredGraph(const WorkingInstance& wi, ValidIntervals omega,
                           const std::vector<int>& assoc, DpOptions opts)
    : wi_(&wi), omega_(std::move(omega)), opts_(std::move(opts)) {
    layers_.resize(omega_.count());
    for (int t = 0; t < omega_.count(); ++t) {
        layers_[t].w_lo = omega_.lo(t);
        layers_[t].w_hi = omega_.hi(t);
    }
    for (std::size_t j = 0; j < assoc.size(); ++j) {
        layers_.at(assoc[j]).jobs.push_back(static_cast<int>(j));
        layers_[assoc[j]].total_units += wi.job_units[j];
    }
    // Configurations heavier than any realizable weight are useless; the
    // up-rounded weight of a machine stays below total*(1+eps).
    w_tilde_cap_ =
        ceil_rat(Rational(wi.total_units) * (1 + wi.spec.eps)).convert_to<long long>() + 1;
}

const LayeredGraph::Family& LayeredGraph::family(int t, int i, int j) {
    auto key = std::make_tuple(t, i, j);
    auto it = families_.find(key);
    if (it != families_.end()) return it->second;

    Family fam;
    fam.input.dir = wi_->spec.direction;
    fam.input.p = wi_->spec.p_double();
    fam.input.eps = wi_->spec.eps;
    fam.input.mu = wi_->mu;
    fam.input.w_lo = layers_[t].w_lo;
    fam.input.w_hi = layers_[t].w_hi;
    fam.input.config_cap = opts_.config_cap;
    fam.input.w_tilde_cap = w_tilde_cap_;
    for (int q = i; q < j; ++q)
        fam.input.machines.push_back(BRMachineRef{q, wi_->speeds[q]});
    for (int job : layers_[t].jobs)
        fam.input.large.push_back(BRJob{job, wi_->job_units[job]});
    if (i < j) {
        fam.cfg = enumerate_configurations(fam.input);
        configs_enumerated_ += static_cast<long long>(fam.cfg.configs.size());
    }
    fam.profiles = enumerate_profiles(fam.input, fam.cfg);
    return families_.emplace(key, std::move(fam)).first->second;
}

std::optional<PathResult> best_path(LayeredGraph& graph, Direction dir, int start_machine) {
    const auto& wi = graph.working();
    const int m = static_cast<int>(wi.machine_ids.size());
    const int T = static_cast<int>(graph.layers().size());
    const bool minimize = dir == Direction::Minimize;
    const long long stride = graph.options().a_stride;
    if (start_machine < 0 || start_machine >= m)
        throw ContractViolation("best_path: start machine out of range");

    struct Node {
        double cost = 0;
        int from_i = -1;
        long long from_b = 0;
        int profile = -1;
    };
    using Key = std::pair<int, long long>;
    std::vector<std::map<Key, Node>> V(T + 1);
    V[0][{start_machine, 0}] = Node{};

    for (int t = 0; t < T; ++t) {
        for (const auto& [key, node] : V[t]) {
            const int i = key.first;
            const long long b = key.second;
            for (int j = i; j <= m; ++j) {
                const auto& fam = graph.family(t, i, j);
                for (std::size_t pix = 0; pix < fam.profiles.size(); ++pix) {
                    const auto& prof = fam.profiles[pix];
                    long long a;
                    if (minimize) {
                        a = prof.u + std::max(0LL, b - prof.g);
                    } else {
                        if (prof.g > b) continue; // gaps must be coverable
                        a = prof.u + b - prof.g;
                    }
                    if (stride > 1)
                        a = minimize ? (a + stride - 1) / stride * stride : a / stride * stride;
                    double cost = node.cost + prof.cost;
                    Key nk{j, a};
                    auto it = V[t + 1].find(nk);
                    if (it == V[t + 1].end()) {
                        V[t + 1].emplace(nk, Node{cost, i, b, static_cast<int>(pix)});
                    } else if (minimize ? cost < it->second.cost : cost > it->second.cost) {
                        it->second = Node{cost, i, b, static_cast<int>(pix)};
                    }
                }
            }
        }
    }

    // Sink: dummy machine index m. Minimization needs an exactly drained
    // pool; maximization may leave any claim (leftovers are lifted later).
    Key sink{-1, 0};
    if (minimize) {
        if (!V[T].count({m, 0})) return std::nullopt;
        sink = {m, 0};
    } else {
        bool found = false;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& [key, node] : V[T]) {
            if (key.first != m) continue;
            if (!found || node.cost > best) {
                best = node.cost;
                sink = key;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }

    PathResult path;
    path.cost = V[T].at(sink).cost;
    Key cur = sink;
    for (int t = T; t > 0; --t) {
        const Node& node = V[t].at(cur);
        PathStep step;
        step.t = t - 1;
        step.i = node.from_i;
        step.j = cur.first;
        step.b = node.from_b;
        step.a = cur.second;
        step.profile = node.profile;
        path.steps.push_back(step);
        cur = {node.from_i, node.from_b};
    }
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
}

AssembledSchedule assemble_schedule(const PathResult& path, LayeredGraph& graph) {
    const auto& wi = graph.working();
    const int m = static_cast<int>(wi.machine_ids.size());
    const bool minimize = wi.spec.direction == Direction::Minimize;
    const bool validate = graph.options().validate_arcs;
    const bool exact_flows = graph.options().a_stride <= 1;

    AssembledSchedule out;
    out.machine_units.assign(m, 0);
    out.machine_layer.assign(m, -1);
    out.claimed_cost = path.cost;

    std::vector<int> owner(wi.job_ids.size(), -1);
    std::deque<std::pair<int, long long>> pool; // (job, units left)

    for (const auto& step : path.steps) {
        const auto& fam = graph.family(step.t, step.i, step.j);
        const auto& prof = fam.profiles.at(step.profile);

        if (validate && exact_flows) {
            long long expect = minimize ? prof.u + std::max(0LL, step.b - prof.g)
                                        : prof.u + step.b - prof.g;
            if (expect != step.a)
                throw ContractViolation("assemble_schedule: pool flow mismatch along the path");
        }
        if (validate && step.i < step.j) {
            BRInput arc_input = fam.input;
            arc_input.a_units = step.a;
            arc_input.b_units = step.b;
            IPSolution sol;
            sol.machine_config = prof.machine_config;
            sol.x.assign(fam.cfg.configs.size(), 0);
            sol.y.assign(fam.cfg.h_units.size(), 0);
            std::vector<int> used(fam.cfg.h_units.size(), 0);
            for (int cid : prof.machine_config) {
                sol.x[cid] += 1;
                for (std::size_t h = 0; h < fam.cfg.h_units.size(); ++h)
                    used[h] += fam.cfg.configs[cid].counts[h];
            }
            for (std::size_t h = 0; h < fam.cfg.h_units.size(); ++h)
                sol.y[h] = fam.cfg.n_h[h] - used[h];
            sol.u_units = prof.u;
            sol.gap_units = prof.g;
            sol.objective = prof.cost;
            verify_ip_solution(arc_input, fam.cfg, sol);
        }

        const auto& layer = graph.layers()[step.t];
        if (step.i == step.j) {
            for (int job : layer.jobs) pool.emplace_back(job, wi.job_units[job]);
            continue;
        }

        const auto& cfg = fam.cfg;
        const int ell = step.j - step.i;
        std::vector<std::size_t> cursor(cfg.h_units.size(), 0);
        std::vector<long long> gaps(ell, 0);
        for (int q = 0; q < ell; ++q) {
            const auto& conf = cfg.configs[prof.machine_config[q]];
            int mp = step.i + q;
            out.machine_layer[mp] = step.t;
            for (std::size_t h = 0; h < cfg.h_units.size(); ++h)
                for (int c = 0; c < conf.counts[h]; ++c) {
                    int job = fam.input.large[cfg.h_members[h][cursor[h]++]].idx;
                    owner[job] = mp;
                    out.machine_units[mp] += wi.job_units[job];
                }
            gaps[q] = conf.gap_units;
        }
        std::vector<int> leftovers;
        for (std::size_t h = 0; h < cfg.h_units.size(); ++h)
            for (std::size_t k = cursor[h]; k < cfg.h_members[h].size(); ++k)
                leftovers.push_back(fam.input.large[cfg.h_members[h][k]].idx);
        std::sort(leftovers.begin(), leftovers.end());

        // Fractional next-fit against the real pool, splits recorded per job.
        std::vector<int> pour_order;
        std::map<int, std::vector<std::pair<int, long long>>> pieces;
        for (int q = 0; q < ell; ++q) {
            long long need = gaps[q];
            int mp = step.i + q;
            while (need > 0 && !pool.empty()) {
                auto& front = pool.front();
                if (!pieces.count(front.first)) pour_order.push_back(front.first);
                long long take = std::min(front.second, need);
                pieces[front.first].emplace_back(mp, take);
                need -= take;
                front.second -= take;
                if (front.second == 0) pool.pop_front();
            }
        }
        // Integral placement: a job split across machines (or across the arc
        // boundary) goes whole to its first host for minimization and back
        // to the pool, unscheduled for now, for maximization.
        std::vector<int> requeue;
        for (int job : pour_order) {
            const auto& parts = pieces[job];
            long long whole = wi.job_units[job];
            long long placed = 0;
            for (const auto& [mp, units] : parts) placed += units;
            bool tail_in_pool = !pool.empty() && pool.front().first == job;
            bool split = parts.size() > 1 || placed < whole;
            if (!split) {
                owner[job] = parts[0].first;
                out.machine_units[parts[0].first] += whole;
                continue;
            }
            if (minimize) {
                owner[job] = parts[0].first;
                out.machine_units[parts[0].first] += whole;
                if (tail_in_pool) pool.pop_front();
            } else {
                requeue.push_back(job);
                if (tail_in_pool) pool.pop_front();
            }
        }
        for (auto it = requeue.rbegin(); it != requeue.rend(); ++it)
            pool.emplace_front(*it, wi.job_units[*it]);
        for (int job : leftovers) pool.emplace_back(job, wi.job_units[job]);
    }

    if (minimize) {
        if (!pool.empty())
            throw ContractViolation("assemble_schedule: minimization left pool jobs unplaced");
        for (std::size_t j = 0; j < owner.size(); ++j)
            if (owner[j] < 0)
                throw ContractViolation("assemble_schedule: job '" + wi.job_ids[j] +
                                        "' not placed");
    }
    for (std::size_t j = 0; j < owner.size(); ++j) {
        if (owner[j] >= 0)
            out.schedule.assignment[wi.job_ids[j]] = wi.machine_ids[owner[j]];
        else
            out.unassigned.push_back(static_cast<int>(j));
    }
    return out;
}

EptasResult eptas_solve(const Instance& input, const DpOptions& opts) {
    using Clock = std::chrono::steady_clock;
    auto ms_since = [](Clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    };
    auto t_total = Clock::now();

    validate_instance(input);
    if (trivial_regime(input.spec))
        throw ContractViolation("eptas_solve: trivial regime; use trivial_solve");

    SortedInstance sorted = sort_machines(input);
    const Instance& inst = sorted.instance;
    const bool minimize = inst.spec.direction == Direction::Minimize;

    EptasResult res;
    res.params = make_params(inst.spec, opts.rho_override);

    if (inst.jobs.empty()) {
        res.value = 0;
        res.stage_ms["total"] = ms_since(t_total);
        return res;
    }

    auto t_round = Clock::now();
    RoundedInstance rounded = round_geometric(inst);
    rounded = minimize ? round_arithmetic_min(std::move(rounded))
                       : round_arithmetic_max(std::move(rounded));
    res.params.mu = rounded.mu;
    res.params.p_max = rounded.p_max;

    WorkingInstance wi;
    wi.spec = inst.spec;
    wi.mu = rounded.mu;
    for (const auto& job : rounded.base.jobs) {
        const BigInt& units = rounded.size_units.at(job.id);
        if (units == 0) continue; // re-added by lift_schedule
        if (units > 2'000'000'000'000LL)
            throw ResourceCapError("eptas_solve: mu-grid too fine for this instance");
        long long u = units.convert_to<long long>();
        wi.job_ids.push_back(job.id);
        wi.job_units.push_back(u);
        wi.total_units += u;
    }
    if (wi.job_ids.empty())
        throw ContractViolation("eptas_solve: no positive-size jobs after rounding");
    for (const auto& machine : rounded.base.machines) {
        wi.machine_ids.push_back(machine.id);
        wi.speeds.push_back(machine.speed);
    }
    wi.p_min_units = *std::min_element(wi.job_units.begin(), wi.job_units.end());
    res.params.p_min = Rational(wi.p_min_units) * wi.mu;
    res.stage_ms["rounding"] = ms_since(t_round);

    const Rational p_min = Rational(wi.p_min_units) * wi.mu;
    const Rational total = Rational(wi.total_units) * wi.mu;
    std::vector<Rational> sizes;
    sizes.reserve(wi.job_units.size());
    for (long long u : wi.job_units) sizes.push_back(Rational(u) * wi.mu);

    const int m = static_cast<int>(wi.machine_ids.size());
    constexpr std::size_t kMaxRecordedChoices = 10'000;

    struct Best {
        bool have = false;
        double value = 0;
        Schedule schedule;
        long long k = 0;
        BigInt eta;
        Parity phi = Parity::Even;
    } best;

    auto t_sweep = Clock::now();
    for (BigInt eta = 0; eta < res.params.rho; ++eta) {
        auto shifted =
            illegal_intervals(eta, res.params.rho, inst.spec.eps, p_min, total);
        for (Parity phi : {Parity::Even, Parity::Odd}) {
            if (shifted.empty() && phi == Parity::Odd) continue; // same graph
            auto kept = filter_parity(shifted, phi);
            auto omega = valid_intervals(kept, p_min, total, res.params.gamma);
            auto assoc = associate_jobs(omega, sizes);
            LayeredGraph graph(wi, omega, assoc, opts);
            for (long long k = 0; k < m; ++k) {
                ++res.choices_tried;
                ChoiceReport rep;
                rep.k = k;
                rep.eta = eta;
                rep.phi = phi;
                auto path = best_path(graph, inst.spec.direction, static_cast<int>(k));
                if (path) {
                    auto assembled = assemble_schedule(*path, graph);
                    Schedule lifted = lift_schedule(rounded, assembled.schedule);
                    double value = evaluate(inst, lifted);
                    rep.feasible = true;
                    rep.value = value;
                    bool take = false;
                    if (!best.have) {
                        take = true;
                    } else if (minimize ? value < best.value : value > best.value) {
                        take = true;
                    } else if (value == best.value) {
                        auto cand = std::make_tuple(k, eta, phi == Parity::Odd);
                        auto cur = std::make_tuple(best.k, best.eta, best.phi == Parity::Odd);
                        take = cand < cur;
                    }
                    if (take) {
                        best.have = true;
                        best.value = value;
                        best.schedule = std::move(lifted);
                        best.k = k;
                        best.eta = eta;
                        best.phi = phi;
                    }
                }
                if (res.choices.size() < kMaxRecordedChoices) res.choices.push_back(rep);
            }
            res.configs_enumerated += graph.configs_enumerated();
        }
        // Larger eta only pushes the interval family further out; once it is
        // empty every remaining iteration is the same single-interval graph.
        if (shifted.empty()) break;
    }
    res.stage_ms["sweep"] = ms_since(t_sweep);

    if (!best.have)
        throw ContractViolation("eptas_solve: no feasible sweep choice (cannot happen)");
    res.schedule = std::move(best.schedule);
    res.value = best.value;
    res.k = best.k;
    res.eta = best.eta;
    res.phi = best.phi;
    res.stage_ms["total"] = ms_since(t_total);
    return res;
}

} // namespace lps
