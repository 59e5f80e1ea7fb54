#include "lps/io.hpp"

#include "lps/error.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace lps {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rational positive_rational(const json& node, const std::string& what) {
    if (!node.is_string())
        throw InputError(what + ": numbers must be decimal strings");
    Rational value = parse_rational(node.get<std::string>());
    if (value <= 0) throw InputError(what + " must be positive");
    return value;
}

} // namespace

Instance parse_instance_text(const std::string& text, const Rational& eps,
                             const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw InputError(origin + ": top level must be an object");
    Instance inst;
    try {
        if (!doc.contains("p") || !doc.contains("objective"))
            throw InputError("missing 'p' or 'objective'");
        Rational p = positive_rational(doc.at("p"), "p");
        std::string objective = doc.at("objective").get<std::string>();
        Direction dir;
        if (objective == "min") dir = Direction::Minimize;
        else if (objective == "max") dir = Direction::Maximize;
        else throw InputError("objective must be 'min' or 'max'");
        inst.spec = make_spec(p, dir, eps);
        for (const auto& j : doc.value("jobs", json::array())) {
            Job job;
            job.id = j.at("id").get<std::string>();
            job.size = positive_rational(j.at("size"), "job '" + job.id + "' size");
            inst.jobs.push_back(std::move(job));
        }
        for (const auto& mj : doc.value("machines", json::array())) {
            Machine machine;
            machine.id = mj.at("id").get<std::string>();
            machine.speed =
                positive_rational(mj.at("speed"), "machine '" + machine.id + "' speed");
            inst.machines.push_back(std::move(machine));
        }
    } catch (const json::exception& e) {
        throw InputError(origin + ": " + e.what());
    }
    validate_instance(inst);
    return inst;
}

Instance parse_instance(const std::string& path, const Rational& eps) {
    return parse_instance_text(read_file(path), eps, path);
}

std::string serialize_instance(const Instance& inst) {
    json doc;
    doc["p"] = to_string(inst.spec.p);
    doc["objective"] = inst.spec.direction == Direction::Minimize ? "min" : "max";
    doc["jobs"] = json::array();
    for (const auto& job : inst.jobs)
        doc["jobs"].push_back({{"id", job.id}, {"size", to_string(job.size)}});
    doc["machines"] = json::array();
    for (const auto& machine : inst.machines)
        doc["machines"].push_back({{"id", machine.id}, {"speed", to_string(machine.speed)}});
    return doc.dump(2) + "\n";
}

std::string serialize_schedule(const Instance& inst, const Schedule& sched, double objective) {
    json doc;
    json machines = json::object();
    json works = json::object();
    std::map<std::string, std::vector<std::string>> per_machine;
    for (const auto& machine : inst.machines) per_machine[machine.id] = {};
    for (const auto& job : inst.jobs) {
        auto it = sched.assignment.find(job.id);
        if (it != sched.assignment.end()) per_machine[it->second].push_back(job.id);
    }
    auto work_vec = works_by_machine(inst, sched);
    for (std::size_t i = 0; i < inst.machines.size(); ++i) {
        const auto& id = inst.machines[i].id;
        machines[id] = per_machine[id];
        works[id] = to_string(work_vec[i]);
    }
    doc["machines"] = machines;
    doc["works"] = works;
    doc["objective"] = objective;
    return doc.dump(2) + "\n";
}

Schedule parse_schedule_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(origin + ": " + e.what());
    }
    Schedule sched;
    try {
        for (const auto& [machine, jobs] : doc.at("machines").items())
            for (const auto& job : jobs) sched.assignment[job.get<std::string>()] = machine;
    } catch (const json::exception& e) {
        throw InputError(origin + ": " + e.what());
    }
    return sched;
}

std::string instance_digest(const Instance& inst) {
    std::string canon = serialize_instance(inst);
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : canon) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

GenProfile parse_profile(const std::string& name) {
    if (name == "uniform") return GenProfile::Uniform;
    if (name == "two-class-speeds") return GenProfile::TwoClassSpeeds;
    if (name == "geometric-sizes") return GenProfile::GeometricSizes;
    if (name == "adversarial-gap") return GenProfile::AdversarialGap;
    throw InputError("unknown profile '" + name + "'");
}

namespace {

// mt19937_64 is fully specified; the rejection sampler keeps draws portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
        std::uint64_t v;
        do { v = engine_(); } while (v >= limit);
        return v % n;
    }
    long long range(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace

Instance generate(std::uint64_t seed, const GenOptions& options) {
    if (options.n < 1 || options.m < 1) throw InputError("generate: need n >= 1, m >= 1");
    Rng rng(seed);
    Instance inst;
    inst.spec = make_spec(options.p, options.direction, options.eps);

    auto add_job = [&](int idx, const Rational& size) {
        inst.jobs.push_back(Job{"j" + std::to_string(idx), size});
    };
    auto add_machine = [&](int idx, const Rational& speed) {
        inst.machines.push_back(Machine{"m" + std::to_string(idx), speed});
    };

    switch (options.profile) {
    case GenProfile::Uniform:
        for (int i = 0; i < options.n; ++i) add_job(i, Rational(rng.range(1, 100)));
        for (int i = 0; i < options.m; ++i) add_machine(i, Rational(rng.range(1, 8)));
        break;
    case GenProfile::TwoClassSpeeds: {
        long long fast = 1LL << rng.range(2, 4);
        for (int i = 0; i < options.n; ++i) add_job(i, Rational(rng.range(1, 60)));
        for (int i = 0; i < options.m; ++i)
            add_machine(i, rng.range(0, 1) ? Rational(fast) : Rational(1));
        break;
    }
    case GenProfile::GeometricSizes:
        for (int i = 0; i < options.n; ++i)
            add_job(i, Rational(1LL << rng.range(0, 6)) * Rational(rng.range(1, 3)));
        for (int i = 0; i < options.m; ++i) add_machine(i, Rational(1LL << rng.range(0, 3)));
        break;
    case GenProfile::AdversarialGap: {
        // Sizes hugging the shifted-interval endpoints p_min*(1/eps)^j.
        BigInt inv_eps = denominator(inst.spec.eps);
        Rational p_min(1);
        add_job(0, p_min);
        for (int i = 1; i < options.n; ++i) {
            long long j = rng.range(1, 3);
            Rational boundary = p_min * pow_rat(Rational(inv_eps), j);
            // Strictly inside the open interval (boundary, boundary/eps).
            Rational size = boundary + Rational(rng.range(1, 3), 4) * boundary;
            add_job(i, size);
        }
        for (int i = 0; i < options.m; ++i) add_machine(i, Rational(rng.range(1, 4)));
        break;
    }
    }
    return inst;
}

namespace {

double guarantee_bound(const ProblemSpec& spec) {
    return std::pow(1.0 + to_double(spec.eps), 4.0 * (spec.p_double() + 1.0));
}

} // namespace

BenchResult run_bench(const std::vector<Instance>& instances, const std::vector<Rational>& eps_list,
                      const BenchOptions& options) {
    BenchResult result;
    for (const auto& base : instances) {
        for (const auto& eps : eps_list) {
            Instance inst = base;
            inst.spec.eps = normalize_eps(eps);

            RunReport report;
            report.digest = instance_digest(inst);
            report.n = static_cast<int>(inst.jobs.size());
            report.m = static_cast<int>(inst.machines.size());
            report.p = to_string(inst.spec.p);
            report.direction = to_cstr(inst.spec.direction);
            report.eps = to_string(inst.spec.eps);

            auto t0 = std::chrono::steady_clock::now();
            Schedule schedule;
            if (trivial_regime(inst.spec)) {
                schedule = trivial_solve(inst);
                report.alg_value = evaluate(inst, schedule);
                report.eta = "0";
                report.phi = "even";
            } else {
                EptasResult solved = eptas_solve(inst, options.dp);
                schedule = std::move(solved.schedule);
                report.alg_value = solved.value;
                report.k = solved.k;
                report.eta = solved.eta.str();
                report.phi = solved.phi == Parity::Even ? "even" : "odd";
                report.configs = solved.configs_enumerated;
                report.choices = solved.choices_tried;
                if (options.include_timings) report.stage_ms = solved.stage_ms;
            }
            report.alg_value *= options.inflate_alg_factor;
            if (options.include_timings)
                report.wall_ms = std::chrono::duration<double, std::milli>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count();

            const bool disqualified = options.dp.a_stride > 1;
            report.bound = disqualified ? 0.0 : guarantee_bound(inst.spec);
            if (options.with_oracle) {
                try {
                    OracleResult oracle = brute_force(inst);
                    report.oracle_value = oracle.value;
                    double ratio = inst.spec.direction == Direction::Minimize
                                       ? report.alg_value / oracle.value
                                       : oracle.value / report.alg_value;
                    report.ratio = ratio;
                    if (ratio < 1.0 - 1e-9)
                        throw ContractViolation("bench: ratio below 1 (oracle not optimal?)");
                    if (!disqualified && ratio > report.bound) {
                        report.within_bound = false;
                        result.all_within_bound = false;
                    }
                } catch (const ResourceCapError&) {
                    // oracle infeasible: ratio unavailable, not a failure
                }
            }
            result.reports.push_back(std::move(report));
        }
    }
    return result;
}

namespace {

json report_json(const RunReport& r) {
    json doc;
    doc["digest"] = r.digest;
    doc["n"] = r.n;
    doc["m"] = r.m;
    doc["p"] = r.p;
    doc["objective"] = r.direction;
    doc["eps"] = r.eps;
    doc["k"] = r.k;
    doc["eta"] = r.eta;
    doc["phi"] = r.phi;
    doc["alg_value"] = r.alg_value;
    if (r.oracle_value) doc["oracle_value"] = *r.oracle_value;
    if (r.ratio) doc["ratio"] = *r.ratio;
    doc["bound"] = r.bound;
    doc["within_bound"] = r.within_bound;
    doc["configs"] = r.configs;
    doc["choices"] = r.choices;
    if (r.wall_ms > 0) doc["wall_ms"] = r.wall_ms;
    if (!r.stage_ms.empty()) {
        json stages;
        for (const auto& [k, v] : r.stage_ms) stages[k] = v;
        doc["stage_ms"] = stages;
    }
    return doc;
}

} // namespace

std::string report_to_json(const RunReport& report) { return report_json(report).dump(2) + "\n"; }

std::string bench_to_json(const BenchResult& result) {
    json doc;
    doc["all_within_bound"] = result.all_within_bound;
    doc["runs"] = json::array();
    for (const auto& r : result.reports) doc["runs"].push_back(report_json(r));
    return doc.dump(2) + "\n";
}

std::string bench_summary_table(const BenchResult& result) {
    struct Row {
        int runs = 0;
        int with_ratio = 0;
        double max_ratio = 0;
        double sum_ratio = 0;
        bool ok = true;
    };
    std::map<std::string, Row> rows;
    for (const auto& r : result.reports) {
        Row& row = rows[r.eps];
        row.runs += 1;
        if (r.ratio) {
            row.with_ratio += 1;
            row.max_ratio = std::max(row.max_ratio, *r.ratio);
            row.sum_ratio += *r.ratio;
        }
        row.ok = row.ok && r.within_bound;
    }
    std::ostringstream out;
    out << "eps        runs  rated  max-ratio  mean-ratio  ok\n";
    for (const auto& [eps, row] : rows) {
        char line[160];
        double mean = row.with_ratio ? row.sum_ratio / row.with_ratio : 0.0;
        std::snprintf(line, sizeof line, "%-10s %4d  %5d  %9.4f  %10.4f  %s\n", eps.c_str(),
                      row.runs, row.with_ratio, row.max_ratio, mean, row.ok ? "yes" : "NO");
        out << line;
    }
    return out.str();
}

} // namespace lps
