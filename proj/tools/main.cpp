#include "lps/io.hpp"

#include "lps/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace lps;

void write_out(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << content;
}

DpOptions dp_options(long long rho_override, long long a_stride, long long config_cap) {
    DpOptions opts;
    if (rho_override > 0) opts.rho_override = rho_override;
    opts.a_stride = a_stride;
    opts.config_cap = config_cap;
    return opts;
}

Instance load_instance(const std::string& path, const std::string& eps, const std::string& p,
                       const std::string& objective) {
    Instance inst = parse_instance(path, parse_rational(eps));
    if (!p.empty()) inst.spec.p = parse_rational(p);
    if (!objective.empty()) {
        if (objective == "min") inst.spec.direction = Direction::Minimize;
        else if (objective == "max") inst.spec.direction = Direction::Maximize;
        else throw InputError("--objective must be min or max");
    }
    validate_instance(inst);
    return inst;
}

int run(int argc, char** argv) {
    CLI::App app{"EPTAS and exact solvers for scheduling on uniformly related machines\n"
                 "minimizing (p > 1) or maximizing (p < 1) the sum of p-th powers of\n"
                 "machine completion times"};
    app.require_subcommand(1);

    std::string in_path, out_path, eps = "1/2", p_flag, objective_flag;
    long long rho_override = 0, a_stride = 1, config_cap = 5'000'000;

    auto add_common = [&](CLI::App* cmd, bool with_dp) {
        cmd->add_option("--eps", eps, "accuracy parameter (normalized to 1/k)");
        cmd->add_option("--p", p_flag, "override the instance exponent");
        cmd->add_option("--objective", objective_flag, "override the direction: min|max");
        cmd->add_option("--out", out_path, "output file ('-' = stdout)");
        if (with_dp) {
            cmd->add_option("--rho-override", rho_override,
                            "shrink the shift count (testing; weakens the guarantee)");
            cmd->add_option("--a-stride", a_stride,
                            "coarsen the pool grid (profiling; voids the guarantee)");
            cmd->add_option("--config-cap", config_cap, "configuration enumeration cap");
        }
    };

    // solve
    auto* solve = app.add_subcommand("solve", "run the approximation scheme");
    solve->add_option("instance", in_path, "instance JSON file")->required();
    add_common(solve, true);
    solve->callback([&] {
        Instance inst = load_instance(in_path, eps, p_flag, objective_flag);
        Schedule schedule;
        double value = 0;
        std::string report_json;
        if (trivial_regime(inst.spec)) {
            schedule = trivial_solve(inst);
            value = evaluate(inst, schedule);
        } else {
            EptasResult res = eptas_solve(inst, dp_options(rho_override, a_stride, config_cap));
            schedule = std::move(res.schedule);
            value = res.value;
            std::cerr << "chose k=" << res.k << " eta=" << res.eta.str() << " phi="
                      << (res.phi == Parity::Even ? "even" : "odd") << ", value " << value
                      << " (" << res.choices_tried << " choices, " << res.configs_enumerated
                      << " configurations)\n";
        }
        write_out(out_path, serialize_schedule(inst, schedule, value));
    });

    // exact
    auto* exact = app.add_subcommand("exact", "exact oracle (desk scale)");
    std::string method = "brute";
    exact->add_option("instance", in_path, "instance JSON file")->required();
    exact->add_option("--method", method, "brute|dp");
    add_common(exact, false);
    exact->callback([&] {
        Instance inst = load_instance(in_path, eps, p_flag, objective_flag);
        OracleResult res = method == "dp" ? exact_dp(inst) : brute_force(inst);
        std::cerr << "explored " << res.node_count << " nodes\n";
        write_out(out_path, serialize_schedule(inst, res.schedule, res.value));
    });

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    std::string profile = "uniform";
    std::uint64_t seed = 1;
    int n = 8, m = 3;
    gen->add_option("--profile", profile, "uniform|two-class-speeds|geometric-sizes|adversarial-gap");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--n", n, "number of jobs");
    gen->add_option("--m", m, "number of machines");
    add_common(gen, false);
    gen->callback([&] {
        GenOptions options;
        options.profile = parse_profile(profile);
        options.n = n;
        options.m = m;
        if (!p_flag.empty()) options.p = parse_rational(p_flag);
        if (!objective_flag.empty())
            options.direction = objective_flag == "max" ? Direction::Maximize : Direction::Minimize;
        options.eps = normalize_eps(parse_rational(eps));
        write_out(out_path, serialize_instance(generate(seed, options)));
    });

    // check
    auto* check = app.add_subcommand("check", "validate a schedule file against an instance");
    std::string schedule_path;
    check->add_option("instance", in_path, "instance JSON file")->required();
    check->add_option("schedule", schedule_path, "schedule JSON file")->required();
    add_common(check, false);
    check->callback([&] {
        Instance inst = load_instance(in_path, eps, p_flag, objective_flag);
        std::ifstream in(schedule_path);
        if (!in) throw InputError("cannot open '" + schedule_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        Schedule sched = parse_schedule_text(ss.str(), schedule_path);
        auto violations = validate(inst, sched);
        if (!violations.empty()) {
            for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
            throw InputError("schedule invalid (" + std::to_string(violations.size()) +
                             " violations)");
        }
        std::cout << "ok: objective " << evaluate(inst, sched) << "\n";
    });

    // bench
    auto* bench = app.add_subcommand("bench", "empirical guarantee harness");
    std::vector<std::string> files;
    std::vector<std::string> eps_list;
    int gen_count = 0;
    bool no_timings = false, no_oracle = false;
    double inject_bad = 1.0;
    bench->add_option("instances", files, "instance JSON files");
    bench->add_option("--eps", eps_list, "eps values (repeatable)");
    bench->add_option("--gen-count", gen_count, "generate this many seeded instances instead");
    bench->add_option("--profile", profile, "generator profile");
    bench->add_option("--seed", seed, "base seed for generated instances");
    bench->add_option("--n", n, "jobs per generated instance");
    bench->add_option("--m", m, "machines per generated instance");
    bench->add_option("--p", p_flag, "exponent for generated instances");
    bench->add_option("--objective", objective_flag, "direction for generated instances");
    bench->add_option("--out", out_path, "write the JSON report here");
    bench->add_option("--rho-override", rho_override, "shrink the shift count");
    bench->add_option("--a-stride", a_stride, "coarsen the pool grid (voids the guarantee)");
    bench->add_option("--config-cap", config_cap, "configuration enumeration cap");
    bench->add_flag("--no-timings", no_timings, "omit wall times (byte-stable output)");
    bench->add_flag("--no-oracle", no_oracle, "skip oracle ratios");
    bench->add_option("--inject-bad-factor", inject_bad)->group(""); // harness self-test
    bench->callback([&] {
        std::vector<Instance> instances;
        if (gen_count > 0) {
            GenOptions options;
            options.profile = parse_profile(profile);
            options.n = n;
            options.m = m;
            if (!p_flag.empty()) options.p = parse_rational(p_flag);
            if (!objective_flag.empty())
                options.direction =
                    objective_flag == "max" ? Direction::Maximize : Direction::Minimize;
            options.eps = normalize_eps(parse_rational(eps_list.empty() ? eps : eps_list[0]));
            for (int i = 0; i < gen_count; ++i) instances.push_back(generate(seed + i, options));
        }
        for (const auto& f : files) instances.push_back(parse_instance(f));
        std::vector<Rational> eps_values;
        if (eps_list.empty()) eps_values.push_back(parse_rational(eps));
        for (const auto& e : eps_list) eps_values.push_back(parse_rational(e));

        BenchOptions options;
        options.dp = dp_options(rho_override, a_stride, config_cap);
        options.include_timings = !no_timings;
        options.with_oracle = !no_oracle;
        options.inflate_alg_factor = inject_bad;
        BenchResult result = run_bench(instances, eps_values, options);
        std::cout << bench_summary_table(result);
        if (!out_path.empty()) write_out(out_path, bench_to_json(result));
        if (!result.all_within_bound) throw ContractViolation("bench: guarantee violation");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lps::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lps::ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const lps::ContractViolation& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
