// Command-line driver for the PLWE trace-attack toolkit.
//
// Subcommands: params, gen, attack, experiment, stats, bench.
// Exit codes: 0 success, 2 invalid parameters, 3 attack inapplicable
// (|Sigma| >= q), 4 I/O error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plwe/plwe.hpp"

namespace {

using nlohmann::json;

bool is_machine(const std::string& format) { return format == "machine-readable"; }

std::string phi_string(std::uint64_t p, std::uint64_t n) {
    std::uint64_t step = 1;
    for (std::uint64_t i = 1; i < n; ++i) step *= p; // p^(n-1)
    std::string out;
    for (std::uint64_t i = p; i-- > 0;) {
        std::uint64_t e = i * step;
        if (!out.empty()) out += "+";
        if (e == 0) out += "1";
        else if (e == 1) out += "x";
        else out += "x^" + std::to_string(e);
    }
    return out;
}

std::string factors_string(const plwe::CyclotomicFactorization& f) {
    std::vector<std::uint64_t> constants;
    for (auto rho : f.rhos()) constants.push_back(plwe::neg_mod(rho, f.q()));
    std::sort(constants.begin(), constants.end());
    std::string out;
    for (auto c : constants)
        out += "(x^" + std::to_string(f.factor_degree()) + "+" + std::to_string(c) + ")";
    return out;
}

int cmd_params(std::uint64_t p, std::uint64_t n, std::uint64_t A, std::uint64_t q_min,
               const std::string& format) {
    plwe::FieldContext field = plwe::find_attack_prime(p, n, A, q_min);
    plwe::CyclotomicFactorization fact = plwe::factor_prime_power_cyclotomic(field, n);
    std::uint64_t rho = plwe::default_primitive_root(field);
    std::uint64_t m = 1;
    for (std::uint64_t i = 0; i < n; ++i) m *= p;
    std::uint64_t N = m / p * (p - 1);

    std::vector<std::uint64_t> constants;
    for (auto r : fact.rhos()) constants.push_back(plwe::neg_mod(r, field.q()));
    std::sort(constants.begin(), constants.end());

    if (is_machine(format)) {
        json j{{"p", p},
               {"n", n},
               {"A", A},
               {"q", field.q()},
               {"u", field.u()},
               {"m", m},
               {"N", N},
               {"phi", phi_string(p, n)},
               {"factor_degree", fact.factor_degree()},
               {"factor_constants", constants},
               {"roots", fact.rhos()},
               {"rho", rho}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "p = " << p << "\n"
                  << "n = " << n << "\n"
                  << "A = " << A << "\n"
                  << "q = " << field.q() << " (= 1 + " << p << "^" << A << " * " << field.u()
                  << ")\n"
                  << "m = " << m << "\n"
                  << "N = " << N << "\n"
                  << "phi = " << phi_string(p, n) << "\n"
                  << "factors = " << factors_string(fact) << "\n";
        std::cout << "roots =";
        for (auto r : fact.rhos()) std::cout << " " << r;
        std::cout << "\n"
                  << "rho = " << rho << "\n";
    }
    return 0;
}

plwe::AttackContext make_context(std::uint64_t p, std::uint64_t n, std::uint64_t A,
                                 std::uint64_t q_min) {
    plwe::FieldContext field = plwe::find_attack_prime(p, n, A, q_min);
    return plwe::AttackContext::with_default_root(field, n);
}

int cmd_gen(std::uint64_t p, std::uint64_t n, std::uint64_t A, std::uint64_t q_min,
            const std::string& oracle, std::uint64_t M, double sigma,
            const std::string& sigma_meaning, std::uint64_t seed, const std::string& out,
            const std::string& format) {
    plwe::AttackContext ctx = make_context(p, n, A, q_min);
    plwe::SampleSet set = plwe::generate_sample_set(
        ctx, plwe::oracle_from_string(oracle), M, sigma,
        plwe::sigma_meaning_from_string(sigma_meaning), seed);
    plwe::write_sample_set(out, set);
    if (is_machine(format)) {
        json j{{"path", out},
               {"oracle", oracle},
               {"M", M},
               {"q", ctx.q()},
               {"rho", ctx.rho()},
               {"seed", seed},
               {"secret", set.header.secret_commitment}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "wrote " << out << ": oracle=" << oracle << " M=" << M << " q=" << ctx.q()
                  << " rho=" << ctx.rho() << " seed=" << seed << "\n";
    }
    return 0;
}

json attack_report_json(const plwe::SampleSet& set, const plwe::AttackOutcome& outcome,
                        double cutoff) {
    json j{{"in_oracle", plwe::to_string(set.header.oracle)},
           {"q", set.header.q},
           {"M", set.header.M},
           {"sigma", set.header.sigma},
           {"sigma_meaning", plwe::to_string(set.header.sigma_meaning)},
           {"cutoff", cutoff},
           {"sigma_cardinality", outcome.sigma_card},
           {"success_probability", outcome.success_prob},
           {"verdict", plwe::to_string(outcome.verdict.kind)},
           {"survivors", outcome.verdict.surviving_guesses},
           {"multiplications", outcome.verdict.mult_count},
           {"budget_direct", outcome.budget.direct_budget},
           {"budget_sqrt", outcome.budget.sqrt_budget},
           {"attack_seconds", outcome.attack_seconds}};
    return j;
}

int cmd_attack(const std::string& in, double cutoff, const std::string& out,
               const std::string& format) {
    plwe::SampleSet set = plwe::read_sample_set(in);
    plwe::AttackOutcome outcome = plwe::run_attack(set, cutoff);
    json j = attack_report_json(set, outcome, cutoff);
    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) throw plwe::io_error("cannot open for writing: " + out);
        os << j.dump(2) << "\n";
        if (!os) throw plwe::io_error("write failed: " + out);
    }
    if (is_machine(format)) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "samples: " << in << " (oracle=" << plwe::to_string(set.header.oracle)
                  << " q=" << set.header.q << " M=" << set.header.M
                  << " sigma=" << set.header.sigma << " "
                  << plwe::to_string(set.header.sigma_meaning) << ")\n"
                  << "|Sigma| = " << outcome.sigma_card << " (cutoff c=" << cutoff << ")\n"
                  << "verdict: " << plwe::to_string(outcome.verdict.kind) << "\n";
        std::cout << "survivors (" << outcome.verdict.surviving_guesses.size() << "):";
        std::size_t shown = 0;
        for (auto g : outcome.verdict.surviving_guesses) {
            if (++shown > 16) { std::cout << " ..."; break; }
            std::cout << " " << g;
        }
        std::cout << "\n"
                  << "multiplications: " << outcome.verdict.mult_count
                  << " (direct budget " << outcome.budget.direct_budget << ", sqrt budget "
                  << outcome.budget.sqrt_budget << ")\n"
                  << "success probability vs uniform: " << outcome.success_prob << "\n"
                  << "attack time: " << outcome.attack_seconds << " s\n";
    }
    return 0;
}

int cmd_experiment(const plwe::ExperimentConfig& cfg, const std::string& format) {
    plwe::ExperimentReport report = plwe::run_experiment(cfg);
    if (is_machine(format)) {
        json runs = json::array();
        for (const auto& r : report.runs) {
            runs.push_back(json{{"oracle", plwe::to_string(r.oracle)},
                                {"index", r.index},
                                {"verdict", plwe::to_string(r.verdict)},
                                {"survivors", r.survivor_count},
                                {"multiplications", r.mult_count},
                                {"gen_seconds", r.gen_seconds},
                                {"attack_seconds", r.attack_seconds},
                                {"failure", r.failure}});
        }
        json j{{"p", cfg.p},
               {"n", cfg.n},
               {"A", cfg.A},
               {"q", report.q},
               {"u", report.u},
               {"rho", report.rho},
               {"m", report.m},
               {"N", report.N},
               {"sigma", cfg.sigma},
               {"sigma_meaning", plwe::to_string(cfg.sigma_meaning)},
               {"cutoff", cfg.cutoff},
               {"M", cfg.M},
               {"ntests", cfg.ntests},
               {"seed", cfg.seed},
               {"sigma_cardinality", report.sigma_card},
               {"success_probability", report.success_prob},
               {"budget_direct", report.budget.direct_budget},
               {"budget_sqrt", report.budget.sqrt_budget},
               {"plwe_failures", report.plwe_failures},
               {"uniform_failures", report.uniform_failures},
               {"total_gen_seconds", report.total_gen_seconds},
               {"total_attack_seconds", report.total_attack_seconds},
               {"runs", runs}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "experiment: p=" << cfg.p << " n=" << cfg.n << " A=" << cfg.A
                  << " q=" << report.q << " rho=" << report.rho << " sigma=" << cfg.sigma << " ("
                  << plwe::to_string(cfg.sigma_meaning) << ") cutoff=" << cfg.cutoff
                  << " M=" << cfg.M << " ntests=" << cfg.ntests << " seed=" << cfg.seed << "\n"
                  << "|Sigma| = " << report.sigma_card
                  << ", success probability vs uniform = " << report.success_prob << "\n"
                  << "budgets: direct = " << report.budget.direct_budget
                  << ", sqrt = " << report.budget.sqrt_budget << "\n";
        for (const auto& r : report.runs) {
            std::cout << "run " << plwe::to_string(r.oracle) << " " << r.index
                      << ": verdict=" << plwe::to_string(r.verdict)
                      << " survivors=" << r.survivor_count << " mults=" << r.mult_count
                      << " gen=" << r.gen_seconds << "s attack=" << r.attack_seconds << "s"
                      << (r.failure ? " FAILURE" : "") << "\n";
        }
        std::cout << "failures: plwe " << report.plwe_failures << "/" << cfg.ntests
                  << ", uniform " << report.uniform_failures << "/" << cfg.ntests << "\n"
                  << "time: gen " << report.total_gen_seconds << " s, attack "
                  << report.total_attack_seconds << " s\n";
    }
    return 0;
}

int cmd_stats(const std::string& test, std::uint64_t p, std::uint64_t n, std::uint64_t A,
              std::uint64_t q_min, double sigma, const std::string& sigma_meaning, double cutoff,
              std::uint64_t M, std::uint64_t trials, std::uint64_t seed,
              const std::string& format) {
    if (test == "uniform-sum") {
        plwe::FieldContext field = plwe::find_attack_prime(p, n, A, q_min);
        plwe::UniformSumResult r = plwe::uniform_sum_test(field.q(), M, trials, seed);
        bool pass = r.chi.pvalue > 0.01;
        if (is_machine(format)) {
            json j{{"test", test},          {"q", field.q()},
                   {"terms", M},            {"trials", trials},
                   {"seed", seed},          {"lambda", r.lambda},
                   {"statistic", r.chi.statistic}, {"dof", r.chi.dof},
                   {"pvalue", r.chi.pvalue}, {"pass", pass}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "uniform-sum: q=" << field.q() << " terms=" << M << " trials=" << trials
                      << " seed=" << seed << "\n"
                      << "chi-square = " << r.chi.statistic << " (dof " << r.chi.dof
                      << "), p-value = " << r.chi.pvalue << " -> "
                      << (pass ? "consistent with uniform" : "NOT uniform at 0.01") << "\n";
        }
        return 0;
    }
    // survival-rate
    plwe::AttackContext ctx = make_context(p, n, A, q_min);
    double stddev = plwe::effective_stddev(sigma, plwe::sigma_meaning_from_string(sigma_meaning));
    plwe::SmallnessRegion region =
        plwe::build_smallness_region(ctx.p(), stddev, cutoff, ctx.rho(), ctx.q());
    plwe::Rng grng(plwe::derive_stream_seed(seed, "guess"));
    std::uint64_t guess = grng.uniform_below(ctx.q());
    plwe::SurvivalRateResult r = plwe::survival_rate_test(ctx, region, guess, trials, seed);
    bool pass = std::fabs(r.z) <= 3.0;
    if (is_machine(format)) {
        json j{{"test", test},
               {"q", ctx.q()},
               {"sigma", sigma},
               {"cutoff", cutoff},
               {"sigma_cardinality", region.cardinality},
               {"guess", r.guess},
               {"trials", trials},
               {"seed", seed},
               {"hits", r.hits},
               {"rate", r.rate},
               {"expected", r.expected},
               {"standard_error", r.standard_error},
               {"z", r.z},
               {"pass", pass}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "survival-rate: q=" << ctx.q() << " sigma=" << sigma << " cutoff=" << cutoff
                  << " |Sigma|=" << region.cardinality << " guess=" << r.guess
                  << " trials=" << trials << "\n"
                  << "rate = " << r.rate << ", expected |Sigma|/q = " << r.expected << ", z = "
                  << r.z << " -> " << (pass ? "within 3 SE" : "OUTSIDE 3 SE") << "\n";
    }
    return 0;
}

int cmd_bench(const std::string& strategy, std::uint64_t degree, std::uint64_t trials,
              std::uint64_t p, std::uint64_t n, std::uint64_t A, std::uint64_t q_min,
              std::uint64_t seed, const std::string& out) {
    plwe::FieldContext field = plwe::find_attack_prime(p, n, A, q_min);
    const std::uint64_t q = field.q();

    std::ostringstream rows;
    rows << "strategy,degree,mults,ers_bound,nanos\n";
    for (std::uint64_t t = 0; t < trials; ++t) {
        plwe::Rng rng(plwe::derive_stream_seed(seed, "bench-" + std::to_string(t)));
        plwe::Poly f(degree + 1);
        for (auto& c : f) c = rng.uniform_below(q);
        if (degree > 0 && f.back() == 0) f.back() = 1;
        std::uint64_t x = rng.uniform_below(q);

        auto [hv, hr] = plwe::horner_eval(f, x, q);
        auto [bv, br] = plwe::block_eval(f, x, q);
        if (hv != bv) throw std::logic_error("bench: strategy values disagree");

        double bound = plwe::automorphic_eval_bound(1, degree, q);
        char bound_buf[32];
        std::snprintf(bound_buf, sizeof(bound_buf), "%.1f", bound);
        if (strategy == "horner" || strategy == "both")
            rows << "horner," << degree << "," << hr.multiplications << "," << bound_buf << ","
                 << hr.wall_time.count() << "\n";
        if (strategy == "block" || strategy == "both")
            rows << "block," << degree << "," << br.multiplications << "," << bound_buf << ","
                 << br.wall_time.count() << "\n";
    }
    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) throw plwe::io_error("cannot open for writing: " + out);
        os << rows.str();
        if (!os) throw plwe::io_error("write failed: " + out);
    }
    std::cout << rows.str();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-based decision attack toolkit for PLWE over prime-power cyclotomics"};
    app.require_subcommand(1);

    std::uint64_t p = 2, n = 10, A = 2, q_min = 2, M = 10, ntests = 5, seed = 0;
    double sigma = 8.0, cutoff = 2.0;
    std::string oracle = "plwe", in_path, out_path, format = "text";
    std::string sigma_meaning = "stddev";
    std::string stats_test, bench_strategy = "both";
    std::uint64_t bench_degree = 512, stats_trials = 100000, bench_trials = 3;

    auto add_field_opts = [&](CLI::App* sub) {
        sub->add_option("--p", p, "base prime p")->capture_default_str();
        sub->add_option("--n", n, "cyclotomic exponent n (conductor p^n)")->capture_default_str();
        sub->add_option("--A", A, "exponent A in q = 1 + p^A*u")->capture_default_str();
        sub->add_option("--q-min", q_min, "lower bound for the attack prime q")
            ->capture_default_str();
    };
    auto add_format_opt = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "machine-readable"}))
            ->capture_default_str();
    };

    CLI::App* sub_params = app.add_subcommand("params", "derive q, the factorization and rho");
    add_field_opts(sub_params);
    add_format_opt(sub_params);

    CLI::App* sub_gen = app.add_subcommand("gen", "generate a sample set and write it to a file");
    add_field_opts(sub_gen);
    add_format_opt(sub_gen);
    sub_gen->add_option("--oracle", oracle, "sample oracle")
        ->check(CLI::IsMember({"plwe", "uniform"}))
        ->capture_default_str();
    sub_gen->add_option("--M", M, "number of samples")->capture_default_str();
    sub_gen->add_option("--sigma", sigma, "error Gaussian parameter")->capture_default_str();
    sub_gen->add_option("--sigma-meaning", sigma_meaning, "interpret sigma as")
        ->check(CLI::IsMember({"stddev", "variance"}))
        ->capture_default_str();
    sub_gen->add_option("--seed", seed, "master seed")->capture_default_str();
    sub_gen->add_option("--out", out_path, "output path")->required();

    CLI::App* sub_attack = app.add_subcommand("attack", "run the trace attack on a sample file");
    add_format_opt(sub_attack);
    sub_attack->add_option("--in", in_path, "sample-set path")->required();
    sub_attack->add_option("--cutoff", cutoff, "smallness window halfwidth in units of sigma")
        ->capture_default_str();
    sub_attack->add_option("--out", out_path, "also write the report (JSON) here");

    CLI::App* sub_exp = app.add_subcommand("experiment", "full PLWE-vs-uniform experiment");
    add_field_opts(sub_exp);
    add_format_opt(sub_exp);
    sub_exp->add_option("--sigma", sigma, "error Gaussian parameter")->capture_default_str();
    sub_exp->add_option("--sigma-meaning", sigma_meaning, "interpret sigma as")
        ->check(CLI::IsMember({"stddev", "variance"}))
        ->capture_default_str();
    sub_exp->add_option("--cutoff", cutoff, "smallness window halfwidth in units of sigma")
        ->capture_default_str();
    sub_exp->add_option("--M", M, "samples per run")->capture_default_str();
    sub_exp->add_option("--ntests", ntests, "runs per oracle")->capture_default_str();
    sub_exp->add_option("--seed", seed, "master seed")->capture_default_str();

    CLI::App* sub_stats = app.add_subcommand("stats", "statistical self-tests");
    add_field_opts(sub_stats);
    add_format_opt(sub_stats);
    sub_stats->add_option("test", stats_test, "which self-test to run")
        ->check(CLI::IsMember({"uniform-sum", "survival-rate"}))
        ->required();
    sub_stats->add_option("--sigma", sigma, "error Gaussian parameter (survival-rate)")
        ->capture_default_str();
    sub_stats->add_option("--sigma-meaning", sigma_meaning, "interpret sigma as")
        ->check(CLI::IsMember({"stddev", "variance"}))
        ->capture_default_str();
    sub_stats->add_option("--cutoff", cutoff, "smallness window halfwidth (survival-rate)")
        ->capture_default_str();
    sub_stats->add_option("--M", M, "number of summed terms (uniform-sum)")
        ->capture_default_str();
    sub_stats->add_option("--ntests", stats_trials, "number of trials")->capture_default_str();
    sub_stats->add_option("--seed", seed, "master seed")->capture_default_str();

    CLI::App* sub_bench = app.add_subcommand("bench", "evaluation-strategy benchmark (CSV)");
    add_field_opts(sub_bench);
    sub_bench->add_option("--strategy", bench_strategy, "strategy to time")
        ->check(CLI::IsMember({"horner", "block", "both"}))
        ->capture_default_str();
    sub_bench->add_option("--degree", bench_degree, "polynomial degree")->capture_default_str();
    sub_bench->add_option("--ntests", bench_trials, "number of timed trials")
        ->capture_default_str();
    sub_bench->add_option("--seed", seed, "master seed")->capture_default_str();
    sub_bench->add_option("--out", out_path, "also write the CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sub_params->parsed()) return cmd_params(p, n, A, q_min, format);
        if (sub_gen->parsed())
            return cmd_gen(p, n, A, q_min, oracle, M, sigma, sigma_meaning, seed, out_path,
                           format);
        if (sub_attack->parsed()) return cmd_attack(in_path, cutoff, out_path, format);
        if (sub_exp->parsed()) {
            plwe::ExperimentConfig cfg;
            cfg.p = p;
            cfg.n = n;
            cfg.A = A;
            cfg.q_min = q_min;
            cfg.sigma = sigma;
            cfg.sigma_meaning = plwe::sigma_meaning_from_string(sigma_meaning);
            cfg.cutoff = cutoff;
            cfg.M = M;
            cfg.ntests = ntests;
            cfg.seed = seed;
            return cmd_experiment(cfg, format);
        }
        if (sub_stats->parsed())
            return cmd_stats(stats_test, p, n, A, q_min, sigma, sigma_meaning, cutoff, M,
                             stats_trials, seed, format);
        if (sub_bench->parsed())
            return cmd_bench(bench_strategy, bench_degree, bench_trials, p, n, A, q_min, seed,
                             out_path);
    } catch (const plwe::attack_inapplicable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const plwe::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
