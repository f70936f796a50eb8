#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "plwe/attack.hpp"
#include "plwe/context.hpp"
#include "plwe/ring.hpp"
#include "plwe/rng.hpp"
#include "plwe/sample_io.hpp"

namespace plwe {

/// Deterministic sample-set generation. All draws flow from the master seed
/// through named substreams ("secret", "a-<i>", "e-<i>", "b-<i>"), so each
/// sample is reproducible independently of generation order.
inline SampleSet generate_sample_set(const AttackContext& ctx, OracleKind oracle,
                                     std::uint64_t M, double sigma, SigmaMeaning meaning,
                                     std::uint64_t seed) {
    SampleSet set;
    set.header.p = ctx.p();
    set.header.n = ctx.n();
    set.header.A = ctx.A();
    set.header.q = ctx.q();
    set.header.rho = ctx.rho();
    set.header.sigma = sigma;
    set.header.sigma_meaning = meaning;
    set.header.oracle = oracle;
    set.header.seed = seed;
    set.header.M = M;

    const double stddev = effective_stddev(sigma, meaning);
    if (oracle == OracleKind::plwe) {
        Rng s_rng(derive_stream_seed(seed, "secret"));
        RingElement secret = sample_uniform_Rq(ctx, s_rng);
        set.header.secret_commitment = plwe::secret_commitment(secret);
        for (std::uint64_t i = 0; i < M; ++i) {
            Rng a_rng(derive_stream_seed(seed, "a-" + std::to_string(i)));
            Rng e_rng(derive_stream_seed(seed, "e-" + std::to_string(i)));
            set.samples.push_back(plwe_oracle(ctx, secret, stddev, a_rng, e_rng));
        }
    } else {
        set.header.secret_commitment = "none";
        for (std::uint64_t i = 0; i < M; ++i) {
            Rng a_rng(derive_stream_seed(seed, "a-" + std::to_string(i)));
            Rng b_rng(derive_stream_seed(seed, "b-" + std::to_string(i)));
            set.samples.push_back(uniform_oracle(ctx, a_rng, b_rng));
        }
    }
    return set;
}

/// Regenerate from a header alone; bit-exact against the original samples.
inline SampleSet regenerate_sample_set(const SampleSetHeader& h) {
    AttackContext ctx = context_from_header(h);
    return generate_sample_set(ctx, h.oracle, h.M, h.sigma, h.sigma_meaning, h.seed);
}

struct AttackOutcome {
    Verdict verdict;
    std::uint64_t sigma_card = 0;
    double success_prob = 0;
    MultBudget budget;
    double attack_seconds = 0;
};

/// Build the smallness region for a loaded set and run the trace attack on it.
inline AttackOutcome run_attack(const SampleSet& set, double cutoff) {
    AttackContext ctx = context_from_header(set.header);
    const double stddev = effective_stddev(set.header.sigma, set.header.sigma_meaning);
    SmallnessRegion region =
        build_smallness_region(ctx.p(), stddev, cutoff, ctx.rho(), ctx.q());
    AttackOutcome out;
    out.sigma_card = region.cardinality;
    out.success_prob = success_probability(region.cardinality, ctx.q(), set.header.M);
    out.budget = multiplication_budget(ctx.p(), ctx.q(), set.header.M);
    auto t0 = std::chrono::steady_clock::now();
    out.verdict = trace_decision_attack(set.samples, region, ctx);
    out.attack_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

struct ExperimentConfig {
    std::uint64_t p = 2, n = 10, A = 2;
    std::uint64_t q_min = 2;
    double sigma = 8;
    SigmaMeaning sigma_meaning = SigmaMeaning::stddev;
    double cutoff = 2;
    std::uint64_t M = 10;
    std::uint64_t ntests = 5;
    std::uint64_t seed = 0;
};

struct ExperimentRun {
    OracleKind oracle = OracleKind::plwe;
    std::uint64_t index = 0;
    VerdictKind verdict = VerdictKind::not_plwe;
    std::uint64_t survivor_count = 0;
    std::uint64_t mult_count = 0;
    double gen_seconds = 0;
    double attack_seconds = 0;
    bool failure = false;
};

/// Full experiment record: a PLWE-oracle run fails unless the verdict is the
/// single-survivor one; a uniform-oracle run fails unless the survivor set is
/// empty.
struct ExperimentReport {
    ExperimentConfig config;
    std::uint64_t q = 0, u = 0, rho = 0, N = 0, m = 0;
    std::uint64_t sigma_card = 0;
    double success_prob = 0;
    MultBudget budget;
    std::vector<ExperimentRun> runs;
    std::uint64_t plwe_failures = 0;
    std::uint64_t uniform_failures = 0;
    double total_gen_seconds = 0;
    double total_attack_seconds = 0;
};

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    FieldContext field = find_attack_prime(cfg.p, cfg.n, cfg.A, cfg.q_min);
    AttackContext ctx = AttackContext::with_default_root(field, cfg.n);
    const double stddev = effective_stddev(cfg.sigma, cfg.sigma_meaning);
    SmallnessRegion region =
        build_smallness_region(ctx.p(), stddev, cfg.cutoff, ctx.rho(), ctx.q());

    ExperimentReport report;
    report.config = cfg;
    report.q = ctx.q();
    report.u = ctx.u();
    report.rho = ctx.rho();
    report.N = ctx.N();
    report.m = ctx.m();
    report.sigma_card = region.cardinality;
    report.success_prob = success_probability(region.cardinality, ctx.q(), cfg.M);
    report.budget = multiplication_budget(ctx.p(), ctx.q(), cfg.M);

    auto one_run = [&](OracleKind oracle, std::uint64_t index) {
        ExperimentRun run;
        run.oracle = oracle;
        run.index = index;
        std::string label = std::string("run-") + to_string(oracle) + "-" + std::to_string(index);
        std::uint64_t run_seed = derive_stream_seed(cfg.seed, label);

        auto g0 = std::chrono::steady_clock::now();
        SampleSet set =
            generate_sample_set(ctx, oracle, cfg.M, cfg.sigma, cfg.sigma_meaning, run_seed);
        run.gen_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - g0).count();

        auto a0 = std::chrono::steady_clock::now();
        Verdict v = trace_decision_attack(set.samples, region, ctx);
        run.attack_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - a0).count();

        run.verdict = v.kind;
        run.survivor_count = v.surviving_guesses.size();
        run.mult_count = v.mult_count;
        run.failure = oracle == OracleKind::plwe ? v.kind != VerdictKind::plwe
                                                 : v.kind != VerdictKind::not_plwe;
        return run;
    };

    for (std::uint64_t i = 0; i < cfg.ntests; ++i) {
        ExperimentRun run = one_run(OracleKind::plwe, i);
        report.plwe_failures += run.failure ? 1 : 0;
        report.total_gen_seconds += run.gen_seconds;
        report.total_attack_seconds += run.attack_seconds;
        report.runs.push_back(run);
    }
    for (std::uint64_t i = 0; i < cfg.ntests; ++i) {
        ExperimentRun run = one_run(OracleKind::uniform, i);
        report.uniform_failures += run.failure ? 1 : 0;
        report.total_gen_seconds += run.gen_seconds;
        report.total_attack_seconds += run.attack_seconds;
        report.runs.push_back(run);
    }
    return report;
}

} // namespace plwe
