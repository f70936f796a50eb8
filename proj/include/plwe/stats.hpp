#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "plwe/attack.hpp"
#include "plwe/context.hpp"
#include "plwe/ring.hpp"
#include "plwe/rng.hpp"

namespace plwe {

/// Regularized upper incomplete gamma Q(a, x), series/continued-fraction split
/// in the usual way (series for x < a+1, Lentz's method otherwise).
inline double gamma_q_upper(double a, double x) {
    if (a <= 0 || x < 0) throw std::invalid_argument("gamma_q_upper: need a > 0, x >= 0");
    if (x == 0) return 1.0;
    const double gln = std::lgamma(a);
    const double eps = 1e-14;
    if (x < a + 1.0) {
        double ap = a;
        double del = 1.0 / a;
        double sum = del;
        for (int i = 0; i < 10000; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * eps) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    const double fpmin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

struct ChiSquareResult {
    double statistic = 0;
    std::uint64_t dof = 0;
    double pvalue = 1;
};

inline double chi_square_pvalue(double statistic, std::uint64_t dof) {
    if (dof == 0) throw std::invalid_argument("chi_square_pvalue: dof must be > 0");
    return gamma_q_upper(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

/// Goodness of fit of observed cell counts against the uniform distribution.
inline ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform: need >= 2 cells");
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw std::invalid_argument("chi_square_uniform: no observations");
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    ChiSquareResult r;
    for (auto c : counts) {
        double diff = static_cast<double>(c) - expected;
        r.statistic += diff * diff / expected;
    }
    r.dof = counts.size() - 1;
    r.pvalue = chi_square_pvalue(r.statistic, r.dof);
    return r;
}

struct UniformSumResult {
    std::vector<std::uint64_t> lambda;
    std::vector<std::uint64_t> counts;
    ChiSquareResult chi;
};

/// Empirical check that sum_i lambda_i X_i mod q is uniform when the X_i are
/// i.i.d. uniform on F_q and the lambda_i are fixed, not all zero.
inline UniformSumResult uniform_sum_test_with(std::uint64_t q,
                                              const std::vector<std::uint64_t>& lambda,
                                              std::uint64_t trials, std::uint64_t seed) {
    if (lambda.empty()) throw std::invalid_argument("uniform_sum_test: need >= 1 coefficient");
    bool any = false;
    for (auto l : lambda) any = any || (l % q != 0);
    if (!any)
        throw std::invalid_argument("uniform_sum_test: coefficients must not all be zero");
    if (trials < 10 * q) throw std::invalid_argument("uniform_sum_test: too few trials");

    Rng rng(derive_stream_seed(seed, "uniform-sum-draws"));
    UniformSumResult r;
    r.lambda = lambda;
    r.counts.assign(q, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t sum = 0;
        for (auto l : lambda)
            sum = add_mod(sum, mul_mod(l % q, rng.uniform_below(q), q), q);
        ++r.counts[sum];
    }
    r.chi = chi_square_uniform(r.counts);
    return r;
}

/// Same test with random coefficients (redrawn until not all zero).
inline UniformSumResult uniform_sum_test(std::uint64_t q, std::size_t n_terms,
                                         std::uint64_t trials, std::uint64_t seed) {
    if (n_terms == 0) throw std::invalid_argument("uniform_sum_test: need >= 1 term");
    Rng lrng(derive_stream_seed(seed, "uniform-sum-lambda"));
    std::vector<std::uint64_t> lambda(n_terms, 0);
    bool any = false;
    while (!any) {
        for (auto& l : lambda) {
            l = lrng.uniform_below(q);
            any = any || (l != 0);
        }
    }
    return uniform_sum_test_with(q, lambda, trials, seed);
}

struct SurvivalRateResult {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    std::uint64_t guess = 0;
    double rate = 0;
    double expected = 0;
    double standard_error = 0;
    double z = 0;
};

/// Empirical survival rate of one fixed guess against single uniform-oracle
/// samples: the test statistic b'(rho) - a'(rho)*g is uniform on F_q, so a
/// guess survives with probability |Sigma|/q per sample.
inline SurvivalRateResult survival_rate_test(const AttackContext& ctx,
                                             const SmallnessRegion& region, std::uint64_t guess,
                                             std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("survival_rate_test: trials must be > 0");
    SurvivalRateResult r;
    r.trials = trials;
    r.guess = guess % ctx.q();
    Rng a_rng(derive_stream_seed(seed, "survival-a"));
    Rng b_rng(derive_stream_seed(seed, "survival-b"));
    for (std::uint64_t t = 0; t < trials; ++t) {
        Sample s = uniform_oracle(ctx, a_rng, b_rng);
        ReducedSample red = reduce_sample(ctx, s);
        std::uint64_t av = 0, bv = 0;
        for (std::size_t k = red.a.size(); k-- > 0;) {
            av = add_mod(mul_mod(av, ctx.rho(), ctx.q()), red.a[k], ctx.q());
            bv = add_mod(mul_mod(bv, ctx.rho(), ctx.q()), red.b[k], ctx.q());
        }
        std::uint64_t stat = sub_mod(bv, mul_mod(av, r.guess, ctx.q()), ctx.q());
        if (region.contains(stat)) ++r.hits;
    }
    r.rate = static_cast<double>(r.hits) / static_cast<double>(trials);
    r.expected = static_cast<double>(region.cardinality) / static_cast<double>(ctx.q());
    r.standard_error = std::sqrt(r.expected * (1.0 - r.expected) / static_cast<double>(trials));
    r.z = r.standard_error == 0 ? 0 : (r.rate - r.expected) / r.standard_error;
    return r;
}

} // namespace plwe
