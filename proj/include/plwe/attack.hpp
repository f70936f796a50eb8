#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "plwe/context.hpp"
#include "plwe/errors.hpp"
#include "plwe/fq.hpp"
#include "plwe/ring.hpp"

namespace plwe {

/// The lookup set Sigma of F_q values that the scaled trace of a Gaussian
/// error takes when every contributing coefficient stays within c*sigma:
/// Sigma = { sum_{j<p(p-1)} e_j rho^j : e_j integers in [-floor(c*sigma), floor(c*sigma)] }.
struct SmallnessRegion {
    std::unordered_set<std::uint64_t> members;
    std::uint64_t cardinality = 0;
    double sigma = 0;
    double cutoff = 0;
    std::int64_t halfwidth = 0;

    bool contains(std::uint64_t v) const { return members.count(v) != 0; }
};

/// Exhaustive enumeration of Sigma, digit by digit; duplicates collapse as
/// they appear so the working set never exceeds q entries. Throws
/// attack_inapplicable when Sigma covers all of F_q, in which case the
/// membership test carries no information.
inline SmallnessRegion build_smallness_region(std::uint64_t p, double sigma, double cutoff,
                                              std::uint64_t rho, std::uint64_t q) {
    if (!is_prime_u64(p)) throw std::invalid_argument("build_smallness_region: p must be prime");
    if (sigma < 0 || cutoff < 0)
        throw std::invalid_argument("build_smallness_region: sigma and cutoff must be >= 0");
    const std::uint64_t digits = p * (p - 1);
    if (digits > 16)
        throw std::invalid_argument("build_smallness_region: p too large to enumerate");
    const std::int64_t w = static_cast<std::int64_t>(std::floor(cutoff * sigma));
    if (w > 1000000)
        throw std::invalid_argument("build_smallness_region: window too wide to enumerate");

    std::unordered_set<std::uint64_t> acc{0};
    std::uint64_t rho_j = 1;
    for (std::uint64_t j = 0; j < digits; ++j) {
        std::unordered_set<std::uint64_t> next;
        for (std::int64_t e = -w; e <= w; ++e) {
            std::uint64_t term = mul_mod(FqElement::from_int(e, q).value(), rho_j, q);
            for (std::uint64_t s : acc) next.insert(add_mod(s, term, q));
        }
        acc = std::move(next);
        rho_j = mul_mod(rho_j, rho % q, q);
    }

    SmallnessRegion region;
    region.members = std::move(acc);
    region.cardinality = region.members.size();
    region.sigma = sigma;
    region.cutoff = cutoff;
    region.halfwidth = w;
    if (region.cardinality >= q)
        throw attack_inapplicable("smallness region covers F_q (|Sigma| = " +
                                  std::to_string(region.cardinality) + " >= q = " +
                                  std::to_string(q) + ")");
    return region;
}

enum class VerdictKind { plwe, not_plwe, not_enough_samples };

inline const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::plwe: return "PLWE";
        case VerdictKind::not_plwe: return "NOT PLWE";
        case VerdictKind::not_enough_samples: return "NOT ENOUGH SAMPLES";
    }
    return "?";
}

/// Decision outcome: no surviving guess means the samples cannot all be PLWE,
/// exactly one means PLWE, several means the sample set was too small to decide.
struct Verdict {
    VerdictKind kind = VerdictKind::not_plwe;
    std::vector<std::uint64_t> surviving_guesses; // sorted
    std::uint64_t mult_count = 0;
};

inline Verdict make_verdict(std::vector<std::uint64_t> survivors, std::uint64_t mult_count) {
    std::sort(survivors.begin(), survivors.end());
    Verdict v;
    v.kind = survivors.empty()  ? VerdictKind::not_plwe
             : survivors.size() == 1 ? VerdictKind::plwe
                                     : VerdictKind::not_enough_samples;
    v.surviving_guesses = std::move(survivors);
    v.mult_count = mult_count;
    return v;
}

/// Decision attack on the small ring R'_q: a guess g for s'(rho) survives iff
/// b'_i(rho) - a'_i(rho)*g falls in Sigma for every sample. Evaluations at rho
/// are cached per sample, so the guess loop costs one multiplication per
/// (guess, sample) pair tested.
inline Verdict root_decision_attack(const std::vector<ReducedSample>& samples,
                                    const SmallnessRegion& region, std::uint64_t rho,
                                    std::uint64_t q) {
    if (samples.empty())
        throw std::invalid_argument("root_decision_attack: empty sample list");
    if (region.cardinality >= q)
        throw attack_inapplicable("root_decision_attack: |Sigma| >= q");

    std::uint64_t mults = 0;
    std::vector<std::uint64_t> a_rho(samples.size()), b_rho(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        std::uint64_t av = 0, bv = 0;
        for (std::size_t k = s.a.size(); k-- > 0;) {
            av = add_mod(mul_mod(av, rho, q), s.a[k] % q, q);
            bv = add_mod(mul_mod(bv, rho, q), s.b[k] % q, q);
            mults += 2;
        }
        a_rho[i] = av;
        b_rho[i] = bv;
    }

    std::vector<std::uint64_t> survivors;
    for (std::uint64_t g = 0; g < q; ++g) {
        bool alive = true;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            std::uint64_t t = sub_mod(b_rho[i], mul_mod(a_rho[i], g, q), q);
            ++mults;
            if (!region.contains(t)) { alive = false; break; }
        }
        if (alive) survivors.push_back(g);
    }
    return make_verdict(std::move(survivors), mults);
}

/// Decision attack on R_{q,0} x R_q via the trace: a guess g survives iff
/// (1/d)*Tr(b_i(alpha)) - a_i(alpha)*g falls in Sigma for every sample, with
/// Tr(b(alpha)) = d * sum_j b_{jd} rho^j and a(alpha) = sum_v a_{vd} rho^v.
/// Equivalent, sample by sample, to root_decision_attack on the reduced set.
inline Verdict trace_decision_attack(const std::vector<Sample>& samples,
                                     const SmallnessRegion& region, const AttackContext& ctx) {
    if (samples.empty())
        throw std::invalid_argument("trace_decision_attack: empty sample list");
    const std::uint64_t q = ctx.q();
    if (region.cardinality >= q)
        throw attack_inapplicable("trace_decision_attack: |Sigma| >= q");

    std::uint64_t mults = 0;
    std::vector<std::uint64_t> a_alpha(samples.size()), tb(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!membership_R0(ctx, s.a))
            throw std::invalid_argument("trace_decision_attack: sample " + std::to_string(i) +
                                        " has a outside R_{q,0}");
        ring_require(ctx, s.b);
        std::uint64_t av = 0, bsum = 0;
        for (std::size_t j = ctx.blocks(); j-- > 0;) {
            av = add_mod(mul_mod(av, ctx.rho(), q), s.a[j * ctx.d()], q);
            bsum = add_mod(mul_mod(bsum, ctx.rho(), q), s.b[j * ctx.d()], q);
            mults += 2;
        }
        std::uint64_t trace_b = mul_mod(ctx.d() % q, bsum, q);
        tb[i] = mul_mod(ctx.inv_d(), trace_b, q);
        mults += 2;
        a_alpha[i] = av;
    }

    std::vector<std::uint64_t> survivors;
    for (std::uint64_t g = 0; g < q; ++g) {
        bool alive = true;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            std::uint64_t t = sub_mod(tb[i], mul_mod(a_alpha[i], g, q), q);
            ++mults;
            if (!region.contains(t)) { alive = false; break; }
        }
        if (alive) survivors.push_back(g);
    }
    return make_verdict(std::move(survivors), mults);
}

/// Probability that M uniform samples are all rejected for every guess,
/// i.e. that the attack flags a uniform instance: 1 - (|Sigma|/q)^M.
inline double success_probability(std::uint64_t sigma_card, std::uint64_t q, std::uint64_t M) {
    if (sigma_card >= q)
        throw std::invalid_argument("success_probability: need |Sigma| < q");
    if (M == 0) return 0.0;
    return 1.0 - std::pow(static_cast<double>(sigma_card) / static_cast<double>(q),
                          static_cast<double>(M));
}

/// Worst-case multiplication budgets for the trace attack over M samples and
/// q guesses: the square-root budget assumes fast degree-p(p-1) evaluation
/// per pair, the direct budget assumes plain per-pair evaluation. The
/// instrumented counter of trace_decision_attack stays below the direct one.
struct MultBudget {
    double sqrt_budget = 0;
    std::uint64_t direct_budget = 0;
};

inline MultBudget multiplication_budget(std::uint64_t p, std::uint64_t q, std::uint64_t M) {
    MultBudget b;
    if (M == 0) return b;
    double digits = static_cast<double>(p * (p - 1));
    b.sqrt_budget = (2.0 * std::sqrt(digits * static_cast<double>(q - 1)) + 2.0) *
                    static_cast<double>(M) * static_cast<double>(q);
    b.direct_budget = (p * (p - 1) + 1) * M * q;
    return b;
}

} // namespace plwe
