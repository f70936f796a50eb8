#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "plwe/context.hpp"
#include "plwe/fq.hpp"
#include "plwe/rng.hpp"

namespace plwe {

/// Residue in R_q = F_q[x]/(Phi_{p^n}): exactly N coefficients, ascending degree.
using RingElement = std::vector<std::uint64_t>;

inline void ring_require(const AttackContext& ctx, const RingElement& x) {
    if (x.size() != ctx.N())
        throw std::invalid_argument("RingElement: coefficient count != N");
}

inline RingElement ring_zero(const AttackContext& ctx) { return RingElement(ctx.N(), 0); }

inline RingElement ring_from_constant(const AttackContext& ctx, std::uint64_t c) {
    RingElement x(ctx.N(), 0);
    x[0] = c % ctx.q();
    return x;
}

inline RingElement ring_add(const AttackContext& ctx, const RingElement& x, const RingElement& y) {
    ring_require(ctx, x);
    ring_require(ctx, y);
    RingElement out(ctx.N());
    for (std::uint64_t i = 0; i < ctx.N(); ++i) out[i] = add_mod(x[i], y[i], ctx.q());
    return out;
}

inline RingElement ring_sub(const AttackContext& ctx, const RingElement& x, const RingElement& y) {
    ring_require(ctx, x);
    ring_require(ctx, y);
    RingElement out(ctx.N());
    for (std::uint64_t i = 0; i < ctx.N(); ++i) out[i] = sub_mod(x[i], y[i], ctx.q());
    return out;
}

/// Product in R_q: schoolbook convolution, then repeated rewrite of the top
/// term via x^N = -sum_{i=0}^{p-2} x^(i*p^(n-1)) (negacyclic x^N = -1 when p = 2).
/// Processing exponents downward terminates because every rewrite target is
/// strictly below the exponent being eliminated.
inline RingElement ring_mul(const AttackContext& ctx, const RingElement& x, const RingElement& y) {
    ring_require(ctx, x);
    ring_require(ctx, y);
    const std::uint64_t q = ctx.q();
    const std::uint64_t N = ctx.N();
    const std::uint64_t step = ctx.m() / ctx.p(); // p^(n-1)
    std::vector<std::uint64_t> conv(2 * N - 1, 0);
    for (std::uint64_t i = 0; i < N; ++i) {
        if (x[i] == 0) continue;
        const std::uint64_t xi = x[i];
        for (std::uint64_t j = 0; j < N; ++j)
            conv[i + j] = add_mod(conv[i + j], mul_mod(xi, y[j], q), q);
    }
    for (std::uint64_t k = 2 * N - 2; k >= N; --k) {
        std::uint64_t c = conv[k];
        if (c == 0) continue;
        conv[k] = 0;
        for (std::uint64_t i = 0; i + 1 < ctx.p(); ++i) {
            std::uint64_t t = k - N + i * step;
            conv[t] = sub_mod(conv[t], c, q);
        }
    }
    conv.resize(N);
    return conv;
}

/// Membership in R_{q,0} = { a : a(alpha) lies in F_q }: for every offset
/// j in {1, ..., d-1} the block sum sum_v a_{v*d+j} * rho^v must vanish.
inline bool membership_R0(const AttackContext& ctx, const RingElement& a) {
    ring_require(ctx, a);
    const std::uint64_t q = ctx.q();
    for (std::uint64_t j = 1; j < ctx.d(); ++j) {
        std::uint64_t sum = 0;
        for (std::uint64_t v = 0; v < ctx.blocks(); ++v)
            sum = add_mod(sum, mul_mod(a[v * ctx.d() + j], ctx.rho_pow(v), q), q);
        if (sum != 0) return false;
    }
    return true;
}

/// a(alpha) for a member of R_{q,0}, as the base-field value sum_v a_{v*d} rho^v.
inline std::uint64_t eval_R0_at_alpha(const AttackContext& ctx, const RingElement& a) {
    ring_require(ctx, a);
    std::uint64_t sum = 0;
    for (std::uint64_t v = 0; v < ctx.blocks(); ++v)
        sum = add_mod(sum, mul_mod(a[v * ctx.d()], ctx.rho_pow(v), ctx.q()), ctx.q());
    return sum;
}

inline RingElement sample_uniform_Rq(const AttackContext& ctx, Rng& rng) {
    RingElement a(ctx.N());
    for (auto& c : a) c = rng.uniform_below(ctx.q());
    return a;
}

/// Uniform draw from R_{q,0}. The coefficients at indices v*d are free; in
/// each offset block j >= 1 the first blocks-1 coefficients are free and the
/// last one is solved from the vanishing constraint. This parameterizes
/// R_{q,0} bijectively by q^(N - d + 1) free coordinates, so the output is
/// uniform on the subring.
inline RingElement sample_uniform_R0(const AttackContext& ctx, Rng& rng) {
    const std::uint64_t q = ctx.q();
    const std::uint64_t d = ctx.d();
    const std::uint64_t B = ctx.blocks();
    RingElement a(ctx.N(), 0);
    for (std::uint64_t v = 0; v < B; ++v) a[v * d] = rng.uniform_below(q);
    const std::uint64_t last_inv = inv_mod(ctx.rho_pow(B - 1), q);
    for (std::uint64_t j = 1; j < d; ++j) {
        std::uint64_t sum = 0;
        for (std::uint64_t v = 0; v + 1 < B; ++v) {
            a[v * d + j] = rng.uniform_below(q);
            sum = add_mod(sum, mul_mod(a[v * d + j], ctx.rho_pow(v), q), q);
        }
        a[(B - 1) * d + j] = mul_mod(neg_mod(sum, q), last_inv, q);
    }
    return a;
}

/// Coefficient-wise rounded Gaussian mod q; sigma is the standard deviation.
inline RingElement sample_gaussian_error(const AttackContext& ctx, double sigma, Rng& rng) {
    if (sigma < 0) throw std::invalid_argument("sample_gaussian_error: sigma must be >= 0");
    const std::uint64_t q = ctx.q();
    RingElement e(ctx.N());
    for (auto& c : e) {
        std::int64_t v = sigma == 0 ? 0 : rng.gaussian_int(sigma);
        c = FqElement::from_int(v, q).value();
    }
    return e;
}

/// One decision-problem sample (a, b) with a constrained to R_{q,0}.
struct Sample {
    RingElement a;
    RingElement b;
};

/// Its image in R'_q = F_q[x]/(Phi_{p^2}): the coefficients at indices j*d.
struct ReducedSample {
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> b;
};

/// PLWE oracle: a uniform on R_{q,0}, e rounded Gaussian, b = a*s + e.
/// Separate draw streams keep per-sample generation order-independent.
inline Sample plwe_oracle(const AttackContext& ctx, const RingElement& secret, double sigma,
                          Rng& a_rng, Rng& e_rng) {
    ring_require(ctx, secret);
    Sample s;
    s.a = sample_uniform_R0(ctx, a_rng);
    RingElement e = sample_gaussian_error(ctx, sigma, e_rng);
    s.b = ring_add(ctx, ring_mul(ctx, s.a, secret), e);
    return s;
}

/// Uniform oracle: a uniform on R_{q,0}, b uniform on all of R_q.
inline Sample uniform_oracle(const AttackContext& ctx, Rng& a_rng, Rng& b_rng) {
    Sample s;
    s.a = sample_uniform_R0(ctx, a_rng);
    s.b = sample_uniform_Rq(ctx, b_rng);
    return s;
}

inline ReducedSample reduce_sample(const AttackContext& ctx, const Sample& s) {
    ring_require(ctx, s.a);
    ring_require(ctx, s.b);
    ReducedSample r;
    r.a.resize(ctx.blocks());
    r.b.resize(ctx.blocks());
    for (std::uint64_t j = 0; j < ctx.blocks(); ++j) {
        r.a[j] = s.a[j * ctx.d()];
        r.b[j] = s.b[j * ctx.d()];
    }
    return r;
}

/// Rows of the linear system cutting R_{q,0} out of R_q: one row per offset
/// j in {1, ..., d-1}, with entry rho^v at column v*d+j.
inline std::vector<std::vector<std::uint64_t>> membership_constraint_matrix(
    const AttackContext& ctx) {
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::uint64_t j = 1; j < ctx.d(); ++j) {
        std::vector<std::uint64_t> row(ctx.N(), 0);
        for (std::uint64_t v = 0; v < ctx.blocks(); ++v)
            row[v * ctx.d() + j] = ctx.rho_pow(v);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace plwe
