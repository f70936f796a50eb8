#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "plwe/context.hpp"
#include "plwe/fq.hpp"

namespace plwe {

/// F_{q^d} presented as F_q[x]/(x^d - rho); irreducibility of the modulus is
/// the caller's responsibility (guaranteed when the context comes from a
/// valid attack instance).
struct ExtContext {
    std::uint64_t q;
    std::uint64_t d;
    std::uint64_t rho;

    ExtContext(std::uint64_t q_, std::uint64_t d_, std::uint64_t rho_)
        : q(q_), d(d_), rho(rho_ % q_) {
        if (q < 2) throw std::invalid_argument("ExtContext: q must be >= 2");
        if (d < 1) throw std::invalid_argument("ExtContext: d must be >= 1");
        if (rho == 0) throw std::invalid_argument("ExtContext: rho must be nonzero");
    }
};

inline ExtContext ext_context(const AttackContext& ctx) {
    return ExtContext(ctx.q(), ctx.d(), ctx.rho());
}

/// Coordinates (a_0, ..., a_{d-1}) in the power basis {1, alpha, ..., alpha^(d-1)}.
using ExtElement = std::vector<std::uint64_t>;

inline void ext_require(const ExtContext& ctx, const ExtElement& x) {
    if (x.size() != ctx.d)
        throw std::invalid_argument("ExtElement: coefficient count != extension degree");
}

inline ExtElement ext_zero(const ExtContext& ctx) { return ExtElement(ctx.d, 0); }

inline ExtElement ext_from_base(const ExtContext& ctx, std::uint64_t c) {
    ExtElement x(ctx.d, 0);
    x[0] = c % ctx.q;
    return x;
}

inline ExtElement ext_add(const ExtContext& ctx, const ExtElement& x, const ExtElement& y) {
    ext_require(ctx, x);
    ext_require(ctx, y);
    ExtElement out(ctx.d);
    for (std::uint64_t i = 0; i < ctx.d; ++i) out[i] = add_mod(x[i], y[i], ctx.q);
    return out;
}

inline ExtElement ext_sub(const ExtContext& ctx, const ExtElement& x, const ExtElement& y) {
    ext_require(ctx, x);
    ext_require(ctx, y);
    ExtElement out(ctx.d);
    for (std::uint64_t i = 0; i < ctx.d; ++i) out[i] = sub_mod(x[i], y[i], ctx.q);
    return out;
}

inline ExtElement ext_scale(const ExtContext& ctx, const ExtElement& x, std::uint64_t c) {
    ext_require(ctx, x);
    ExtElement out(ctx.d);
    for (std::uint64_t i = 0; i < ctx.d; ++i) out[i] = mul_mod(x[i], c % ctx.q, ctx.q);
    return out;
}

/// Product in F_q[x]/(x^d - rho): schoolbook convolution, then indices >= d
/// fold down once via alpha^d = rho.
inline ExtElement ext_mul(const ExtContext& ctx, const ExtElement& x, const ExtElement& y) {
    ext_require(ctx, x);
    ext_require(ctx, y);
    std::vector<std::uint64_t> conv(2 * ctx.d, 0);
    for (std::uint64_t i = 0; i < ctx.d; ++i) {
        if (x[i] == 0) continue;
        for (std::uint64_t j = 0; j < ctx.d; ++j)
            conv[i + j] = add_mod(conv[i + j], mul_mod(x[i], y[j], ctx.q), ctx.q);
    }
    ExtElement out(ctx.d);
    for (std::uint64_t k = 0; k < ctx.d; ++k)
        out[k] = add_mod(conv[k], mul_mod(conv[k + ctx.d], ctx.rho, ctx.q), ctx.q);
    return out;
}

inline ExtElement ext_pow(const ExtContext& ctx, ExtElement base, std::uint64_t exp) {
    ext_require(ctx, base);
    ExtElement acc = ext_from_base(ctx, 1);
    while (exp > 0) {
        if (exp & 1) acc = ext_mul(ctx, acc, base);
        base = ext_mul(ctx, base, base);
        exp >>= 1;
    }
    return acc;
}

/// Closed-form trace of F_{q^d} over F_q for attack contexts (A = 2, d = p^(n-2)):
/// every basis power alpha^i with 0 < i < d has zero trace, so Tr(theta) = d*a_0.
inline std::uint64_t trace_fast(const ExtContext& ctx, const ExtElement& x) {
    ext_require(ctx, x);
    return mul_mod(ctx.d % ctx.q, x[0], ctx.q);
}

/// Exact trace as the sum of Frobenius conjugates theta^(q^i), i < d.
/// Validation-only path, guarded to small degrees. Throws if the sum does not
/// land in the base field, which would mean the context is not a field.
inline std::uint64_t trace_frobenius_oracle(const ExtContext& ctx, const ExtElement& x) {
    ext_require(ctx, x);
    if (ctx.d > 16)
        throw std::invalid_argument("trace_frobenius_oracle: d > 16 guard");
    ExtElement sum = ext_zero(ctx);
    ExtElement conj = x;
    for (std::uint64_t i = 0; i < ctx.d; ++i) {
        sum = ext_add(ctx, sum, conj);
        if (i + 1 < ctx.d) conj = ext_pow(ctx, conj, ctx.q);
    }
    for (std::uint64_t i = 1; i < ctx.d; ++i) {
        if (sum[i] != 0)
            throw std::logic_error("trace_frobenius_oracle: trace not in base field");
    }
    return sum[0];
}

/// Evaluation of a residue a(x) mod Phi_{p^n} at the root alpha of x^d - rho,
/// computed with full extension arithmetic (Horner in alpha).
inline ExtElement eval_at_alpha(const AttackContext& ctx, const std::vector<std::uint64_t>& a) {
    if (a.size() != ctx.N())
        throw std::invalid_argument("eval_at_alpha: coefficient count != N");
    ExtContext e = ext_context(ctx);
    ExtElement acc = ext_zero(e);
    for (std::size_t i = a.size(); i-- > 0;) {
        // acc = acc*alpha + a_i: multiply by alpha is a rotate with one rho fold.
        std::uint64_t top = acc[e.d - 1];
        for (std::size_t j = e.d - 1; j > 0; --j) acc[j] = acc[j - 1];
        acc[0] = mul_mod(top, e.rho, e.q);
        acc[0] = add_mod(acc[0], a[i] % e.q, e.q);
    }
    return acc;
}

/// Tr(a(alpha)*s) for a in R_q and s in F_{q^d}, via the closed double sum:
/// only exponents i+j that are multiples of d survive, and alpha^(vd) = rho^v.
inline std::uint64_t general_trace_pairing(const AttackContext& ctx,
                                           const std::vector<std::uint64_t>& a,
                                           const ExtElement& s) {
    if (a.size() != ctx.N())
        throw std::invalid_argument("general_trace_pairing: coefficient count != N");
    if (s.size() != ctx.d())
        throw std::invalid_argument("general_trace_pairing: s has wrong length");
    const std::uint64_t q = ctx.q();
    const std::uint64_t d = ctx.d();
    std::uint64_t t = mul_mod(mul_mod(d % q, a[0] % q, q), s[0] % q, q);
    for (std::uint64_t v = 1; v <= ctx.blocks(); ++v) {
        std::uint64_t inner = 0;
        for (std::uint64_t j = 0; j < d; ++j) {
            std::uint64_t idx = v * d - j;
            if (idx >= ctx.N()) continue;
            inner = add_mod(inner, mul_mod(s[j] % q, a[idx] % q, q), q);
        }
        std::uint64_t term = mul_mod(mul_mod(d % q, inner, q), ctx.rho_pow(v), q);
        t = add_mod(t, term, q);
    }
    return t;
}

} // namespace plwe
