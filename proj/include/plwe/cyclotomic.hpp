#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "plwe/fq.hpp"
#include "plwe/poly.hpp"

namespace plwe {

/// Phi_{p^n}(x) = sum_{i=0}^{p-1} x^{i*p^(n-1)}, coefficients 0/1,
/// degree phi(p^n) = p^(n-1)(p-1). Valid over the integers, hence mod any q.
inline Poly cyclotomic_poly(std::uint64_t p, std::uint64_t n) {
    if (!is_prime_u64(p)) throw std::invalid_argument("cyclotomic_poly: p must be prime");
    if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be >= 1");
    std::uint64_t p_n1 = 1; // p^(n-1)
    for (std::uint64_t i = 1; i < n; ++i) {
        if (p_n1 > (std::uint64_t(1) << 21) / p)
            throw std::invalid_argument("cyclotomic_poly: p^n too large");
        p_n1 *= p;
    }
    Poly f(p_n1 * (p - 1) + 1, 0);
    for (std::uint64_t i = 0; i < p; ++i) f[i * p_n1] = 1;
    return f;
}

/// The factorization Phi_{p^n} = prod_{rho} (x^{p^(n-A)} - rho) over F_q,
/// one factor per primitive p^A-th root of unity rho. Construction verifies
/// the binomial product against Phi_{p^n} exactly.
class CyclotomicFactorization {
public:
    CyclotomicFactorization(const FieldContext& ctx, std::uint64_t n)
        : p_(ctx.p()), n_(n), A_(ctx.A()), q_(ctx.q()) {
        if (n <= ctx.A())
            throw std::invalid_argument("CyclotomicFactorization: need n > A");
        factor_degree_ = 1;
        for (std::uint64_t i = 0; i < n - ctx.A(); ++i) factor_degree_ *= ctx.p();
        rhos_ = primitive_roots_of_unity(ctx);
        for (auto rho : rhos_) {
            if (pow_mod(rho, ctx.p_pow_A(), q_) != 1 ||
                pow_mod(rho, ctx.p_pow_A() / ctx.p(), q_) == 1)
                throw std::logic_error("CyclotomicFactorization: root order check failed");
        }
        verify_closure();
    }

    std::uint64_t p() const { return p_; }
    std::uint64_t n() const { return n_; }
    std::uint64_t A() const { return A_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t factor_degree() const { return factor_degree_; }
    const std::vector<std::uint64_t>& rhos() const { return rhos_; }

    /// Dense form of the factor x^factor_degree - rho.
    Poly factor_poly(std::uint64_t rho) const {
        Poly f(factor_degree_ + 1, 0);
        f[0] = neg_mod(rho % q_, q_);
        f[factor_degree_] = 1;
        return f;
    }

private:
    // Sparse product of the binomials; every exponent is a multiple of the
    // factor degree, so the support stays at phi(p^A)+1 terms.
    void verify_closure() const {
        std::map<std::uint64_t, std::uint64_t> acc{{0, 1}};
        for (auto rho : rhos_) {
            std::map<std::uint64_t, std::uint64_t> next;
            for (const auto& [e, c] : acc) {
                next[e + factor_degree_] = add_mod(next[e + factor_degree_], c, q_);
                next[e] = sub_mod(next[e], mul_mod(c, rho, q_), q_);
            }
            for (auto it = next.begin(); it != next.end();)
                it = it->second == 0 ? next.erase(it) : std::next(it);
            acc = std::move(next);
        }
        std::uint64_t p_n1 = 1;
        for (std::uint64_t i = 1; i < n_; ++i) p_n1 *= p_;
        std::map<std::uint64_t, std::uint64_t> phi;
        for (std::uint64_t i = 0; i < p_; ++i) phi[i * p_n1] = 1;
        if (acc != phi)
            throw std::logic_error("CyclotomicFactorization: binomial product != Phi_{p^n} mod q");
    }

    std::uint64_t p_, n_, A_, q_;
    std::uint64_t factor_degree_ = 0;
    std::vector<std::uint64_t> rhos_;
};

inline CyclotomicFactorization factor_prime_power_cyclotomic(const FieldContext& ctx,
                                                             std::uint64_t n) {
    return CyclotomicFactorization(ctx, n);
}

/// Irreducibility over F_q by the gcd criterion: f (monic, degree D) is
/// irreducible iff gcd(f, x^(q^i) - x) = 1 for all 1 <= i <= D/2, since that
/// gcd collects the irreducible factors of f whose degree divides i.
inline bool brute_irreducibility_check(const Poly& f_in, std::uint64_t q) {
    Poly f = f_in;
    poly_normalize(f, q);
    long deg = poly_deg(f);
    if (deg < 1) return false;
    if (deg > 64) throw std::invalid_argument("brute_irreducibility_check: degree > 64 guard");
    if (f.back() != 1) f = poly_scale(f, inv_mod(f.back(), q), q);
    if (deg == 1) return true;

    Poly h{0, 1}; // x
    for (long i = 1; i <= deg / 2; ++i) {
        h = poly_powmod(h, q, f, q); // x^(q^i) mod f
        Poly diff = poly_sub(h, Poly{0, 1}, q);
        Poly g = poly_gcd(f, diff, q);
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

} // namespace plwe
