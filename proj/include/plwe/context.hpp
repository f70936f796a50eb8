#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "plwe/fq.hpp"

namespace plwe {

/// One attack instance over R_q = F_q[x]/(Phi_{p^n}) with A = 2:
/// q = 1 + p^2*u prime, gcd(u, p) = 1, n > 2, and rho a fixed primitive
/// p^2-th root of unity (so x^d - rho is irreducible, d = p^(n-2)).
/// All sizes used by the attack are derived here once.
class AttackContext {
public:
    AttackContext(const FieldContext& field, std::uint64_t n, std::uint64_t rho)
        : field_(field), n_(n), rho_(rho % field.q()) {
        if (field.A() != 2)
            throw std::invalid_argument("AttackContext: attack requires A = 2");
        if (n <= field.A())
            throw std::invalid_argument("AttackContext: need n > A");
        const std::uint64_t p = field.p();
        m_ = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (m_ > (std::uint64_t(1) << 21) / p)
                throw std::invalid_argument("AttackContext: p^n too large");
            m_ *= p;
        }
        d_ = m_ / (p * p);           // p^(n-2)
        N_ = m_ / p * (p - 1);       // phi(p^n)
        blocks_ = p * (p - 1);       // phi(p^2) = dim R'_q
        if (pow_mod(rho_, p * p, q()) != 1 || pow_mod(rho_, p, q()) == 1)
            throw std::invalid_argument("AttackContext: rho must have exact order p^2");
        rho_pow_.resize(blocks_ + 1);
        rho_pow_[0] = 1;
        for (std::uint64_t v = 1; v <= blocks_; ++v)
            rho_pow_[v] = mul_mod(rho_pow_[v - 1], rho_, q());
        inv_d_ = inv_mod(d_ % q(), q());
    }

    /// Context with the default root choice g^((q-1)/p^2), g the smallest generator.
    static AttackContext with_default_root(const FieldContext& field, std::uint64_t n) {
        return AttackContext(field, n, default_primitive_root(field));
    }

    const FieldContext& field() const { return field_; }
    std::uint64_t q() const { return field_.q(); }
    std::uint64_t p() const { return field_.p(); }
    std::uint64_t A() const { return field_.A(); }
    std::uint64_t u() const { return field_.u(); }
    std::uint64_t n() const { return n_; }
    std::uint64_t m() const { return m_; }          // conductor p^n
    std::uint64_t N() const { return N_; }          // deg Phi_{p^n} = dim R_q
    std::uint64_t d() const { return d_; }          // extension degree p^(n-2)
    std::uint64_t blocks() const { return blocks_; } // p(p-1) coefficient blocks
    std::uint64_t rho() const { return rho_; }
    std::uint64_t rho_pow(std::uint64_t v) const { return rho_pow_.at(v); }
    std::uint64_t inv_d() const { return inv_d_; }

    friend bool operator==(const AttackContext& a, const AttackContext& b) {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.rho_ == b.rho_;
    }

private:
    FieldContext field_;
    std::uint64_t n_, rho_;
    std::uint64_t m_ = 0, N_ = 0, d_ = 0, blocks_ = 0, inv_d_ = 0;
    std::vector<std::uint64_t> rho_pow_;
};

} // namespace plwe
