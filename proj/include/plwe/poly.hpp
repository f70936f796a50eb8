#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "plwe/fq.hpp"

namespace plwe {

// Dense univariate polynomials over F_q, coefficients ascending by degree.
// The zero polynomial is the empty vector; nonzero polynomials carry no
// trailing zero coefficients once normalized.

using Poly = std::vector<std::uint64_t>;

inline void poly_normalize(Poly& f, std::uint64_t q) {
    for (auto& c : f) c %= q;
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline bool poly_is_zero(const Poly& f) {
    for (auto c : f) if (c != 0) return false;
    return true;
}

/// Degree, with deg(0) = -1.
inline long poly_deg(const Poly& f) {
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] != 0) return static_cast<long>(i);
    }
    return -1;
}

inline Poly poly_add(const Poly& a, const Poly& b, std::uint64_t q) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] % q : 0;
        std::uint64_t y = i < b.size() ? b[i] % q : 0;
        out[i] = add_mod(x, y, q);
    }
    poly_normalize(out, q);
    return out;
}

inline Poly poly_sub(const Poly& a, const Poly& b, std::uint64_t q) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] % q : 0;
        std::uint64_t y = i < b.size() ? b[i] % q : 0;
        out[i] = sub_mod(x, y, q);
    }
    poly_normalize(out, q);
    return out;
}

inline Poly poly_scale(const Poly& a, std::uint64_t c, std::uint64_t q) {
    Poly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mul_mod(a[i] % q, c % q, q);
    poly_normalize(out, q);
    return out;
}

/// Schoolbook product.
inline Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t q) {
    if (poly_is_zero(a) || poly_is_zero(b)) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] % q == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = add_mod(out[i + j], mul_mod(a[i] % q, b[j] % q, q), q);
    }
    poly_normalize(out, q);
    return out;
}

/// Euclidean division: a = quot * b + rem with deg(rem) < deg(b). Throws on b = 0.
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint64_t q) {
    long db = poly_deg(b);
    if (db < 0) throw std::domain_error("poly_divmod: division by zero polynomial");
    poly_normalize(a, q);
    long da = poly_deg(a);
    if (da < db) return {{}, a};
    Poly quot(static_cast<std::size_t>(da - db) + 1, 0);
    std::uint64_t lead_inv = inv_mod(b[static_cast<std::size_t>(db)] % q, q);
    for (long k = da; k >= db; --k) {
        std::uint64_t c = a[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        std::uint64_t factor = mul_mod(c, lead_inv, q);
        quot[static_cast<std::size_t>(k - db)] = factor;
        for (long j = 0; j <= db; ++j) {
            std::size_t idx = static_cast<std::size_t>(k - db + j);
            a[idx] = sub_mod(a[idx], mul_mod(factor, b[static_cast<std::size_t>(j)] % q, q), q);
        }
    }
    poly_normalize(a, q);
    poly_normalize(quot, q);
    return {quot, a};
}

inline Poly poly_mod(const Poly& a, const Poly& b, std::uint64_t q) {
    return poly_divmod(a, b, q).second;
}

/// Monic gcd.
inline Poly poly_gcd(Poly a, Poly b, std::uint64_t q) {
    poly_normalize(a, q);
    poly_normalize(b, q);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = poly_scale(a, inv_mod(a.back(), q), q);
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t q) {
    return poly_mod(poly_mul(a, b, q), f, q);
}

/// base^exp mod f by square-and-multiply.
inline Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& f, std::uint64_t q) {
    Poly acc{1};
    base = poly_mod(base, f, q);
    while (exp > 0) {
        if (exp & 1) acc = poly_mulmod(acc, base, f, q);
        base = poly_mulmod(base, base, f, q);
        exp >>= 1;
    }
    return acc;
}

/// Horner evaluation at a point of F_q.
inline std::uint64_t poly_eval(const Poly& f, std::uint64_t x, std::uint64_t q) {
    std::uint64_t acc = 0;
    x %= q;
    for (std::size_t i = f.size(); i-- > 0;)
        acc = add_mod(mul_mod(acc, x, q), f[i] % q, q);
    return acc;
}

} // namespace plwe
