#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plwe {

// Scalar arithmetic mod q on canonical representatives in [0, q).
// Moduli are limited to 63 bits so that products fit in __uint128_t.

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    std::uint64_t s = a + b;
    if (s >= q || s < a) s -= q;
    return s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return a >= b ? a - b : a + q - b;
}

inline std::uint64_t neg_mod(std::uint64_t a, std::uint64_t q) {
    return a == 0 ? 0 : q - a;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % q);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
    std::uint64_t acc = 1 % q;
    base %= q;
    while (exp > 0) {
        if (exp & 1) acc = mul_mod(acc, base, q);
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    return acc;
}

/// Inverse mod a prime q via Fermat. Throws on zero input.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q) {
    a %= q;
    if (a == 0) throw std::domain_error("inv_mod: zero has no inverse mod " + std::to_string(q));
    return pow_mod(a, q - 2, q);
}

/// Centered representative in (-q/2, q/2].
inline std::int64_t centered_rep(std::uint64_t v, std::uint64_t q) {
    return v <= q / 2 ? static_cast<std::int64_t>(v)
                      : static_cast<std::int64_t>(v) - static_cast<std::int64_t>(q);
}

/// Deterministic Miller-Rabin for n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    // This witness set decides primality for all n < 2^64.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

/// Trial-division factorization, (prime, exponent) pairs in ascending order.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize_u64(std::uint64_t x) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= x; d += (d == 2 ? 1 : 2)) {
        if (x % d == 0) {
            unsigned e = 0;
            while (x % d == 0) { x /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (x > 1) out.emplace_back(x, 1);
    return out;
}

/// An element of F_q held as its canonical representative.
/// Binary operations require both operands to share the same modulus.
class FqElement {
public:
    FqElement() = default;
    FqElement(std::uint64_t value, std::uint64_t modulus) : q_(modulus) {
        if (modulus < 2) throw std::invalid_argument("FqElement: modulus must be >= 2");
        v_ = value % modulus;
    }

    static FqElement from_int(std::int64_t value, std::uint64_t modulus) {
        if (modulus < 2) throw std::invalid_argument("FqElement: modulus must be >= 2");
        std::int64_t m = static_cast<std::int64_t>(modulus);
        std::int64_t r = value % m;
        if (r < 0) r += m;
        return FqElement(static_cast<std::uint64_t>(r), modulus);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return q_; }
    std::int64_t centered() const { require_bound(); return centered_rep(v_, q_); }
    bool is_zero() const { return v_ == 0; }

    FqElement operator-() const { require_bound(); return FqElement(neg_mod(v_, q_), q_); }

    friend FqElement operator+(const FqElement& a, const FqElement& b) {
        a.require_same(b);
        return FqElement(add_mod(a.v_, b.v_, a.q_), a.q_);
    }
    friend FqElement operator-(const FqElement& a, const FqElement& b) {
        a.require_same(b);
        return FqElement(sub_mod(a.v_, b.v_, a.q_), a.q_);
    }
    friend FqElement operator*(const FqElement& a, const FqElement& b) {
        a.require_same(b);
        return FqElement(mul_mod(a.v_, b.v_, a.q_), a.q_);
    }

    FqElement inv() const {
        require_bound();
        return FqElement(inv_mod(v_, q_), q_);
    }
    FqElement pow(std::uint64_t e) const {
        require_bound();
        return FqElement(pow_mod(v_, e, q_), q_);
    }

    friend bool operator==(const FqElement& a, const FqElement& b) {
        return a.v_ == b.v_ && a.q_ == b.q_;
    }
    friend bool operator!=(const FqElement& a, const FqElement& b) { return !(a == b); }

private:
    void require_bound() const {
        if (q_ < 2) throw std::invalid_argument("FqElement: operation on element without modulus");
    }
    void require_same(const FqElement& other) const {
        require_bound();
        if (q_ != other.q_)
            throw std::invalid_argument("FqElement: mismatched moduli " + std::to_string(q_) +
                                        " vs " + std::to_string(other.q_));
    }

    std::uint64_t v_ = 0;
    std::uint64_t q_ = 0;
};

/// Immutable description of an attack-shaped prime field: q prime,
/// q = 1 + p^A * u with p prime, A >= 1 and gcd(u, p) = 1.
class FieldContext {
public:
    FieldContext(std::uint64_t q, std::uint64_t p, std::uint64_t A) : q_(q), p_(p), A_(A) {
        if (!is_prime_u64(p)) throw std::invalid_argument("FieldContext: p must be prime");
        if (A < 1) throw std::invalid_argument("FieldContext: A must be >= 1");
        if (!is_prime_u64(q)) throw std::invalid_argument("FieldContext: q must be prime");
        std::uint64_t pa = 1;
        for (std::uint64_t i = 0; i < A; ++i) {
            if (pa > (std::uint64_t(1) << 62) / p)
                throw std::invalid_argument("FieldContext: p^A overflows");
            pa *= p;
        }
        pA_ = pa;
        if (q % pa != 1) throw std::invalid_argument("FieldContext: q != 1 mod p^A");
        u_ = (q - 1) / pa;
        if (u_ % p == 0) throw std::invalid_argument("FieldContext: u = (q-1)/p^A must be coprime to p");
    }

    std::uint64_t q() const { return q_; }
    std::uint64_t p() const { return p_; }
    std::uint64_t A() const { return A_; }
    std::uint64_t u() const { return u_; }
    std::uint64_t p_pow_A() const { return pA_; }

    friend bool operator==(const FieldContext& a, const FieldContext& b) {
        return a.q_ == b.q_ && a.p_ == b.p_ && a.A_ == b.A_;
    }

private:
    std::uint64_t q_, p_, A_, u_ = 0, pA_ = 0;
};

/// Smallest prime q >= q_min with q = 1 + p^A*u and gcd(u, p) = 1.
/// Deterministic; throws if none exists below the search ceiling.
inline FieldContext find_attack_prime(std::uint64_t p, std::uint64_t n, std::uint64_t A,
                                      std::uint64_t q_min) {
    if (!is_prime_u64(p)) throw std::invalid_argument("find_attack_prime: p must be prime");
    if (A < 1 || n <= A) throw std::invalid_argument("find_attack_prime: need n > A >= 1");
    if (q_min < 2) throw std::invalid_argument("find_attack_prime: q_min must be >= 2");

    std::uint64_t pa = 1;
    for (std::uint64_t i = 0; i < A; ++i) pa *= p;

    const std::uint64_t ceiling = 2 * q_min + 1000000;
    std::uint64_t u = q_min <= 1 ? 1 : (q_min - 2) / pa + 1; // smallest u with 1 + pa*u >= q_min
    for (; ; ++u) {
        std::uint64_t q = 1 + pa * u;
        if (q > ceiling)
            throw std::invalid_argument("find_attack_prime: no admissible prime below ceiling " +
                                        std::to_string(ceiling));
        if (u % p == 0) continue;
        if (q >= q_min && is_prime_u64(q)) return FieldContext(q, p, A);
    }
}

/// Exact multiplicative order of x in F_q^* (q prime, x != 0).
inline std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t q) {
    x %= q;
    if (x == 0) throw std::invalid_argument("multiplicative_order: zero");
    std::uint64_t order = q - 1;
    for (const auto& [f, e] : factorize_u64(q - 1)) {
        for (unsigned i = 0; i < e; ++i) {
            if (pow_mod(x, order / f, q) == 1) order /= f;
            else break;
        }
    }
    return order;
}

/// Smallest generator of F_q^*, by ascending trial against the prime divisors of q-1.
inline std::uint64_t smallest_generator(std::uint64_t q) {
    auto factors = factorize_u64(q - 1);
    for (std::uint64_t g = 2; g < q; ++g) {
        bool ok = true;
        for (const auto& [f, e] : factors) {
            if (pow_mod(g, (q - 1) / f, q) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("smallest_generator: no generator found (q not prime?)");
}

/// The phi(p^A) primitive p^A-th roots of unity in F_q, ascending.
inline std::vector<std::uint64_t> primitive_roots_of_unity(const FieldContext& ctx) {
    const std::uint64_t q = ctx.q();
    const std::uint64_t pa = ctx.p_pow_A();
    std::uint64_t g = smallest_generator(q);
    std::uint64_t w = pow_mod(g, (q - 1) / pa, q); // has exact order p^A
    std::vector<std::uint64_t> roots;
    std::uint64_t wj = 1;
    for (std::uint64_t j = 1; j <= pa; ++j) {
        wj = mul_mod(wj, w, q);
        if (j % ctx.p() != 0) roots.push_back(wj);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Default root choice for a context: the first power of the smallest generator,
/// rho = g^((q-1)/p^A).
inline std::uint64_t default_primitive_root(const FieldContext& ctx) {
    std::uint64_t g = smallest_generator(ctx.q());
    return pow_mod(g, (ctx.q() - 1) / ctx.p_pow_A(), ctx.q());
}

/// Rank of a matrix over F_q by Gaussian elimination. Rows may have any common length.
inline std::size_t rank_mod_q(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t q) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] % q == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        std::uint64_t inv = inv_mod(rows[rank][col] % q, q);
        for (std::size_t j = col; j < cols; ++j) rows[rank][j] = mul_mod(rows[rank][j] % q, inv, q);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank) continue;
            std::uint64_t factor = rows[i][col] % q;
            if (factor == 0) continue;
            for (std::size_t j = col; j < cols; ++j)
                rows[i][j] = sub_mod(rows[i][j] % q, mul_mod(factor, rows[rank][j], q), q);
        }
        ++rank;
    }
    return rank;
}

} // namespace plwe
