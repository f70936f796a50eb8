#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "plwe/fq.hpp"
#include "plwe/poly.hpp"

namespace plwe {

/// Instrumented evaluation record. `multiplications` counts products in the
/// data path through the point-dependent accumulator (the non-scalar count
/// that block splitting reduces); `scalar_multiplications` counts
/// coefficient-times-power products. Both are incremented at the operation
/// site, never computed from a formula, and depend only on degree and strategy.
struct EvalReport {
    std::string strategy;
    std::uint64_t degree = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t scalar_multiplications = 0;
    std::chrono::nanoseconds wall_time{0};
};

/// Horner's rule: deg(f) accumulator multiplications.
inline std::pair<std::uint64_t, EvalReport> horner_eval(const Poly& f, std::uint64_t x,
                                                        std::uint64_t q) {
    EvalReport report;
    report.strategy = "horner";
    long deg = poly_deg(f);
    report.degree = deg < 0 ? 0 : static_cast<std::uint64_t>(deg);
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t acc = 0;
    if (deg >= 0) {
        acc = f[static_cast<std::size_t>(deg)] % q;
        for (long i = deg - 1; i >= 0; --i) {
            acc = add_mod(mul_mod(acc, x % q, q), f[static_cast<std::size_t>(i)] % q, q);
            ++report.multiplications;
        }
    }
    report.wall_time = std::chrono::steady_clock::now() - t0;
    return {acc, report};
}

/// Baby-step giant-step splitting: blocks of size k = ceil(sqrt(deg)) are
/// combined with precomputed powers x^1..x^(k-1) (scalar products), then a
/// Horner pass in x^k stitches the t blocks together. Accumulator
/// multiplications: (k-1) power precomputations + (t-1) stitching steps,
/// about 2*sqrt(deg) against Horner's deg.
inline std::pair<std::uint64_t, EvalReport> block_eval(const Poly& f, std::uint64_t x,
                                                       std::uint64_t q) {
    EvalReport report;
    report.strategy = "block";
    long deg_l = poly_deg(f);
    if (deg_l < 1) {
        report.degree = 0;
        std::uint64_t value = deg_l < 0 ? 0 : f[0] % q;
        return {value, report};
    }
    const std::uint64_t deg = static_cast<std::uint64_t>(deg_l);
    report.degree = deg;

    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t k =
        static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(deg))));
    const std::uint64_t terms = deg + 1;
    const std::uint64_t t = (terms + k - 1) / k;

    std::vector<std::uint64_t> powers(k, 1); // x^0 .. x^(k-1)
    for (std::uint64_t i = 1; i < k; ++i) {
        powers[i] = mul_mod(powers[i - 1], x % q, q);
        ++report.multiplications;
    }
    std::uint64_t xk = k == 1 ? x % q : mul_mod(powers[k - 1], x % q, q);
    if (k > 1) ++report.multiplications;

    std::uint64_t acc = 0;
    for (std::uint64_t blk = t; blk-- > 0;) {
        std::uint64_t block_value = f[blk * k] % q;
        for (std::uint64_t j = 1; j < k && blk * k + j < terms; ++j) {
            block_value = add_mod(block_value, mul_mod(f[blk * k + j] % q, powers[j], q), q);
            ++report.scalar_multiplications;
        }
        if (blk + 1 == t) {
            acc = block_value;
        } else {
            acc = add_mod(mul_mod(acc, xk, q), block_value, q);
            ++report.multiplications;
        }
    }
    report.wall_time = std::chrono::steady_clock::now() - t0;
    return {acc, report};
}

/// Reference cost of the cited automorphism-based evaluation of s polynomials
/// of degree n over F_q: 2*s*(sqrt(n*(q-1)) + 1/2) products.
inline double automorphic_eval_bound(std::uint64_t s, std::uint64_t n, std::uint64_t q) {
    return 2.0 * static_cast<double>(s) *
           (std::sqrt(static_cast<double>(n) * static_cast<double>(q - 1)) + 0.5);
}

} // namespace plwe
