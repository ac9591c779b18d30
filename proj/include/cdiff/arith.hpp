// Integer helpers shared by the field code and the closed-form checks.
#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdiff {

using u64 = std::uint64_t;

/// Exact p^e; throws std::overflow_error if the result does not fit in 64 bits.
inline u64 ipow(u64 base, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (base != 0 && r > std::numeric_limits<u64>::max() / base)
            throw std::overflow_error("ipow: " + std::to_string(base) + "^" + std::to_string(e) +
                                      " overflows 64 bits");
        r *= base;
    }
    return r;
}

inline u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

inline bool is_prime(u64 v) {
    if (v < 2) return false;
    for (u64 f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<u64> prime_divisors(u64 v) {
    std::vector<u64> out;
    for (u64 f = 2; f * f <= v; ++f) {
        if (v % f == 0) {
            out.push_back(f);
            while (v % f == 0) v /= f;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

/// 2-adic valuation; v2(0) is reported as 0.
inline unsigned v2(u64 v) {
    if (v == 0) return 0;
    unsigned t = 0;
    while ((v & 1u) == 0) {
        v >>= 1;
        ++t;
    }
    return t;
}

/// Modular exponentiation with 128-bit intermediates.
inline u64 powmod(u64 base, u64 e, u64 mod) {
    if (mod == 1) return 0;
    unsigned __int128 r = 1, b = base % mod;
    while (e != 0) {
        if (e & 1u) r = r * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return static_cast<u64>(r);
}

}  // namespace cdiff
