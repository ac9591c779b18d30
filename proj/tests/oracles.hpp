// Test-only reference computations that avoid the exp/log tables.
#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "cdiff/field.hpp"

namespace cdiff::oracle {

using Coeffs = std::vector<std::uint32_t>;

/// Schoolbook product of two residues mod a monic modulus, all over Z_p.
inline Coeffs mulmod(const Coeffs& a, const Coeffs& b, const std::vector<std::uint32_t>& mod, std::uint32_t p) {
    const std::size_t n = mod.size() - 1;
    std::vector<std::uint64_t> prod(2 * n, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    for (std::size_t deg = 2 * n; deg-- > n;) {
        const std::uint64_t t = prod[deg];
        if (t == 0) continue;
        for (std::size_t i = 0; i <= n; ++i)
            prod[deg - n + i] = (prod[deg - n + i] + p * p - t * mod[i] % p) % p;
    }
    return Coeffs(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n));
}

/// Monic polynomial (low coefficients + leading 1) has a root in Z_p.
inline bool has_root(const Coeffs& f, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

/// First monic polynomial of degree 2 or 3 without a root, in base-p order.
inline Coeffs first_rootless(std::uint32_t p, unsigned n) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
        Coeffs f(n + 1, 0);
        std::uint64_t v = low;
        for (unsigned i = 0; i < n; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        f[n] = 1;
        if (!has_root(f, p)) return f;
    }
    return {};
}

/// Set of nonzero squares, by squaring every element.
inline std::set<std::uint32_t> squares(const Field& f) {
    std::set<std::uint32_t> out;
    for (std::uint32_t i = 1; i < f.order(); ++i) out.insert(f.mul(Element{i}, Element{i}).code);
    return out;
}

inline int eta(const Field&, const std::set<std::uint32_t>& sq, Element x) {
    if (x.code == 0) return 0;
    return sq.count(x.code) ? 1 : -1;
}

}  // namespace cdiff::oracle
