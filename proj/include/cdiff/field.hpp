// Exact arithmetic in GF(p^n) backed by exp/log tables.
//
// Elements are stored as their canonical code: the polynomial-basis
// coefficient vector (c_0, ..., c_{n-1}) read as a base-p integer with c_0
// least significant. Codes 0..q-1 enumerate the field in canonical order,
// which is also the order every sweep and report uses.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdiff/arith.hpp"

namespace cdiff {

inline constexpr u64 kDefaultSizeCap = u64{1} << 22;

/// A field element, identified by its canonical code.
struct Element {
    std::uint32_t code = 0;

    friend constexpr bool operator==(Element, Element) = default;
    friend constexpr auto operator<=>(Element, Element) = default;
};

namespace detail {

using Poly = std::vector<std::uint32_t>;  // low degree first, over Z_p

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// a mod m over Z_p; m must be monic.
inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t i = 0; i <= dm; ++i) {
                if (m[i] == 0) continue;
                const u64 sub = static_cast<u64>(lead) * m[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<u64>(a[i]) * b[j]) % p);
        }
    }
    return poly_mod(std::move(r), m, p);
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& m, std::uint32_t p) {
    Poly r{1};
    r = poly_mod(r, m, p);
    base = poly_mod(std::move(base), m, p);
    while (e != 0) {
        if (e & 1u) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline Poly decode(u64 code, std::uint32_t p, unsigned len) {
    Poly out(len, 0);
    for (unsigned i = 0; i < len; ++i) {
        out[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return out;
}

inline u64 encode(const Poly& a, std::uint32_t p) {
    u64 code = 0;
    for (std::size_t i = a.size(); i-- > 0;) code = code * p + a[i];
    return code;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    if (deg <= 1) return deg == 1;
    for (unsigned dd = 1; dd <= deg / 2; ++dd) {
        const u64 count = ipow(p, dd);
        for (u64 low = 0; low < count; ++low) {
            Poly g = decode(low, p, dd);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

/// GF(p^n) with a fixed modulus, generator and exp/log tables. Immutable and
/// cheap to copy; copies share the tables.
class Field {
public:
    /// Deterministic construction: minimal monic irreducible modulus by base-p
    /// encoding of its low coefficients, smallest primitive element.
    static Field build(u64 p, unsigned n, u64 size_cap = kDefaultSizeCap) {
        check_params(p, n, size_cap);
        const u64 count = ipow(p, n);
        const auto pp = static_cast<std::uint32_t>(p);
        for (u64 low = 0; low < count; ++low) {
            detail::Poly f = detail::decode(low, pp, n);
            f.push_back(1);
            if (detail::is_irreducible(f, pp)) return Field(pp, n, std::move(f), std::nullopt);
        }
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

    /// Construction with a caller-supplied modulus [c_0, ..., c_n] (monic,
    /// irreducible) and optionally a generator given by its coefficients.
    static Field with_modulus(u64 p, unsigned n, std::span<const std::int64_t> modulus,
                              std::optional<std::vector<std::int64_t>> generator = std::nullopt,
                              u64 size_cap = kDefaultSizeCap) {
        check_params(p, n, size_cap);
        if (modulus.size() != n + 1)
            throw std::invalid_argument("modulus must have n+1 coefficients");
        detail::Poly f;
        for (auto c : modulus) {
            if (c < 0 || static_cast<u64>(c) >= p)
                throw std::invalid_argument("modulus coefficient out of range [0, p)");
            f.push_back(static_cast<std::uint32_t>(c));
        }
        if (f.back() != 1) throw std::invalid_argument("modulus must be monic");
        if (!detail::is_irreducible(f, static_cast<std::uint32_t>(p)))
            throw std::invalid_argument("modulus is not irreducible over Z_p");
        std::optional<u64> gen_code;
        if (generator) {
            if (generator->size() != n)
                throw std::invalid_argument("generator must have n coefficients");
            detail::Poly g;
            for (auto c : *generator) {
                if (c < 0 || static_cast<u64>(c) >= p)
                    throw std::invalid_argument("generator coefficient out of range [0, p)");
                g.push_back(static_cast<std::uint32_t>(c));
            }
            gen_code = detail::encode(g, static_cast<std::uint32_t>(p));
        }
        return Field(static_cast<std::uint32_t>(p), n, std::move(f), gen_code);
    }

    std::uint32_t p() const { return t_->p; }
    unsigned n() const { return t_->n; }
    /// Number of elements p^n.
    std::uint32_t order() const { return t_->q; }
    /// Modulus coefficients c_0..c_n.
    const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }
    Element generator() const { return t_->gen; }

    Element zero() const { return Element{0}; }
    Element one() const { return Element{1}; }
    Element minus_one() const { return Element{t_->p - 1}; }
    /// Element with the given canonical code.
    Element element(u64 code) const {
        if (code >= t_->q) throw std::out_of_range("element code out of range");
        return Element{static_cast<std::uint32_t>(code)};
    }
    /// Image of an integer in the prime subfield.
    Element from_int(std::int64_t v) const {
        const auto p = static_cast<std::int64_t>(t_->p);
        return Element{static_cast<std::uint32_t>(((v % p) + p) % p)};
    }
    Element from_coeffs(std::span<const std::uint32_t> coeffs) const {
        if (coeffs.size() != t_->n) throw std::invalid_argument("expected n coefficients");
        u64 code = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] >= t_->p) throw std::invalid_argument("coefficient out of range [0, p)");
            code = code * t_->p + coeffs[i];
        }
        return Element{static_cast<std::uint32_t>(code)};
    }
    std::vector<std::uint32_t> coeffs(Element a) const { return detail::decode(a.code, t_->p, t_->n); }

    Element add(Element a, Element b) const {
        const auto& t = *t_;
        if (t.p == 2) return Element{a.code ^ b.code};
        if (t.n == 1) return Element{(a.code + b.code) % t.p};
        std::uint32_t x = a.code, y = b.code, r = 0;
        for (unsigned i = 0; i < t.n; ++i) {
            std::uint32_t s = x % t.p + y % t.p;
            if (s >= t.p) s -= t.p;
            r += s * t.pw[i];
            x /= t.p;
            y /= t.p;
        }
        return Element{r};
    }
    Element neg(Element a) const {
        const auto& t = *t_;
        if (t.p == 2) return a;
        if (t.n == 1) return Element{(t.p - a.code) % t.p};
        std::uint32_t x = a.code, r = 0;
        for (unsigned i = 0; i < t.n; ++i) {
            const std::uint32_t d = x % t.p;
            r += (d == 0 ? 0 : t.p - d) * t.pw[i];
            x /= t.p;
        }
        return Element{r};
    }
    Element sub(Element a, Element b) const {
        const auto& t = *t_;
        if (t.p == 2) return Element{a.code ^ b.code};
        if (t.n == 1) return Element{(a.code + t.p - b.code) % t.p};
        std::uint32_t x = a.code, y = b.code, r = 0;
        for (unsigned i = 0; i < t.n; ++i) {
            const std::uint32_t dx = x % t.p, dy = y % t.p;
            r += (dx >= dy ? dx - dy : dx + t.p - dy) * t.pw[i];
            x /= t.p;
            y /= t.p;
        }
        return Element{r};
    }
    Element mul(Element a, Element b) const {
        if (a.code == 0 || b.code == 0) return zero();
        const auto& t = *t_;
        return Element{t.exp[t.log[a.code] + t.log[b.code]]};
    }
    Element inv(Element a) const {
        if (a.code == 0) throw std::domain_error("inverse of zero");
        const auto& t = *t_;
        const std::uint32_t l = t.log[a.code];
        return Element{t.exp[l == 0 ? 0 : t.q - 1 - l]};
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    /// a^e with pow(0, 0) = 1 and pow(0, e) = 0 for e >= 1; the exponent is
    /// reduced mod q-1 only for nonzero a.
    Element pow(Element a, u64 e) const {
        if (a.code == 0) return e == 0 ? one() : zero();
        const auto& t = *t_;
        const u64 k = static_cast<u64>(t.log[a.code]) * (e % (t.q - 1)) % (t.q - 1);
        return Element{t.exp[k]};
    }

    /// Discrete logarithm to the generator; throws for zero.
    std::uint32_t log(Element a) const {
        if (a.code == 0) throw std::domain_error("log of zero");
        return t_->log[a.code];
    }
    /// generator^k.
    Element exp(u64 k) const { return Element{t_->exp[k % (t_->q - 1)]}; }

    Element frobenius(Element a) const { return pow(a, t_->p); }

    /// Absolute trace Tr(x) = x + x^p + ... + x^{p^{n-1}}, as a residue mod p.
    std::uint32_t trace(Element a) const {
        Element acc = zero(), cur = a;
        for (unsigned i = 0; i < t_->n; ++i) {
            acc = add(acc, cur);
            cur = frobenius(cur);
        }
        if (acc.code >= t_->p) throw std::logic_error("trace left the prime subfield");
        return acc.code;
    }

    /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    int quadratic_character(Element a) const {
        if (t_->p == 2) throw std::domain_error("quadratic character needs odd characteristic");
        if (a.code == 0) return 0;
        return (t_->log[a.code] % 2 == 0) ? 1 : -1;
    }

    /// True iff a lies in the subfield GF(p^e); e must divide n.
    bool in_subfield(Element a, unsigned e) const {
        if (e == 0 || t_->n % e != 0) throw std::invalid_argument("subfield degree must divide n");
        return pow(a, ipow(t_->p, e)) == a;
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.t_ == b.t_ || (a.p() == b.p() && a.n() == b.n() && a.modulus() == b.modulus() &&
                                a.generator() == b.generator());
    }

private:
    struct Tables {
        std::uint32_t p = 0;
        unsigned n = 0;
        std::uint32_t q = 0;
        std::vector<std::uint32_t> modulus;
        Element gen;
        std::vector<std::uint32_t> pw;   // p^i
        std::vector<std::uint32_t> exp;  // length 2(q-1) so log sums need no reduction
        std::vector<std::uint32_t> log;  // log[0] unused
    };

    static void check_params(u64 p, unsigned n, u64 size_cap) {
        if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
        if (n < 1) throw std::invalid_argument("extension degree n must be >= 1");
        u64 q = 1;
        for (unsigned i = 0; i < n; ++i) {
            q *= p;
            if (q > size_cap)
                throw std::length_error("field size " + std::to_string(p) + "^" + std::to_string(n) +
                                        " exceeds size cap " + std::to_string(size_cap));
        }
    }

    static bool is_primitive(const detail::Poly& g, const detail::Poly& f, std::uint32_t p, u64 q) {
        detail::Poly gg = g;
        detail::trim(gg);
        if (gg.empty()) return false;
        if (q == 2) return true;
        for (u64 r : prime_divisors(q - 1)) {
            detail::Poly v = detail::poly_powmod(gg, (q - 1) / r, f, p);
            if (v.size() == 1 && v[0] == 1) return false;
        }
        return true;
    }

    Field(std::uint32_t p, unsigned n, detail::Poly f, std::optional<u64> gen_code) {
        auto t = std::make_shared<Tables>();
        t->p = p;
        t->n = n;
        t->q = static_cast<std::uint32_t>(ipow(p, n));
        t->modulus = f;
        t->pw.resize(n);
        for (unsigned i = 0; i < n; ++i) t->pw[i] = static_cast<std::uint32_t>(ipow(p, i));

        const u64 q = t->q;
        u64 g_code = 0;
        if (gen_code) {
            if (!is_primitive(detail::decode(*gen_code, p, n), f, p, q))
                throw std::invalid_argument("supplied generator is not primitive");
            g_code = *gen_code;
        } else {
            for (g_code = 1; g_code < q; ++g_code)
                if (is_primitive(detail::decode(g_code, p, n), f, p, q)) break;
        }
        t->gen = Element{static_cast<std::uint32_t>(g_code)};

        const detail::Poly g = detail::decode(g_code, p, n);
        t->exp.assign(2 * (q - 1), 0);
        t->log.assign(q, 0);
        detail::Poly cur{1};
        for (u64 k = 0; k < q - 1; ++k) {
            const auto code = static_cast<std::uint32_t>(detail::encode(cur, p));
            t->exp[k] = code;
            t->exp[k + q - 1] = code;
            t->log[code] = static_cast<std::uint32_t>(k);
            cur = detail::poly_mulmod(cur, g, f, p);
        }
        t_ = std::move(t);
    }

    std::shared_ptr<const Tables> t_;
};

}  // namespace cdiff
