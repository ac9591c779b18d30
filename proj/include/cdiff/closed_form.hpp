// Closed-form companions to the exhaustive counts: gcd(p^k+1, p^n-1),
// Dickson polynomials and their preimage sizes, solution counts of
// z^{2^k+1} + z + beta = 0, zeros of the C_m sequence, the S_{i,j} cells
// and the Jacobsthal-type counts over GF(3^n).
//
// Every closed form here is paired with an enumeration. The enumeration is
// what gets returned; the formula is what gets checked.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdiff/arith.hpp"
#include "cdiff/field.hpp"

namespace cdiff {

// ---------------------------------------------------------------- gcd lemma

enum class GcdBranch { Binary, OddPOddRatio, OddPEvenRatio };

inline const char* to_string(GcdBranch b) {
    switch (b) {
        case GcdBranch::Binary: return "binary";
        case GcdBranch::OddPOddRatio: return "odd-p-odd-ratio";
        case GcdBranch::OddPEvenRatio: return "odd-p-even-ratio";
    }
    return "?";
}

struct GcdCase {
    u64 p = 0;
    unsigned k = 0, n = 0;
    u64 value = 0;
    GcdBranch branch = GcdBranch::Binary;
};

/// gcd(p^k + 1, p^n - 1) by the branch formula; throws std::logic_error if it
/// disagrees with the directly computed gcd.
inline GcdCase gcd_qk(u64 p, unsigned k, unsigned n) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (k < 1 || n < 1) throw std::invalid_argument("k and n must be >= 1");
    GcdCase out{p, k, n, 0, GcdBranch::Binary};
    const unsigned g = static_cast<unsigned>(gcd(k, n));
    if (p == 2) {
        out.branch = GcdBranch::Binary;
        out.value = (ipow(2, static_cast<unsigned>(gcd(2 * k, n))) - 1) / (ipow(2, g) - 1);
    } else if ((n / g) % 2 == 1) {
        out.branch = GcdBranch::OddPOddRatio;
        out.value = 2;
    } else {
        out.branch = GcdBranch::OddPEvenRatio;
        out.value = ipow(p, g) + 1;
    }
    const u64 direct = gcd(ipow(p, k) + 1, ipow(p, n) - 1);
    if (direct != out.value)
        throw std::logic_error("gcd_qk branch value " + std::to_string(out.value) + " != direct gcd " +
                               std::to_string(direct));
    return out;
}

// ---------------------------------------------------------------- Dickson

/// D_m(x) with second parameter 1: D_0 = 2, D_1 = x, D_{i+1} = x D_i - D_{i-1}.
/// Evaluated with the doubling form of the same recurrence,
/// D_{2i} = D_i^2 - 2 and D_{2i+1} = D_i D_{i+1} - x.
inline Element dickson_eval(const Field& f, u64 m, Element x) {
    const Element two = f.from_int(2);
    if (m == 0) return two;
    Element lo = x, hi = f.sub(f.mul(x, x), two);  // (D_1, D_2)
    int top = 63;
    while (((m >> top) & 1u) == 0) --top;
    for (int bit = top - 1; bit >= 0; --bit) {
        if ((m >> bit) & 1u) {
            lo = f.sub(f.mul(lo, hi), x);
            hi = f.sub(f.mul(hi, hi), two);
        } else {
            hi = f.sub(f.mul(lo, hi), x);
            lo = f.sub(f.mul(lo, lo), two);
        }
    }
    return lo;
}

struct DicksonParams {
    u64 d = 0;
    unsigned r = 0;   // 2^r exactly divides p^{2n} - 1
    u64 m_gcd = 0;    // gcd(d, p^n - 1)
    u64 lbar = 0;     // gcd(d, p^n + 1)
};

inline DicksonParams dickson_params(const Field& f, u64 d) {
    const u64 q = f.order();
    return DicksonParams{d, v2(q * q - 1), gcd(d, q - 1), gcd(d, q + 1)};
}

/// Which case of the five-way preimage-size statement a point falls in.
enum class PreimageBranch { SquareGeneric, NonSquareGeneric, SquareMinusTwo, NonSquareMinusTwo, Otherwise };

inline const char* to_string(PreimageBranch b) {
    switch (b) {
        case PreimageBranch::SquareGeneric: return "eta=1,D!=+-2";
        case PreimageBranch::NonSquareGeneric: return "eta=-1,D!=+-2";
        case PreimageBranch::SquareMinusTwo: return "eta=1,D=-2,1<=t<=r-2";
        case PreimageBranch::NonSquareMinusTwo: return "eta=-1,D=-2,1<=t<=r-2";
        case PreimageBranch::Otherwise: return "otherwise";
    }
    return "?";
}

struct DicksonPreimage {
    Element x0;
    Element value;             // D_d(x0)
    std::uint32_t count = 0;   // enumerated |D_d^{-1}(D_d(x0))|
    PreimageBranch branch = PreimageBranch::Otherwise;
    u64 predicted_twice = 0;   // twice the predicted size; odd values mean a non-integer prediction

    bool agrees() const { return predicted_twice == 2 * static_cast<u64>(count); }
};

/// Value table and preimage sizes of D_d over an odd-characteristic field.
class DicksonPreimages {
public:
    DicksonPreimages(Field f, u64 d) : f_(std::move(f)), params_(dickson_params(f_, d)) {
        if (f_.p() == 2) throw std::domain_error("Dickson preimage counts need odd characteristic");
        values_.resize(f_.order());
        sizes_.assign(f_.order(), 0);
        for (std::uint32_t i = 0; i < f_.order(); ++i) {
            values_[i] = dickson_eval(f_, d, Element{i});
            ++sizes_[values_[i].code];
        }
    }

    const DicksonParams& params() const { return params_; }
    Element value(Element x) const { return values_[x.code]; }

    /// Largest preimage size over all b.
    std::uint32_t max_preimage() const {
        std::uint32_t m = 0;
        for (auto s : sizes_) m = std::max(m, s);
        return m;
    }

    PreimageBranch branch(Element x0) const {
        const Element two = f_.from_int(2);
        const Element v = values_[x0.code];
        const int eta = f_.quadratic_character(f_.sub(f_.mul(x0, x0), f_.from_int(4)));
        const bool pm_two = v == two || v == f_.neg(two);
        if (!pm_two && eta == 1) return PreimageBranch::SquareGeneric;
        if (!pm_two && eta == -1) return PreimageBranch::NonSquareGeneric;
        const unsigned t = v2(params_.d);
        const bool t_in_range = t >= 1 && params_.r >= 2 && t <= params_.r - 2;
        if (v == f_.neg(two) && t_in_range && eta == 1) return PreimageBranch::SquareMinusTwo;
        if (v == f_.neg(two) && t_in_range && eta == -1) return PreimageBranch::NonSquareMinusTwo;
        return PreimageBranch::Otherwise;
    }

    DicksonPreimage at(Element x0) const {
        DicksonPreimage out;
        out.x0 = x0;
        out.value = values_[x0.code];
        out.count = sizes_[out.value.code];
        out.branch = branch(x0);
        switch (out.branch) {
            case PreimageBranch::SquareGeneric: out.predicted_twice = 2 * params_.m_gcd; break;
            case PreimageBranch::NonSquareGeneric: out.predicted_twice = 2 * params_.lbar; break;
            case PreimageBranch::SquareMinusTwo: out.predicted_twice = params_.m_gcd; break;
            case PreimageBranch::NonSquareMinusTwo: out.predicted_twice = params_.lbar; break;
            case PreimageBranch::Otherwise: out.predicted_twice = params_.m_gcd + params_.lbar; break;
        }
        return out;
    }

private:
    Field f_;
    DicksonParams params_;
    std::vector<Element> values_;
    std::vector<std::uint32_t> sizes_;  // indexed by value code
};

inline DicksonPreimage dickson_preimage_count(const Field& f, u64 d, Element x0) {
    return DicksonPreimages(f, d).at(x0);
}

// ---------------------------------------------------------------- Gold equation

/// Histogram over nonzero beta of the number of roots z in GF(2^n) of
/// z^{2^k+1} + z + beta = 0.
struct GoldDistribution {
    unsigned n = 0, k = 0;
    std::map<std::uint32_t, u64> counts;  // m -> M_m
    std::uint32_t zero_beta_roots = 0;    // roots at beta = 0
};

inline GoldDistribution gold_solution_distribution(unsigned n, unsigned k, u64 size_cap = kDefaultSizeCap) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const Field f = Field::build(2, n, size_cap);
    const u64 e = ipow(2, k) + 1;
    std::vector<std::uint32_t> roots(f.order(), 0);
    for (std::uint32_t z = 0; z < f.order(); ++z) ++roots[f.add(f.pow(Element{z}, e), Element{z}).code];
    GoldDistribution out{n, k, {}, roots[0]};
    for (std::uint32_t beta = 1; beta < f.order(); ++beta) ++out.counts[roots[beta]];
    return out;
}

/// Quoted values: M_0, M_1, M_3 when gcd(n, k) = 1; otherwise only
/// M_{2^d+1} with d = gcd(n, k) and m = n / d.
inline std::map<std::uint32_t, u64> gold_distribution_prediction(unsigned n, unsigned k) {
    const unsigned d = static_cast<unsigned>(gcd(n, k));
    std::map<std::uint32_t, u64> out;
    if (d == 1) {
        const u64 q = ipow(2, n);
        if (n % 2 == 1) {
            out[0] = (q + 1) / 3;
            out[1] = q / 2 - 1;
            out[3] = (q / 2 - 1) / 3;
        } else {
            out[0] = (q - 1) / 3;
            out[1] = q / 2;
            out[3] = (q / 2 - 2) / 3;
        }
        return out;
    }
    const unsigned m = n / d;
    const u64 num = (m % 2 == 1) ? ipow(2, (m - 1) * d) - 1 : ipow(2, (m - 1) * d) - ipow(2, d);
    out[static_cast<std::uint32_t>(ipow(2, d) + 1)] = num / (ipow(2, 2 * d) - 1);
    return out;
}

// ---------------------------------------------------------------- C_m sequence

/// C_m(x) over GF(2^n): C_1 = C_2 = 1, C_{i+2} = C_{i+1} + x^{2^{ik}} C_i.
inline Element cm_eval(const Field& f, unsigned k, unsigned m, Element x) {
    if (m < 1) throw std::invalid_argument("C_m needs m >= 1");
    Element prev = f.one(), cur = f.one();  // C_1, C_2
    Element xi = x;                          // x^{2^{ik}}, starting at i = 1
    for (unsigned j = 0; j < k; ++j) xi = f.mul(xi, xi);
    for (unsigned i = 1; i + 2 <= m; ++i) {
        const Element next = f.add(cur, f.mul(xi, prev));
        prev = cur;
        cur = next;
        for (unsigned j = 0; j < k; ++j) xi = f.mul(xi, xi);
    }
    return m == 1 ? prev : cur;
}

/// Number of distinct zeros of C_m in GF(2^n).
inline u64 cm_zero_count(unsigned n, unsigned k, unsigned m, u64 size_cap = kDefaultSizeCap) {
    const Field f = Field::build(2, n, size_cap);
    u64 zeros = 0;
    for (std::uint32_t i = 0; i < f.order(); ++i)
        if (cm_eval(f, k, m, Element{i}) == f.zero()) ++zeros;
    return zeros;
}

/// Quoted zero count for m = n / gcd(n, k).
inline u64 cm_zero_prediction(unsigned n, unsigned k) {
    const unsigned d = static_cast<unsigned>(gcd(n, k));
    const unsigned m = n / d;
    const u64 num = (m % 2 == 1) ? ipow(2, (m - 1) * d) - 1 : ipow(2, (m - 1) * d) - ipow(2, d);
    return num / (ipow(2, 2 * d) - 1);
}

// ---------------------------------------------------------------- S_{i,j}

/// Cells of GF(q) \ {0, -1} by the signs (eta(x+1), eta(x)).
struct SijPartition {
    std::vector<Element> s11, s_1_1, s1_1, s_11;  // S_{1,1}, S_{-1,-1}, S_{1,-1}, S_{-1,1}

    /// Cell for signs (i, j) in {+1, -1}^2.
    const std::vector<Element>& cell(int i, int j) const {
        if (i == 1 && j == 1) return s11;
        if (i == -1 && j == -1) return s_1_1;
        if (i == 1 && j == -1) return s1_1;
        if (i == -1 && j == 1) return s_11;
        throw std::invalid_argument("cell signs must be +1 or -1");
    }
};

inline SijPartition sij_partition(const Field& f) {
    if (f.p() == 2) throw std::domain_error("S_{i,j} partition needs odd characteristic");
    SijPartition out;
    for (std::uint32_t i = 1; i < f.order(); ++i) {
        const Element x{i};
        if (x == f.minus_one()) continue;
        const int a = f.quadratic_character(f.add(x, f.one()));
        const int b = f.quadratic_character(x);
        if (a == 1 && b == 1) out.s11.push_back(x);
        else if (a == -1 && b == -1) out.s_1_1.push_back(x);
        else if (a == 1) out.s1_1.push_back(x);
        else out.s_11.push_back(x);
    }
    return out;
}

// ---------------------------------------------------------------- Jacobsthal

/// N1 = #{x != 0, +-1 : eta(x^2 - x) = 1}, N2 = #{x != 0, +-1 : eta(x^2 + x) = 1}.
struct JacobsthalCounts {
    u64 n1 = 0, n2 = 0;
    u64 predicted = 0;  // (3^n - 4 - eta(-1)) / 2
};

inline JacobsthalCounts jacobsthal_counts(const Field& f) {
    if (f.p() != 3 || f.n() < 2) throw std::domain_error("Jacobsthal counts are defined over GF(3^n), n >= 2");
    JacobsthalCounts out;
    for (std::uint32_t i = 0; i < f.order(); ++i) {
        const Element x{i};
        if (x == f.zero() || x == f.one() || x == f.minus_one()) continue;
        const Element sq = f.mul(x, x);
        if (f.quadratic_character(f.sub(sq, x)) == 1) ++out.n1;
        if (f.quadratic_character(f.add(sq, x)) == 1) ++out.n2;
    }
    const std::int64_t eta_m1 = f.quadratic_character(f.minus_one());
    out.predicted = static_cast<u64>((static_cast<std::int64_t>(f.order()) - 4 - eta_m1) / 2);
    return out;
}

// ---------------------------------------------------------------- embeddings

/// Embedding of `base` into `ext` (n divides ext's degree), sending the
/// polynomial variable of `base` to the smallest-code root of its modulus.
class SubfieldEmbedding {
public:
    SubfieldEmbedding(Field base, Field ext) : base_(std::move(base)), ext_(std::move(ext)) {
        if (base_.p() != ext_.p() || ext_.n() % base_.n() != 0)
            throw std::invalid_argument("base is not a subfield of ext");
        const auto& mod = base_.modulus();
        std::optional<Element> root;
        for (std::uint32_t i = 0; i < ext_.order() && !root; ++i) {
            Element acc = ext_.zero();
            for (std::size_t j = mod.size(); j-- > 0;)
                acc = ext_.add(ext_.mul(acc, Element{i}), ext_.from_int(mod[j]));
            if (acc == ext_.zero()) root = Element{i};
        }
        if (!root) throw std::logic_error("modulus has no root in the extension");
        forward_.resize(base_.order());
        back_.assign(ext_.order(), std::nullopt);
        for (std::uint32_t i = 0; i < base_.order(); ++i) {
            const auto c = base_.coeffs(Element{i});
            Element acc = ext_.zero();
            for (std::size_t j = c.size(); j-- > 0;) acc = ext_.add(ext_.mul(acc, *root), ext_.from_int(c[j]));
            forward_[i] = acc;
            back_[acc.code] = Element{i};
        }
    }

    Element to_ext(Element x) const { return forward_[x.code]; }
    /// Preimage in the base field, if y lies in the image.
    std::optional<Element> to_base(Element y) const { return back_[y.code]; }

private:
    Field base_, ext_;
    std::vector<Element> forward_;
    std::vector<std::optional<Element>> back_;
};

}  // namespace cdiff
