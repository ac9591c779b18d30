// Exhaustive c-difference distribution counting.
//
// For F: GF(q) -> GF(q), c in GF(q) and a, b in GF(q), the entry
//   cDelta_F(a, b) = #{x : F(x + a) - c F(x) = b}
// and the c-differential uniformity is its maximum over all (a, b), with
// a = 0 excluded exactly when c = 1.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdiff/field.hpp"
#include "cdiff/function.hpp"
#include "cdiff/parallel.hpp"

namespace cdiff {

struct DDTRow {
    Element c;
    Element a;
    std::vector<std::uint32_t> counts;  // indexed by b's code
};

struct CDDTReport {
    Element c;
    std::uint32_t uniformity = 0;
    /// delta value -> number of (a, b) pairs attaining it.
    std::map<std::uint32_t, u64> spectrum;
    /// Spectrum derived from the a = 1 row and the a = 0 row (power maps only).
    bool power_reduced = false;

    std::string classification() const {
        if (uniformity == 1) return "PcN";
        if (uniformity == 2) return "APcN";
        return std::to_string(uniformity);
    }

    friend bool operator==(const CDDTReport&, const CDDTReport&) = default;
};

/// Number of x with F(x + a) - c F(x) = b.
inline std::uint32_t delta_count(const Field& f, const FunctionSpec& fn, Element c, Element a, Element b) {
    std::uint32_t n = 0;
    for (std::uint32_t i = 0; i < f.order(); ++i)
        if (c_derivative(f, fn, c, a, Element{i}) == b) ++n;
    return n;
}

namespace detail {

inline void row_histogram(const Field& f, const std::vector<Element>& table, Element c, Element a,
                          std::vector<std::uint32_t>& counts) {
    counts.assign(f.order(), 0);
    for (std::uint32_t i = 0; i < f.order(); ++i) {
        const Element x{i};
        const Element v = f.sub(table[f.add(x, a).code], f.mul(c, table[i]));
        ++counts[v.code];
    }
}

inline void add_to_spectrum(std::map<std::uint32_t, u64>& spectrum, const std::vector<std::uint32_t>& counts,
                            u64 weight = 1) {
    std::vector<u64> by_value;
    for (auto v : counts) {
        if (v >= by_value.size()) by_value.resize(v + 1, 0);
        ++by_value[v];
    }
    for (std::uint32_t v = 0; v < by_value.size(); ++v)
        if (by_value[v] != 0) spectrum[v] += by_value[v] * weight;
}

}  // namespace detail

/// One pass over x, histogram over b.
inline DDTRow ddt_row(const Field& f, const FunctionSpec& fn, Element c, Element a) {
    validate(f, fn);
    DDTRow row{c, a, {}};
    detail::row_histogram(f, value_table(f, fn), c, a, row.counts);
    return row;
}

/// Brute force over every admissible (a, b). Cost Theta(q^2); parallel over a.
inline CDDTReport c_uniformity_general(const Field& f, const FunctionSpec& fn, Element c,
                                       unsigned threads = 0) {
    validate(f, fn);
    const std::vector<Element> table = value_table(f, fn);
    const std::uint32_t q = f.order();
    const std::uint32_t first_a = (c == f.one()) ? 1 : 0;

    constexpr std::uint32_t kChunk = 64;
    const std::uint32_t chunks = (q - first_a + kChunk - 1) / kChunk;
    std::vector<std::map<std::uint32_t, u64>> partial(chunks);
    std::vector<std::uint32_t> partial_max(chunks, 0);
    parallel_for(
        chunks,
        [&](std::size_t ci) {
            std::vector<std::uint32_t> counts;
            const std::uint32_t lo = first_a + static_cast<std::uint32_t>(ci) * kChunk;
            const std::uint32_t hi = std::min(q, lo + kChunk);
            for (std::uint32_t a = lo; a < hi; ++a) {
                detail::row_histogram(f, table, c, Element{a}, counts);
                detail::add_to_spectrum(partial[ci], counts);
                partial_max[ci] = std::max(partial_max[ci], *std::max_element(counts.begin(), counts.end()));
            }
        },
        threads);

    CDDTReport rep;
    rep.c = c;
    for (std::uint32_t ci = 0; ci < chunks; ++ci) {
        rep.uniformity = std::max(rep.uniformity, partial_max[ci]);
        for (auto [v, n] : partial[ci]) rep.spectrum[v] += n;
    }
    return rep;
}

/// Power-map fast path. Every a != 0 row is a re-indexing of the a = 1 row
/// (b -> b / a^d), and for c != 1 the a = 0 row peaks at gcd(d, q-1), so
/// each c costs Theta(q). Tables are built once and shared across c.
class PowerUniformity {
public:
    PowerUniformity(Field f, u64 d) : f_(std::move(f)), d_(d) {
        if (d < 1) throw std::invalid_argument("power map exponent must be >= 1");
        const std::uint32_t q = f_.order();
        pow_.resize(q);
        shift_.resize(q);
        for (std::uint32_t i = 0; i < q; ++i) {
            pow_[i] = f_.pow(Element{i}, d);
            shift_[i] = f_.add(Element{i}, f_.one());
        }
        gcd_ = static_cast<std::uint32_t>(gcd(d, q - 1));
    }

    const Field& field() const { return f_; }
    u64 exponent() const { return d_; }
    std::uint32_t gcd_term() const { return gcd_; }

    /// a = 1 row: counts of (x+1)^d - c x^d = b.
    std::vector<std::uint32_t> unit_row(Element c) const {
        std::vector<std::uint32_t> counts(f_.order(), 0);
        for (std::uint32_t i = 0; i < f_.order(); ++i)
            ++counts[f_.sub(pow_[shift_[i].code], f_.mul(c, pow_[i])).code];
        return counts;
    }

    /// a = 0 row: counts of (1 - c) x^d = b.
    std::vector<std::uint32_t> zero_row(Element c) const {
        std::vector<std::uint32_t> counts(f_.order(), 0);
        const Element k = f_.sub(f_.one(), c);
        for (std::uint32_t i = 0; i < f_.order(); ++i) ++counts[f_.mul(k, pow_[i]).code];
        return counts;
    }

    CDDTReport report(Element c) const {
        CDDTReport rep;
        rep.c = c;
        rep.power_reduced = true;
        const auto row = unit_row(c);
        rep.uniformity = *std::max_element(row.begin(), row.end());
        detail::add_to_spectrum(rep.spectrum, row, f_.order() - 1);
        if (c != f_.one()) {
            rep.uniformity = std::max(rep.uniformity, gcd_);
            detail::add_to_spectrum(rep.spectrum, zero_row(c));
        }
        return rep;
    }

    /// Uniformity only; skips spectrum bookkeeping.
    std::uint32_t uniformity(Element c) const {
        const auto row = unit_row(c);
        std::uint32_t u = *std::max_element(row.begin(), row.end());
        if (c != f_.one()) u = std::max(u, gcd_);
        return u;
    }

private:
    Field f_;
    u64 d_;
    std::vector<Element> pow_;
    std::vector<Element> shift_;
    std::uint32_t gcd_ = 1;
};

inline CDDTReport c_uniformity_power(const Field& f, u64 d, Element c) {
    return PowerUniformity(f, d).report(c);
}

/// Named subsets of GF(q) for sweeps.
enum class CSetKind { All, NotOne, NotPlusMinusOne, NotZeroPlusMinusOne, Subfield, OutsideSubfield };

struct CSet {
    CSetKind kind = CSetKind::All;
    unsigned subfield_degree = 0;  // for Subfield / OutsideSubfield
};

/// Parses all | not-one | not-pm-one | not-zero-pm-one | subfield:K | outside-subfield:K.
inline CSet parse_cset(const std::string& s) {
    if (s == "all") return {CSetKind::All, 0};
    if (s == "not-one") return {CSetKind::NotOne, 0};
    if (s == "not-pm-one") return {CSetKind::NotPlusMinusOne, 0};
    if (s == "not-zero-pm-one") return {CSetKind::NotZeroPlusMinusOne, 0};
    auto degree_after = [&](std::size_t pos) -> unsigned {
        const std::string tail = s.substr(pos);
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tail, &used);
        } catch (...) {
            used = 0;
        }
        if (used != tail.size() || tail.empty() || v == 0)
            throw std::invalid_argument("bad subfield degree in c-set '" + s + "'");
        return static_cast<unsigned>(v);
    };
    if (s.rfind("subfield:", 0) == 0) return {CSetKind::Subfield, degree_after(9)};
    if (s.rfind("outside-subfield:", 0) == 0) return {CSetKind::OutsideSubfield, degree_after(17)};
    throw std::invalid_argument("unknown c-set '" + s + "'");
}

/// Members of the c-set in canonical order.
inline std::vector<Element> expand_cset(const Field& f, const CSet& set) {
    if ((set.kind == CSetKind::Subfield || set.kind == CSetKind::OutsideSubfield) &&
        (set.subfield_degree == 0 || f.n() % set.subfield_degree != 0))
        throw std::invalid_argument("subfield degree must divide n");
    std::vector<Element> out;
    for (std::uint32_t i = 0; i < f.order(); ++i) {
        const Element c{i};
        const bool is_one = c == f.one(), is_minus_one = c == f.minus_one();
        bool keep = true;
        switch (set.kind) {
            case CSetKind::All: break;
            case CSetKind::NotOne: keep = !is_one; break;
            case CSetKind::NotPlusMinusOne: keep = !is_one && !is_minus_one; break;
            case CSetKind::NotZeroPlusMinusOne: keep = i != 0 && !is_one && !is_minus_one; break;
            case CSetKind::Subfield: keep = f.in_subfield(c, set.subfield_degree); break;
            case CSetKind::OutsideSubfield: keep = !f.in_subfield(c, set.subfield_degree); break;
        }
        if (keep) out.push_back(c);
    }
    return out;
}

/// Independent report per c, returned in the order of `cs` whatever the schedule.
inline std::vector<CDDTReport> c_sweep(const Field& f, u64 d, const std::vector<Element>& cs,
                                       unsigned threads = 0) {
    if (cs.empty()) throw std::invalid_argument("empty c-set");
    const PowerUniformity pu(f, d);
    std::vector<CDDTReport> out(cs.size());
    parallel_for(cs.size(), [&](std::size_t i) { out[i] = pu.report(cs[i]); }, threads);
    return out;
}

inline std::vector<CDDTReport> c_sweep(const Field& f, const FunctionSpec& fn, const std::vector<Element>& cs,
                                       unsigned threads = 0) {
    if (const auto* pm = std::get_if<PowerMap>(&fn)) return c_sweep(f, pm->d, cs, threads);
    if (cs.empty()) throw std::invalid_argument("empty c-set");
    std::vector<CDDTReport> out;
    out.reserve(cs.size());
    for (auto c : cs) out.push_back(c_uniformity_general(f, fn, c, threads));
    return out;
}

}  // namespace cdiff
