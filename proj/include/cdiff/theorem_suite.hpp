// Registry of claimed c-differential uniformities of power maps x^d over
// GF(p^n), each checked against the exhaustive counts.
//
// A case enumerates the exponents of its family for a given field
// (`family`), decides which c it speaks about (`applies`) and what it
// predicts (`predict`). ValueSet cases compare the union of observed values
// over all applicable c with the predicted set.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cdiff/arith.hpp"
#include "cdiff/cddt.hpp"
#include "cdiff/field.hpp"
#include "cdiff/parallel.hpp"

namespace cdiff {

/// One member of an exponent family over a fixed field; k = 0 when the family
/// has no extra parameter.
struct CaseParams {
    u64 p = 0;
    unsigned n = 0;
    unsigned k = 0;
    u64 d = 0;
};

struct Prediction {
    enum class Kind { Exact, UpperBound, ValueSet };
    Kind kind = Kind::Exact;
    std::uint32_t value = 0;
    std::set<std::uint32_t> values;

    static Prediction exact(std::uint32_t v) { return {Kind::Exact, v, {}}; }
    static Prediction upper_bound(std::uint32_t v) { return {Kind::UpperBound, v, {}}; }
    static Prediction value_set(std::set<std::uint32_t> s) { return {Kind::ValueSet, 0, std::move(s)}; }

    bool holds(std::uint32_t observed) const {
        switch (kind) {
            case Kind::Exact: return observed == value;
            case Kind::UpperBound: return observed <= value;
            case Kind::ValueSet: return values.count(observed) != 0;
        }
        return false;
    }

    std::string str() const {
        switch (kind) {
            case Kind::Exact: return std::to_string(value);
            case Kind::UpperBound: return "<=" + std::to_string(value);
            case Kind::ValueSet: {
                std::string s = "{";
                for (auto v : values) s += (s.size() > 1 ? "," : "") + std::to_string(v);
                return s + "}";
            }
        }
        return "?";
    }

    friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct TheoremCase {
    std::string id;
    std::string exponent;   // e.g. "p^n-2"
    std::string condition;  // human-readable applicability
    std::string reference;
    bool optional_tier = false;
    std::function<std::vector<CaseParams>(u64 p, unsigned n)> family;
    std::function<bool(const Field&, const CaseParams&, Element c)> applies;
    std::function<Prediction(const Field&, const CaseParams&)> predict;
};

// ---------------------------------------------------------------- registry

namespace detail {

inline std::vector<CaseParams> single(u64 p, unsigned n, std::optional<u64> d) {
    if (!d || *d < 1) return {};
    return {CaseParams{p, n, 0, *d}};
}

inline bool is_c(const Field& f, Element c, std::int64_t v) { return c == f.from_int(v); }

inline int eta(const Field& f, Element x) { return f.quadratic_character(x); }

/// 4 and 4^{-1}; both are c-values excluded from the generic inverse rows.
inline bool is_four_or_inverse(const Field& f, Element c) {
    const Element four = f.from_int(4);
    if (four == f.zero()) return false;
    return c == four || c == f.inv(four);
}

inline std::optional<u64> q_of(u64 p, unsigned n) { return ipow(p, n); }

}  // namespace detail

inline std::vector<TheoremCase> registry() {
    using detail::eta;
    using detail::is_c;
    using detail::single;
    std::vector<TheoremCase> r;

    r.push_back({"square", "2", "p odd, c != 1", "EFRST20", false,
                 [](u64 p, unsigned n) { return p == 2 ? std::vector<CaseParams>{} : single(p, n, 2); },
                 [](const Field& f, const CaseParams&, Element c) { return c != f.one(); },
                 [](const Field&, const CaseParams&) { return Prediction::exact(2); }});

    r.push_back({"inverse-c0", "p^n-2", "c = 0", "EFRST20", false,
                 [](u64 p, unsigned n) { return single(p, n, ipow(p, n) - 2); },
                 [](const Field&, const CaseParams&, Element c) { return c.code == 0; },
                 [](const Field&, const CaseParams&) { return Prediction::exact(1); }});

    auto binary_inverse = [](u64 p, unsigned n) {
        return p == 2 ? single(p, n, ipow(p, n) - 2) : std::vector<CaseParams>{};
    };
    r.push_back({"inverse-bin-2", "2^n-2", "c != 0,1, Tr(c) = Tr(1/c) = 1", "EFRST20", false, binary_inverse,
                 [](const Field& f, const CaseParams&, Element c) {
                     return c.code > 1 && f.trace(c) == 1 && f.trace(f.inv(c)) == 1;
                 },
                 [](const Field&, const CaseParams&) { return Prediction::exact(2); }});
    r.push_back({"inverse-bin-3", "2^n-2", "c != 0,1, Tr(c) = 0 or Tr(1/c) = 0", "EFRST20", false, binary_inverse,
                 [](const Field& f, const CaseParams&, Element c) {
                     return c.code > 1 && (f.trace(c) == 0 || f.trace(f.inv(c)) == 0);
                 },
                 [](const Field&, const CaseParams&) { return Prediction::exact(3); }});

    auto odd_inverse = [](u64 p, unsigned n) {
        return p == 2 ? std::vector<CaseParams>{} : single(p, n, ipow(p, n) - 2);
    };
    r.push_back({"inverse-odd-2", "p^n-2", "c != 0,1; c = 4, 1/4, or eta(c^2-4c) = eta(1-4c) = -1", "EFRST20",
                 false, odd_inverse,
                 [](const Field& f, const CaseParams&, Element c) {
                     if (c.code == 0 || c == f.one()) return false;
                     if (detail::is_four_or_inverse(f, c)) return true;
                     const Element four = f.from_int(4);
                     return eta(f, f.sub(f.mul(c, c), f.mul(four, c))) == -1 &&
                            eta(f, f.sub(f.one(), f.mul(four, c))) == -1;
                 },
                 [](const Field&, const CaseParams&) { return Prediction::exact(2); }});
    r.push_back({"inverse-odd-3", "p^n-2", "c != 0,1,4,1/4; eta(c^2-4c) = 1 or eta(1-4c) = 1", "EFRST20", false,
                 odd_inverse,
                 [](const Field& f, const CaseParams&, Element c) {
                     if (c.code == 0 || c == f.one() || detail::is_four_or_inverse(f, c)) return false;
                     const Element four = f.from_int(4);
                     return eta(f, f.sub(f.mul(c, c), f.mul(four, c))) == 1 ||
                            eta(f, f.sub(f.one(), f.mul(four, c))) == 1;
                 },
                 [](const Field&, const CaseParams&) { return Prediction::exact(3); }});

    r.push_back({"gold-subfield", "p^k+1", "1 <= k <= n, 1 != c in GF(p^gcd(k,n))", "gold, subfield c", false,
                 [](u64 p, unsigned n) {
                     std::vector<CaseParams> out;
                     for (unsigned k = 1; k <= n; ++k) out.push_back({p, n, k, ipow(p, k) + 1});
                     return out;
                 },
                 [](const Field& f, const CaseParams& cp, Element c) {
                     return c != f.one() && f.in_subfield(c, static_cast<unsigned>(gcd(cp.k, cp.n)));
                 },
                 [](const Field&, const CaseParams& cp) {
                     return Prediction::exact(static_cast<std::uint32_t>(gcd(cp.d, ipow(cp.p, cp.n) - 1)));
                 }});

    r.push_back({"gold-binary-outside", "2^k+1",
                 "1 <= k < n, e = gcd(n,k), m = n/e >= 3, c outside GF(2^e)",
                 "gold, binary", false,
                 [](u64 p, unsigned n) {
                     std::vector<CaseParams> out;
                     if (p != 2 || n < 3) return out;
                     for (unsigned k = 1; k < n; ++k) {
                         // m odd needs m >= 3, m even needs m >= 4: together, m >= 3.
                         const unsigned m = n / static_cast<unsigned>(gcd(n, k));
                         if (m >= 3) out.push_back({p, n, k, ipow(2, k) + 1});
                     }
                     return out;
                 },
                 [](const Field& f, const CaseParams& cp, Element c) {
                     return !f.in_subfield(c, static_cast<unsigned>(gcd(cp.n, cp.k)));
                 },
                 [](const Field&, const CaseParams& cp) {
                     return Prediction::exact(static_cast<std::uint32_t>(ipow(2, static_cast<unsigned>(gcd(cp.n, cp.k))) + 1));
                 }});

    r.push_back({"half-gold-pcn", "(p^k+1)/2", "p odd, 1 <= k < n, n >= 3, c = -1", "half gold, c = -1", false,
                 [](u64 p, unsigned n) {
                     std::vector<CaseParams> out;
                     if (p == 2 || n < 3) return out;
                     for (unsigned k = 1; k < n; ++k) out.push_back({p, n, k, (ipow(p, k) + 1) / 2});
                     return out;
                 },
                 [](const Field& f, const CaseParams&, Element c) { return c == f.minus_one(); },
                 [](const Field&, const CaseParams& cp) {
                     if ((2 * cp.n / gcd(2 * cp.n, cp.k)) % 2 == 1) return Prediction::exact(1);
                     return Prediction::exact(
                         static_cast<std::uint32_t>((ipow(cp.p, static_cast<unsigned>(gcd(cp.k, cp.n))) + 1) / 2));
                 }});

    auto half_pn_plus1 = [](u64 p, unsigned n) {
        return p == 2 ? std::vector<CaseParams>{} : single(p, n, (ipow(p, n) + 1) / 2);
    };
    r.push_back({"half-pn-plus1", "(p^n+1)/2", "p odd, c != +-1", "(p^n+1)/2 bound", false, half_pn_plus1,
                 [](const Field& f, const CaseParams&, Element c) { return c != f.one() && c != f.minus_one(); },
                 [](const Field&, const CaseParams&) { return Prediction::upper_bound(4); }});
    r.push_back({"half-pn-plus1-refined", "(p^n+1)/2", "p odd, c != +-1, p^n = 1 mod 4, eta((1-c)/(1+c)) = 1",
                 "(p^n+1)/2 bound", false, half_pn_plus1,
                 [](const Field& f, const CaseParams&, Element c) {
                     if (c == f.one() || c == f.minus_one() || f.order() % 4 != 1) return false;
                     return eta(f, f.div(f.sub(f.one(), c), f.add(f.one(), c))) == 1;
                 },
                 [](const Field&, const CaseParams&) { return Prediction::upper_bound(2); }});

    r.push_back({"three-n-plus-3", "(3^n+3)/2", "p = 3, n even, c = -1", "(3^n+3)/2, c = -1", false,
                 [](u64 p, unsigned n) {
                     return (p == 3 && n >= 2 && n % 2 == 0) ? single(p, n, (ipow(3, n) + 3) / 2)
                                                             : std::vector<CaseParams>{};
                 },
                 [](const Field& f, const CaseParams&, Element c) { return c == f.minus_one(); },
                 [](const Field&, const CaseParams&) { return Prediction::exact(2); }});

    r.push_back({"pn-plus-3", "(p^n+3)/2", "p > 3, c = -1", "(p^n+3)/2, c = -1", false,
                 [](u64 p, unsigned n) {
                     return p > 3 ? single(p, n, (ipow(p, n) + 3) / 2) : std::vector<CaseParams>{};
                 },
                 [](const Field& f, const CaseParams&, Element c) { return c == f.minus_one(); },
                 [](const Field&, const CaseParams& cp) {
                     return Prediction::upper_bound(ipow(cp.p, cp.n) % 4 == 3 ? 3 : 4);
                 }});

    auto three_n_minus_3 = [](u64 p, unsigned n) {
        return (p == 3 && n >= 2) ? single(p, n, ipow(3, n) - 3) : std::vector<CaseParams>{};
    };
    r.push_back({"pn-minus-3-cm1", "3^n-3", "p = 3, n >= 2, c = -1", "3^n-3", false, three_n_minus_3,
                 [](const Field& f, const CaseParams&, Element c) { return c == f.minus_one(); },
                 [](const Field&, const CaseParams& cp) { return Prediction::exact(cp.n % 4 == 0 ? 6 : 4); }});
    r.push_back({"pn-minus-3-c0", "3^n-3", "p = 3, n >= 2, c = 0", "3^n-3", false, three_n_minus_3,
                 [](const Field&, const CaseParams&, Element c) { return c.code == 0; },
                 [](const Field&, const CaseParams&) { return Prediction::exact(2); }});
    r.push_back({"pn-minus-3-generic", "3^n-3", "p = 3, n >= 2, c != 0,+-1", "3^n-3", false, three_n_minus_3,
                 [](const Field& f, const CaseParams&, Element c) {
                     return c.code != 0 && c != f.one() && c != f.minus_one();
                 },
                 [](const Field&, const CaseParams&) { return Prediction::upper_bound(5); }});
    r.push_back({"pn-minus-3-valueset", "3^n-3", "p = 3, 2 <= n <= 6, all c != 0,+-1 (union)", "3^n-3", false,
                 [](u64 p, unsigned n) {
                     return (p == 3 && n >= 2 && n <= 6) ? single(p, n, ipow(3, n) - 3) : std::vector<CaseParams>{};
                 },
                 [](const Field& f, const CaseParams&, Element c) {
                     return c.code != 0 && c != f.one() && c != f.minus_one();
                 },
                 [](const Field&, const CaseParams& cp) {
                     static const std::map<unsigned, std::set<std::uint32_t>> sets{
                         {2, {2}}, {3, {3, 4}}, {4, {2, 4, 5}}, {5, {4}}, {6, {4, 5}}};
                     return Prediction::value_set(sets.at(cp.n));
                 }});
    r.push_back({"pn-minus-3-classical", "3^n-3", "p = 3, c = 1; n > 1 odd, or n > 2", "HRS99, XZLH20", false,
                 [](u64 p, unsigned n) {
                     return (p == 3 && n >= 3) ? single(p, n, ipow(3, n) - 3) : std::vector<CaseParams>{};
                 },
                 [](const Field& f, const CaseParams&, Element c) { return c == f.one(); },
                 [](const Field&, const CaseParams& cp) {
                     if (cp.n % 2 == 1) return Prediction::exact(2);
                     return Prediction::exact(cp.n % 4 == 2 ? 4 : 5);
                 }});

    r.push_back({"half-pn-minus-3", "(p^n-3)/2", "p odd, p^n > 3, c = -1", "(p^n-3)/2, c = -1", false,
                 [](u64 p, unsigned n) {
                     return (p != 2 && ipow(p, n) > 3) ? single(p, n, (ipow(p, n) - 3) / 2)
                                                       : std::vector<CaseParams>{};
                 },
                 [](const Field& f, const CaseParams&, Element c) { return c == f.minus_one(); },
                 [](const Field&, const CaseParams&) { return Prediction::upper_bound(4); }});

    r.push_back({"two-thirds", "(2p^n-1)/3", "p^n = 2 mod 3, c != 1", "(2p^n-1)/3", false,
                 [](u64 p, unsigned n) {
                     const u64 q = ipow(p, n);
                     return q % 3 == 2 ? single(p, n, (2 * q - 1) / 3) : std::vector<CaseParams>{};
                 },
                 [](const Field& f, const CaseParams&, Element c) { return c != f.one(); },
                 [](const Field&, const CaseParams&) { return Prediction::upper_bound(3); }});

    r.push_back({"bt-half-p2-plus1", "(p^2+1)/2", "p odd, n odd, c = -1", "BT", true,
                 [](u64 p, unsigned n) {
                     return (p != 2 && n % 2 == 1) ? single(p, n, (p * p + 1) / 2) : std::vector<CaseParams>{};
                 },
                 [](const Field& f, const CaseParams&, Element c) { return c == f.minus_one(); },
                 [](const Field&, const CaseParams&) { return Prediction::exact(1); }});
    r.push_back({"bt-p2-p-plus1", "p^2-p+1", "p odd, n = 3, c = -1", "BT", true,
                 [](u64 p, unsigned n) {
                     return (p != 2 && n == 3) ? single(p, n, p * p - p + 1) : std::vector<CaseParams>{};
                 },
                 [](const Field& f, const CaseParams&, Element c) { return c == f.minus_one(); },
                 [](const Field&, const CaseParams&) { return Prediction::exact(1); }});
    return r;
}

inline std::optional<TheoremCase> find_case(const std::string& id) {
    for (auto& c : registry())
        if (c.id == id) return c;
    return std::nullopt;
}

struct ApplicableCase {
    std::string id;
    CaseParams params;
    Prediction prediction;
};

/// Every registered case whose family contains d over this field and whose
/// predicate accepts c.
inline std::vector<ApplicableCase> applicable_cases(const Field& f, u64 d, Element c) {
    std::vector<ApplicableCase> out;
    for (const auto& tc : registry())
        for (const auto& cp : tc.family(f.p(), f.n()))
            if (cp.d == d && tc.applies(f, cp, c)) out.push_back({tc.id, cp, tc.predict(f, cp)});
    return out;
}

// ---------------------------------------------------------------- verification

/// Fields to run: (p, list of n).
struct Grid {
    std::vector<std::pair<u64, std::vector<unsigned>>> fields;
    u64 size_cap = kDefaultSizeCap;

    static Grid desk_default() {
        return Grid{{{2, {3, 4, 5, 6, 7, 8, 9, 10}},
                     {3, {2, 3, 4, 5, 6}},
                     {5, {1, 2, 3}},
                     {7, {1, 2}},
                     {11, {1}},
                     {13, {1}}},
                    kDefaultSizeCap};
    }

    /// Drops fields larger than max_size.
    Grid limited(u64 max_size) const {
        Grid g{{}, size_cap};
        for (const auto& [p, ns] : fields) {
            std::vector<unsigned> keep;
            for (auto n : ns)
                if (ipow(p, n) <= max_size) keep.push_back(n);
            if (!keep.empty()) g.fields.push_back({p, keep});
        }
        return g;
    }
};

struct InstanceResult {
    CaseParams params;
    std::optional<Element> c;              // empty for ValueSet instances
    std::uint32_t observed = 0;            // per-c instances
    std::set<std::uint32_t> observed_set;  // ValueSet instances
    std::uint32_t c_count = 0;             // number of c values examined
    Prediction prediction;
    bool ok = true;
};

struct VerificationReport {
    std::string case_id;
    std::vector<InstanceResult> instances;
    bool pass = true;
    std::optional<std::uint32_t> max_observed;  // attained maximum (UpperBound rows)
    std::vector<InstanceResult> counterexamples;
};

/// Runs one case over the grid; c values are swept in parallel, results kept
/// in canonical (p, n, k, c) order.
inline VerificationReport verify_case(const TheoremCase& tc, const Grid& grid, unsigned threads = 0) {
    VerificationReport rep;
    rep.case_id = tc.id;
    for (const auto& [p, ns] : grid.fields) {
        for (auto n : ns) {
            const auto members = tc.family(p, n);
            if (members.empty()) continue;
            const Field f = Field::build(p, n, grid.size_cap);
            for (const auto& cp : members) {
                std::vector<Element> cs;
                for (std::uint32_t i = 0; i < f.order(); ++i)
                    if (tc.applies(f, cp, Element{i})) cs.push_back(Element{i});
                if (cs.empty()) continue;
                const Prediction pred = tc.predict(f, cp);
                const PowerUniformity pu(f, cp.d);
                std::vector<std::uint32_t> obs(cs.size());
                parallel_for(cs.size(), [&](std::size_t i) { obs[i] = pu.uniformity(cs[i]); }, threads);

                if (pred.kind == Prediction::Kind::ValueSet) {
                    InstanceResult ir{cp, std::nullopt, 0, {obs.begin(), obs.end()},
                                      static_cast<std::uint32_t>(cs.size()), pred, true};
                    ir.ok = ir.observed_set == pred.values;
                    rep.instances.push_back(ir);
                    continue;
                }
                for (std::size_t i = 0; i < cs.size(); ++i) {
                    InstanceResult ir{cp, cs[i], obs[i], {}, 1, pred, pred.holds(obs[i])};
                    if (pred.kind == Prediction::Kind::UpperBound)
                        rep.max_observed = std::max(rep.max_observed.value_or(0), obs[i]);
                    rep.instances.push_back(ir);
                }
            }
        }
    }
    for (const auto& ir : rep.instances)
        if (!ir.ok) rep.counterexamples.push_back(ir);
    rep.pass = rep.counterexamples.empty();
    return rep;
}

// ---------------------------------------------------------------- table

/// One line per (case, p, n, k): the rows of the reproduced table.
struct TableRow {
    std::string case_id;
    CaseParams params;
    std::string exponent, condition, reference;
    std::string predicted;
    std::set<std::uint32_t> observed;
    std::uint32_t c_count = 0;
    bool pass = true;
};

inline std::vector<TableRow> table_rows(const TheoremCase& tc, const VerificationReport& rep) {
    std::vector<TableRow> rows;
    for (const auto& ir : rep.instances) {
        const bool same = !rows.empty() && rows.back().params.p == ir.params.p &&
                          rows.back().params.n == ir.params.n && rows.back().params.k == ir.params.k;
        if (!same)
            rows.push_back({tc.id, ir.params, tc.exponent, tc.condition, tc.reference, ir.prediction.str(), {}, 0, true});
        auto& row = rows.back();
        if (ir.c) row.observed.insert(ir.observed);
        else row.observed.insert(ir.observed_set.begin(), ir.observed_set.end());
        row.c_count += ir.c_count;
        row.pass = row.pass && ir.ok;
    }
    return rows;
}

/// Runs every registered case over the grid.
inline std::vector<TableRow> reproduce_table(const Grid& grid, unsigned threads = 0) {
    std::vector<TableRow> rows;
    for (const auto& tc : registry()) {
        const auto part = table_rows(tc, verify_case(tc, grid, threads));
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

inline std::string join_set(const std::set<std::uint32_t>& s) {
    std::string out;
    for (auto v : s) out += (out.empty() ? "" : ",") + std::to_string(v);
    return out;
}

inline std::string render_markdown(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "| case | p | n | k | d | exponent | condition | predicted | observed | #c | verdict | reference |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        os << "| " << r.case_id << " | " << r.params.p << " | " << r.params.n << " | "
           << (r.params.k ? std::to_string(r.params.k) : "-") << " | " << r.params.d << " | " << r.exponent << " | "
           << r.condition << " | " << r.predicted << " | {" << join_set(r.observed) << "} | " << r.c_count << " | "
           << (r.pass ? "pass" : "FAIL") << " | " << r.reference << " |\n";
    }
    return os.str();
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string render_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "case,p,n,k,d,exponent,condition,predicted,observed,c_count,verdict,reference\n";
    for (const auto& r : rows) {
        os << r.case_id << ',' << r.params.p << ',' << r.params.n << ',' << r.params.k << ',' << r.params.d << ','
           << csv_quote(r.exponent) << ',' << csv_quote(r.condition) << ',' << csv_quote(r.predicted) << ','
           << csv_quote(join_set(r.observed)) << ',' << r.c_count << ',' << (r.pass ? "pass" : "FAIL") << ','
           << csv_quote(r.reference) << '\n';
    }
    return os.str();
}

}  // namespace cdiff
