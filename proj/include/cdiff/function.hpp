// Functions GF(p^n) -> GF(p^n) under study: power maps and lookup tables.
#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "cdiff/field.hpp"

namespace cdiff {

/// x -> x^d. The exponent is kept as given; reduction mod q-1 happens only
/// when evaluating at nonzero inputs.
struct PowerMap {
    u64 d = 1;
};

/// Explicit table indexed by canonical element code.
struct LookupFunction {
    std::vector<Element> table;
};

using FunctionSpec = std::variant<PowerMap, LookupFunction>;

inline PowerMap power_map(u64 d) {
    if (d < 1) throw std::invalid_argument("power map exponent must be >= 1");
    return PowerMap{d};
}

inline void validate(const Field& f, const FunctionSpec& fn) {
    if (const auto* pm = std::get_if<PowerMap>(&fn)) {
        if (pm->d < 1) throw std::invalid_argument("power map exponent must be >= 1");
    } else {
        const auto& lf = std::get<LookupFunction>(fn);
        if (lf.table.size() != f.order())
            throw std::invalid_argument("lookup table length must equal the field order");
        for (auto e : lf.table)
            if (e.code >= f.order()) throw std::invalid_argument("lookup table entry outside the field");
    }
}

inline Element eval(const Field& f, const FunctionSpec& fn, Element x) {
    if (const auto* pm = std::get_if<PowerMap>(&fn)) return f.pow(x, pm->d);
    return std::get<LookupFunction>(fn).table[x.code];
}

/// F(x + a) - c F(x).
inline Element c_derivative(const Field& f, const FunctionSpec& fn, Element c, Element a, Element x) {
    return f.sub(eval(f, fn, f.add(x, a)), f.mul(c, eval(f, fn, x)));
}

inline LookupFunction as_lookup(const Field& f, const PowerMap& pm) {
    LookupFunction out;
    out.table.resize(f.order());
    for (std::uint32_t i = 0; i < f.order(); ++i) out.table[i] = f.pow(Element{i}, pm.d);
    return out;
}

/// Value table of any function spec.
inline std::vector<Element> value_table(const Field& f, const FunctionSpec& fn) {
    if (const auto* pm = std::get_if<PowerMap>(&fn)) return as_lookup(f, *pm).table;
    return std::get<LookupFunction>(fn).table;
}

inline bool is_permutation(const Field& f, const std::vector<Element>& table) {
    std::vector<char> seen(f.order(), 0);
    for (auto e : table) {
        if (seen[e.code]) return false;
        seen[e.code] = 1;
    }
    return table.size() == f.order();
}

}  // namespace cdiff
