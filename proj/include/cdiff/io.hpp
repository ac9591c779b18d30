// JSON / CSV encodings: field descriptions, function specs, element
// expressions and the "cdiff/1" output records.
#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdiff/cddt.hpp"
#include "cdiff/closed_form.hpp"
#include "cdiff/field.hpp"
#include "cdiff/function.hpp"
#include "cdiff/theorem_suite.hpp"

namespace cdiff {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "cdiff/1";

inline Json element_json(const Field& f, Element e) {
    Json arr = Json::array();
    for (auto c : f.coeffs(e)) arr.push_back(c);
    return arr;
}

/// Accepts a canonical code (integer) or a coefficient array.
inline Element element_from_json(const Field& f, const Json& j) {
    if (j.is_number_integer()) return f.element(j.get<u64>());
    if (j.is_array()) return f.from_coeffs(j.get<std::vector<std::uint32_t>>());
    throw std::invalid_argument("field element must be an integer code or a coefficient array");
}

// ---------------------------------------------------------------- field

inline Json field_json(const Field& f) {
    Json j;
    j["p"] = f.p();
    j["n"] = f.n();
    j["modulus"] = f.modulus();
    j["generator"] = element_json(f, f.generator());
    return j;
}

inline Field field_from_json(const Json& j, u64 size_cap = kDefaultSizeCap) {
    const auto p = j.at("p").get<u64>();
    const auto n = j.at("n").get<unsigned>();
    if (!j.contains("modulus")) return Field::build(p, n, size_cap);
    const auto mod = j.at("modulus").get<std::vector<std::int64_t>>();
    std::optional<std::vector<std::int64_t>> gen;
    if (j.contains("generator")) gen = j.at("generator").get<std::vector<std::int64_t>>();
    return Field::with_modulus(p, n, mod, gen, size_cap);
}

// ---------------------------------------------------------------- functions

inline Json function_json(const Field& f, const FunctionSpec& fn) {
    Json j;
    if (const auto* pm = std::get_if<PowerMap>(&fn)) {
        j["power"] = pm->d;
    } else {
        Json arr = Json::array();
        for (auto e : std::get<LookupFunction>(fn).table) arr.push_back(element_json(f, e));
        j["table"] = arr;
    }
    return j;
}

inline FunctionSpec function_from_json(const Field& f, const Json& j) {
    if (j.contains("power")) return power_map(j.at("power").get<u64>());
    if (j.contains("table")) {
        LookupFunction lf;
        for (const auto& e : j.at("table")) lf.table.push_back(element_from_json(f, e));
        FunctionSpec fn = lf;
        validate(f, fn);
        return fn;
    }
    throw std::invalid_argument("function spec must have \"power\" or \"table\"");
}

/// FNV-1a over the table codes; identifies lookup functions in reports.
inline std::string table_hash(const LookupFunction& lf) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : lf.table) {
        for (int b = 0; b < 4; ++b) {
            h ^= (e.code >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

// ---------------------------------------------------------------- element expressions

/// Integers (prime-subfield images, negatives allowed), "g", "g^K", or a
/// bracketed coefficient list "[c0,c1,...]".
inline Element parse_element(const Field& f, const std::string& expr) {
    std::string s;
    for (char ch : expr)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty element expression");
    auto parse_int = [&](const std::string& t) -> long long {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(t, &used);
        } catch (...) {
            used = std::string::npos;
        }
        if (used != t.size()) throw std::invalid_argument("bad element expression '" + expr + "'");
        return v;
    };
    if (s == "g") return f.generator();
    if (s.rfind("g^", 0) == 0) {
        const long long k = parse_int(s.substr(2));
        const long long ord = static_cast<long long>(f.order()) - 1;
        return f.exp(static_cast<u64>(((k % ord) + ord) % ord));
    }
    if (s.front() == '[' && s.back() == ']') {
        std::vector<std::uint32_t> coeffs;
        std::stringstream ss(s.substr(1, s.size() - 2));
        for (std::string part; std::getline(ss, part, ',');) {
            const long long v = parse_int(part);
            if (v < 0) throw std::invalid_argument("negative coefficient in '" + expr + "'");
            coeffs.push_back(static_cast<std::uint32_t>(v));
        }
        return f.from_coeffs(coeffs);
    }
    return f.from_int(parse_int(s));
}

// ---------------------------------------------------------------- records

inline Json record(const char* kind) {
    Json j;
    j["schema"] = kSchema;
    j["kind"] = kind;
    return j;
}

inline Json spectrum_json(const std::map<std::uint32_t, u64>& spectrum) {
    Json j = Json::object();
    for (auto [v, cnt] : spectrum) j[std::to_string(v)] = cnt;
    return j;
}

inline void put_function(Json& j, const FunctionSpec& fn) {
    if (const auto* pm = std::get_if<PowerMap>(&fn)) j["d"] = pm->d;
    else j["table_hash"] = table_hash(std::get<LookupFunction>(fn));
}

inline Json report_json(const Field& f, const FunctionSpec& fn, const CDDTReport& rep, bool with_spectrum) {
    Json j = record("uniformity");
    j["p"] = f.p();
    j["n"] = f.n();
    put_function(j, fn);
    j["c"] = element_json(f, rep.c);
    j["uniformity"] = rep.uniformity;
    j["classification"] = rep.classification();
    if (with_spectrum) {
        j["spectrum"] = spectrum_json(rep.spectrum);
        j["power_reduced"] = rep.power_reduced;
    }
    return j;
}

inline std::string csv_header_reports() { return "p,n,d_or_table_hash,c,uniformity,classification,spectrum"; }

inline std::string report_csv(const Field& f, const FunctionSpec& fn, const CDDTReport& rep) {
    std::ostringstream os;
    os << f.p() << ',' << f.n() << ',';
    if (const auto* pm = std::get_if<PowerMap>(&fn)) os << pm->d;
    else os << table_hash(std::get<LookupFunction>(fn));
    os << ",\"";
    const auto c = f.coeffs(rep.c);
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << "\"," << rep.uniformity << ',' << rep.classification() << ",\"";
    bool first = true;
    for (auto [v, cnt] : rep.spectrum) {
        os << (first ? "" : " ") << v << ':' << cnt;
        first = false;
    }
    os << '"';
    return os.str();
}

inline Json prediction_json(const Prediction& p) {
    Json j;
    switch (p.kind) {
        case Prediction::Kind::Exact: j["exact"] = p.value; break;
        case Prediction::Kind::UpperBound: j["upper_bound"] = p.value; break;
        case Prediction::Kind::ValueSet: j["value_set"] = p.values; break;
    }
    return j;
}

/// `f` must be the field of the instance.
inline Json instance_json(const Field& f, const std::string& case_id, const InstanceResult& ir) {
    Json j = record("instance");
    j["case"] = case_id;
    j["p"] = ir.params.p;
    j["n"] = ir.params.n;
    if (ir.params.k) j["k"] = ir.params.k;
    j["d"] = ir.params.d;
    if (ir.c) {
        j["c"] = element_json(f, *ir.c);
        j["observed"] = ir.observed;
    } else {
        j["c_count"] = ir.c_count;
        j["observed_set"] = ir.observed_set;
    }
    j["predicted"] = prediction_json(ir.prediction);
    j["ok"] = ir.ok;
    return j;
}

inline Json verification_summary_json(const VerificationReport& rep) {
    Json j = record("verdict");
    j["case"] = rep.case_id;
    j["instances"] = rep.instances.size();
    j["counterexamples"] = rep.counterexamples.size();
    if (rep.max_observed) j["max_observed"] = *rep.max_observed;
    j["verdict"] = rep.pass ? "pass" : "fail";
    return j;
}

}  // namespace cdiff
