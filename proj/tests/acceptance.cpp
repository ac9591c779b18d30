// Acceptance suite: one PASS/FAIL line per criterion, exact integer checks.
// Usage: acceptance [--cli PATH] [--only N]
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cdiff/cdiff.hpp"

using namespace cdiff;

namespace {

/// Collects mismatches; prints the first few.
class Check {
public:
    void fail(const std::string& what) {
        ++failures_;
        if (failures_ <= kShown) std::cout << "    mismatch: " << what << '\n';
    }
    void note(const std::string& what) { std::cout << "    " << what << '\n'; }
    void expect_eq(u64 got, u64 want, const std::string& where) {
        ++checks_;
        if (got != want) fail(where + ": observed " + std::to_string(got) + ", expected " + std::to_string(want));
    }
    bool ok() const { return failures_ == 0 && checks_ > 0; }
    u64 checks() const { return checks_; }
    u64 failures() const { return failures_; }
    void count() { ++checks_; }

private:
    static constexpr u64 kShown = 12;
    u64 checks_ = 0, failures_ = 0;
};

std::string fmt_c(const Field& f, Element c) {
    std::string s = "[";
    const auto co = f.coeffs(c);
    for (std::size_t i = 0; i < co.size(); ++i) s += (i ? "," : "") + std::to_string(co[i]);
    return s + "]";
}

std::string tag(u64 p, unsigned n) { return "GF(" + std::to_string(p) + "^" + std::to_string(n) + ")"; }

// ---------------------------------------------------------------- 1

void gold_exact(Check& ck) {
    for (unsigned n = 3; n <= 10; ++n) {
        const Field f = Field::build(2, n);
        for (unsigned k = 1; k < n; ++k) {
            if (gcd(n, k) != 1) continue;
            const u64 d = ipow(2, k) + 1;
            const PowerUniformity pu(f, d);
            std::vector<std::uint32_t> obs(f.order());
            parallel_for(f.order(), [&](std::size_t i) { obs[i] = i > 1 ? pu.uniformity(Element{static_cast<std::uint32_t>(i)}) : 0; });
            for (std::uint32_t c = 2; c < f.order(); ++c)
                ck.expect_eq(obs[c], 3, tag(2, n) + " k=" + std::to_string(k) + " c=" + fmt_c(f, Element{c}));
        }
    }
    for (auto [n, k] : std::vector<std::pair<unsigned, unsigned>>{{6, 2}, {9, 3}, {8, 2}}) {
        const Field f = Field::build(2, n);
        const unsigned e = static_cast<unsigned>(gcd(n, k));
        const PowerUniformity pu(f, ipow(2, k) + 1);
        std::uint32_t hit = 0;
        for (std::uint32_t c = 0; c < f.order(); ++c) {
            if (f.in_subfield(Element{c}, e)) continue;
            ck.expect_eq(pu.uniformity(Element{c}), ipow(2, e) + 1, tag(2, n) + " k=" + std::to_string(k) + " c=" + fmt_c(f, Element{c}));
            ++hit;
        }
        ck.note(tag(2, n) + " k=" + std::to_string(k) + ": " + std::to_string(hit) + " c outside GF(2^" + std::to_string(e) + ")");
    }
}

// ---------------------------------------------------------------- 2

void subfield_gold(Check& ck) {
    for (auto [p, n, k] : std::vector<std::tuple<u64, unsigned, unsigned>>{{3, 2, 1}, {3, 4, 2}, {5, 2, 1}, {7, 2, 1}}) {
        const Field f = Field::build(p, n);
        const unsigned e = static_cast<unsigned>(gcd(k, n));
        const u64 want = gcd(ipow(p, k) + 1, ipow(p, n) - 1);
        const PowerUniformity pu(f, ipow(p, k) + 1);
        for (std::uint32_t c = 0; c < f.order(); ++c) {
            const Element ce{c};
            if (ce == f.one() || !f.in_subfield(ce, e)) continue;
            ck.expect_eq(pu.uniformity(ce), want, tag(p, n) + " k=" + std::to_string(k) + " c=" + fmt_c(f, ce));
        }
    }
}

// ---------------------------------------------------------------- 3

void pcn_boundary(Check& ck) {
    u64 dickson_checks = 0, dickson_fail = 0;
    for (u64 p : {3u, 5u, 7u})
        for (unsigned n = 1; n <= 4; ++n) {
            const Field f = Field::build(p, n);
            for (unsigned k = 1; k < 2 * n; ++k) {
                const u64 d = (ipow(p, k) + 1) / 2;
                const u64 ratio = 2 * n / gcd(2 * n, k);
                const u64 want = ratio % 2 == 1 ? 1 : (ipow(p, static_cast<unsigned>(gcd(k, n))) + 1) / 2;
                const std::uint32_t obs = c_uniformity_power(f, d, f.minus_one()).uniformity;
                ck.expect_eq(obs, want, tag(p, n) + " k=" + std::to_string(k) + " d=" + std::to_string(d));
                const std::uint32_t ell = DicksonPreimages(f, d).max_preimage();
                ++dickson_checks;
                if (ell != obs) {
                    ++dickson_fail;
                    ck.fail(tag(p, n) + " k=" + std::to_string(k) + ": uniformity " + std::to_string(obs) +
                            " != max Dickson preimage " + std::to_string(ell));
                }
            }
        }
    ck.note("Dickson cross-identity: " + std::to_string(dickson_checks - dickson_fail) + "/" +
            std::to_string(dickson_checks) + " agree");
}

// ---------------------------------------------------------------- 4

void three_n_minus_3(Check& ck) {
    const std::map<unsigned, std::set<std::uint32_t>> sets{{2, {2}}, {3, {3, 4}}, {4, {2, 4, 5}}, {5, {4}}, {6, {4, 5}}};
    for (unsigned n = 2; n <= 6; ++n) {
        const Field f = Field::build(3, n);
        const u64 d = ipow(3, n) - 3;
        const PowerUniformity pu(f, d);
        ck.expect_eq(pu.uniformity(f.minus_one()), n == 4 ? 6 : 4, tag(3, n) + " c=-1");
        ck.expect_eq(pu.uniformity(f.zero()), 2, tag(3, n) + " c=0");
        std::vector<Element> cs;
        for (std::uint32_t c = 0; c < f.order(); ++c) {
            const Element ce{c};
            if (ce != f.zero() && ce != f.one() && ce != f.minus_one()) cs.push_back(ce);
        }
        std::vector<std::uint32_t> obs(cs.size());
        parallel_for(cs.size(), [&](std::size_t i) { obs[i] = pu.uniformity(cs[i]); });
        const std::set<std::uint32_t> got(obs.begin(), obs.end());
        ck.count();
        if (got != sets.at(n))
            ck.fail(tag(3, n) + " c not in {0,+-1}: value set {" + join_set(got) + "}, expected {" + join_set(sets.at(n)) + "}");
    }
}

// ---------------------------------------------------------------- 5

void upper_bounds(Check& ck) {
    Grid grid{{}, kDefaultSizeCap};
    for (u64 p : {5u, 7u, 11u, 13u}) {
        std::vector<unsigned> ns;
        for (unsigned n = 1; ipow(p, n) <= 2500; ++n) ns.push_back(n);
        grid.fields.push_back({p, ns});
    }
    for (const char* id : {"half-pn-plus1", "half-pn-plus1-refined", "pn-plus-3", "half-pn-minus-3", "two-thirds"}) {
        const auto rep = verify_case(*find_case(id), grid);
        for (const auto& ir : rep.instances) {
            ck.count();
            if (!ir.ok)
                ck.fail(std::string(id) + " " + tag(ir.params.p, ir.params.n) + ": observed " + std::to_string(ir.observed) +
                        ", bound " + ir.prediction.str());
        }
        // Attained maxima per field.
        std::map<std::pair<u64, unsigned>, std::uint32_t> maxima;
        for (const auto& ir : rep.instances) {
            auto& m = maxima[{ir.params.p, ir.params.n}];
            m = std::max(m, ir.observed);
        }
        std::string line = std::string(id) + " attained max:";
        for (auto [pn, m] : maxima) line += " " + tag(pn.first, pn.second) + "=" + std::to_string(m);
        ck.note(line);
    }
}

// ---------------------------------------------------------------- 6

void inverse_rows(Check& ck) {
    for (unsigned n = 3; n <= 8; ++n) {
        const Field f = Field::build(2, n);
        const PowerUniformity pu(f, f.order() - 2);
        for (std::uint32_t c = 2; c < f.order(); ++c) {
            const Element ce{c};
            const bool two = f.trace(ce) == 1 && f.trace(f.inv(ce)) == 1;
            ck.expect_eq(pu.uniformity(ce), two ? 2 : 3, tag(2, n) + " c=" + fmt_c(f, ce));
        }
    }
    const Grid odd{{{3, {1, 2, 3}}, {5, {1, 2, 3}}, {7, {1, 2, 3}}}, kDefaultSizeCap};
    for (const char* id : {"inverse-odd-2", "inverse-odd-3"}) {
        const auto rep = verify_case(*find_case(id), odd);
        for (const auto& ir : rep.instances) {
            ck.count();
            if (!ir.ok) {
                const Field f = Field::build(ir.params.p, ir.params.n);
                ck.fail(std::string(id) + " " + tag(ir.params.p, ir.params.n) + " c=" + fmt_c(f, *ir.c) + ": observed " +
                        std::to_string(ir.observed) + ", expected " + ir.prediction.str());
            }
        }
    }
}

// ---------------------------------------------------------------- 7

void closed_forms(Check& ck) {
    for (u64 p : {2u, 3u, 5u, 7u})
        for (unsigned n = 1; n <= 12; ++n)
            for (unsigned k = 1; k <= n; ++k) {
                ck.count();
                try {
                    gcd_qk(p, k, n);
                } catch (const std::exception& e) {
                    ck.fail(std::string("gcd lemma p=") + std::to_string(p) + " k=" + std::to_string(k) + " n=" +
                            std::to_string(n) + ": " + e.what());
                }
            }
    auto gold = [&](unsigned n, unsigned k) {
        const auto obs = gold_solution_distribution(n, k);
        for (auto [m, want] : gold_distribution_prediction(n, k)) {
            const auto it = obs.counts.find(m);
            ck.expect_eq(it == obs.counts.end() ? 0 : it->second, want,
                         "Gold n=" + std::to_string(n) + " k=" + std::to_string(k) + " M_" + std::to_string(m));
        }
    };
    for (unsigned n : {3u, 4u, 5u, 6u, 8u})
        for (unsigned k = 1; k < n; ++k)
            if (gcd(n, k) == 1) gold(n, k);
    gold(6, 2);
    for (unsigned n : {3u, 4u, 5u}) ck.expect_eq(cm_zero_count(n, 1, n), cm_zero_prediction(n, 1), "C_m zeros n=" + std::to_string(n));
    for (unsigned n = 2; n <= 5; ++n) {
        const auto j = jacobsthal_counts(Field::build(3, n));
        ck.expect_eq(j.n1, j.predicted, "N1 n=" + std::to_string(n));
        ck.expect_eq(j.n2, j.predicted, "N2 n=" + std::to_string(n));
    }
}

// ---------------------------------------------------------------- 8

void structural(Check& ck) {
    std::mt19937_64 rng(8);
    u64 fields = 0;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u})
        for (unsigned n = 1; ipow(p, n) <= 243; ++n) {
            if (p == 2 && n == 1) continue;
            const Field f = Field::build(p, n);
            ++fields;
            std::uniform_int_distribution<std::uint32_t> pick_c(0, f.order() - 1);
            std::uniform_int_distribution<u64> pick_d(1, 2 * f.order());
            for (int i = 0; i < 24; ++i) {
                const u64 d = pick_d(rng);
                const Element c{pick_c(rng)};
                const auto fast = c_uniformity_power(f, d, c);
                const auto slow = c_uniformity_general(f, as_lookup(f, PowerMap{d}), c);
                const std::string where = tag(p, n) + " d=" + std::to_string(d) + " c=" + fmt_c(f, c);
                ck.expect_eq(fast.uniformity, slow.uniformity, where);
                ck.count();
                if (fast.spectrum != slow.spectrum) ck.fail(where + ": spectra differ");
                const auto row = ddt_row(f, power_map(d), c, Element{pick_c(rng)});
                u64 total = 0;
                for (auto v : row.counts) total += v;
                ck.expect_eq(total, f.order(), where + " row sum");
            }
            if (p != 2) {
                for (std::uint32_t a = 0; a < f.order(); a += 1 + f.order() / 40)
                    for (std::uint32_t b = 0; b < f.order(); ++b) {
                        const int lhs = f.quadratic_character(f.mul(Element{a}, Element{b}));
                        const int rhs = f.quadratic_character(Element{a}) * f.quadratic_character(Element{b});
                        ck.count();
                        if (lhs != rhs) ck.fail(tag(p, n) + " eta not multiplicative");
                    }
            }
        }
    ck.note(std::to_string(fields) + " fields with q <= 243, 24 (d, c) pairs each");

    for (auto [p, n] : std::vector<std::pair<u64, unsigned>>{{3, 4}, {5, 3}, {11, 2}, {101, 1}}) {
        const Field base = Field::build(p, n), ext = Field::build(p, 2 * n);
        const SubfieldEmbedding emb(base, ext);
        u64 sampled = 0;
        for (std::uint32_t ui = 1; ui < ext.order(); ++ui) {
            const Element u{ui};
            const auto x = emb.to_base(ext.add(u, ext.inv(u)));
            if (!x) continue;
            ++sampled;
            for (u64 m : {2u, 3u, 7u, 10u, 31u}) {
                ck.count();
                const Element lhs = emb.to_ext(dickson_eval(base, m, *x));
                if (lhs != ext.add(ext.pow(u, m), ext.inv(ext.pow(u, m))))
                    ck.fail(tag(p, n) + " Dickson identity m=" + std::to_string(m));
            }
        }
        if (sampled < 100) ck.fail(tag(p, n) + ": only " + std::to_string(sampled) + " u sampled");
        ck.note(tag(p, n) + ": Dickson identity on " + std::to_string(sampled) + " u");
    }
}

// ---------------------------------------------------------------- 9

std::string run(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int rc = pclose(pipe);
    return out + "\n<exit " + std::to_string(rc) + ">";
}

void determinism(Check& ck, const std::string& cli) {
    const unsigned many = std::max(4u, std::thread::hardware_concurrency());
    auto sweep_text = [](unsigned threads) {
        const Field f = Field::build(3, 5);
        std::string s;
        for (const auto& r : c_sweep(f, ipow(3, 5) - 3, expand_cset(f, parse_cset("all")), threads))
            s += report_json(f, power_map(ipow(3, 5) - 3), r, true).dump() + "\n";
        return s;
    };
    auto verify_text = [](unsigned threads) {
        const Grid g = Grid::desk_default().limited(729);
        std::string s;
        for (const auto& tc : registry()) {
            const auto rep = verify_case(tc, g, threads);
            for (const auto& ir : rep.instances) s += instance_json(Field::build(ir.params.p, ir.params.n), tc.id, ir).dump() + "\n";
            s += verification_summary_json(rep).dump() + "\n";
        }
        return s;
    };
    ck.count();
    if (sweep_text(1) != sweep_text(many)) ck.fail("library sweep differs between 1 and " + std::to_string(many) + " threads");
    ck.count();
    if (verify_text(1) != verify_text(many)) ck.fail("library verify differs between 1 and " + std::to_string(many) + " threads");

    if (cli.empty()) {
        ck.note("no --cli given; CLI runs skipped");
        return;
    }
    const std::vector<std::string> cmds{
        "sweep -p 3 -n 5 -d 240 --c-set all",
        "sweep -p 2 -n 8 -d 254 --c-set not-one --csv",
        "verify --max-size 729",
    };
    for (const auto& c : cmds) {
        const std::string a = run(cli + " --threads 1 " + c + " 2>&1");
        const std::string b = run(cli + " --threads " + std::to_string(many) + " " + c + " 2>&1");
        const std::string a2 = run(cli + " --threads 1 " + c + " 2>&1");
        ck.count();
        if (a != b || a != a2) ck.fail("cdiff " + c + ": output differs across runs/thread counts");
        ck.note("cdiff " + c + ": " + std::to_string(a.size()) + " bytes");
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--cli") && i + 1 < argc) cli = argv[++i];
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--cli PATH] [--only N]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"gold exact values (binary, coprime k and the 2^e+1 cases)", gold_exact},
        {"gold with c in the subfield: gcd(p^k+1, p^n-1)", subfield_gold},
        {"(p^k+1)/2 at c=-1: PcN boundary and Dickson identity", pcn_boundary},
        {"3^n-3: c=-1, c=0 and value sets", three_n_minus_3},
        {"upper-bound rows, p in {5,7,11,13}, q <= 2500", upper_bounds},
        {"inverse map rows", inverse_rows},
        {"closed forms: gcd, Gold distribution, C_m, Jacobsthal", closed_forms},
        {"structural: fast vs brute force, row sums, eta, Dickson identity", structural},
        {"determinism across thread counts", [&](Check& ck) { determinism(ck, cli); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Check ck;
        std::cout << "criterion " << i + 1 << ": " << criteria[i].first << '\n';
        try {
            criteria[i].second(ck);
        } catch (const std::exception& e) {
            ck.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << (ck.ok() ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << ck.checks() << " checks, "
             << ck.failures() << " mismatches, " << static_cast<int>(secs * 10) / 10.0 << "s)";
        std::cout << line.str() << std::endl;
        if (!ck.ok()) ++failed;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << failed << " of " << (only ? 1 : criteria.size()) << '\n';
    return failed ? 1 : 0;
}
