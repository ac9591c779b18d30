// cdiff: command-line front end. Every subcommand writes JSON lines
// ("cdiff/1" records) to stdout unless --csv or a markdown table is asked for.
//
// Exit codes: 0 ok, 1 a verified prediction failed, 2 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdiff/cdiff.hpp"

namespace {

using namespace cdiff;

struct FieldArgs {
    u64 p = 0;
    unsigned n = 0;
    std::string modulus;
    std::string field_file;

    void add_to(CLI::App* app, bool required = true) {
        auto* po = app->add_option("-p", p, "characteristic");
        auto* no = app->add_option("-n", n, "extension degree");
        app->add_option("--modulus", modulus, "modulus coefficients c0,...,cn (comma separated)");
        app->add_option("--field", field_file, "field description JSON (as printed by `field`)");
        if (required) {
            po->needs(no);
            no->needs(po);
        }
    }

    Field make() const {
        if (!field_file.empty()) {
            std::ifstream in(field_file);
            if (!in) throw std::invalid_argument("cannot open field file '" + field_file + "'");
            return field_from_json(Json::parse(in));
        }
        if (p == 0 || n == 0) throw std::invalid_argument("need -p and -n (or --field)");
        if (modulus.empty()) return Field::build(p, n);
        std::vector<std::int64_t> coeffs;
        std::stringstream ss(modulus);
        for (std::string part; std::getline(ss, part, ',');) coeffs.push_back(std::stoll(part));
        return Field::with_modulus(p, n, coeffs);
    }
};

struct FunctionArgs {
    u64 d = 0;
    std::string function_file;

    void add_to(CLI::App* app) {
        app->add_option("-d", d, "power map exponent");
        app->add_option("--function", function_file, "function spec JSON: {\"power\": d} or {\"table\": [...]}");
    }

    FunctionSpec make(const Field& f) const {
        if (!function_file.empty()) {
            std::ifstream in(function_file);
            if (!in) throw std::invalid_argument("cannot open function file '" + function_file + "'");
            return function_from_json(f, Json::parse(in));
        }
        if (d == 0) throw std::invalid_argument("need -d (>= 1) or --function");
        return power_map(d);
    }
};

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

int run(int argc, char** argv) {
    CLI::App app{"c-differential uniformity of functions over GF(p^n)"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: CDIFF_THREADS or hardware)");

    // field
    FieldArgs field_args;
    std::string generator;
    auto* field_cmd = app.add_subcommand("field", "print the field description");
    field_args.add_to(field_cmd);
    field_cmd->add_option("--generator", generator, "generator coefficients (with --modulus)");

    // eval
    FieldArgs eval_field;
    FunctionArgs eval_fn;
    std::string eval_x, eval_c, eval_a;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate F(x), or the c-derivative with -c and -a");
    eval_field.add_to(eval_cmd);
    eval_fn.add_to(eval_cmd);
    eval_cmd->add_option("-x", eval_x, "element expression")->required();
    eval_cmd->add_option("-c", eval_c, "c for the c-derivative");
    eval_cmd->add_option("-a", eval_a, "shift a for the c-derivative");

    // uniformity / spectrum
    FieldArgs uni_field;
    FunctionArgs uni_fn;
    std::string uni_c;
    bool uni_general = false;
    auto* uni_cmd = app.add_subcommand("uniformity", "c-differential uniformity for one c");
    uni_field.add_to(uni_cmd);
    uni_fn.add_to(uni_cmd);
    uni_cmd->add_option("-c", uni_c, "c expression: integer, g^K, [c0,...]")->required();
    uni_cmd->add_flag("--general", uni_general, "force the brute-force path for power maps");

    FieldArgs spec_field;
    FunctionArgs spec_fn;
    std::string spec_c, spec_row;
    bool spec_general = false;
    auto* spec_cmd = app.add_subcommand("spectrum", "full c-DDT spectrum for one c (optionally one row)");
    spec_field.add_to(spec_cmd);
    spec_fn.add_to(spec_cmd);
    spec_cmd->add_option("-c", spec_c, "c expression")->required();
    spec_cmd->add_option("--row", spec_row, "also print the DDT row for this a");
    spec_cmd->add_flag("--general", spec_general, "force the brute-force path for power maps");

    // sweep
    FieldArgs sweep_field;
    FunctionArgs sweep_fn;
    std::string cset = "all";
    bool sweep_csv = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "reports for every c in a c-set");
    sweep_field.add_to(sweep_cmd);
    sweep_fn.add_to(sweep_cmd);
    sweep_cmd->add_option("--c-set", cset,
                          "all | not-one | not-pm-one | not-zero-pm-one | subfield:K | outside-subfield:K");
    sweep_cmd->add_flag("--csv", sweep_csv, "CSV instead of JSON lines");

    // verify / table
    std::string verify_case_id;
    u64 max_size = 0;
    auto* verify_cmd = app.add_subcommand("verify", "check registered claims against brute force");
    verify_cmd->add_option("--case", verify_case_id, "case id (default: all)");
    verify_cmd->add_option("--max-size", max_size, "skip fields with more elements");
    bool list_cases = false;
    verify_cmd->add_flag("--list", list_cases, "list case ids and exit");

    bool table_csv = false;
    u64 table_max = 0;
    auto* table_cmd = app.add_subcommand("table", "reproduce the summary table over the default grid");
    table_cmd->add_flag("--csv", table_csv, "CSV instead of markdown");
    table_cmd->add_option("--max-size", table_max, "skip fields with more elements");

    // closed forms
    FieldArgs dk_field;
    u64 dk_m = 0;
    std::string dk_pre, dk_x;
    auto* dk_cmd = app.add_subcommand("dickson", "Dickson polynomial D_m with parameter 1");
    dk_field.add_to(dk_cmd);
    dk_cmd->add_option("-m", dk_m, "degree")->required();
    dk_cmd->add_option("--preimage", dk_pre, "x0: preimage size of D_m(x0), enumerated and predicted");
    dk_cmd->add_option("-x", dk_x, "evaluate D_m at x");

    unsigned gd_n = 0, gd_k = 0;
    auto* gd_cmd = app.add_subcommand("gold-dist", "root counts of z^(2^k+1) + z + beta over GF(2^n)");
    gd_cmd->add_option("-n", gd_n, "extension degree")->required();
    gd_cmd->add_option("-k", gd_k, "Gold parameter")->required();

    FieldArgs part_field;
    auto* part_cmd = app.add_subcommand("partition", "S_{i,j} cells (and Jacobsthal counts for p = 3)");
    part_field.add_to(part_cmd);

    auto* gcd_cmd = app.add_subcommand("gcd", "gcd(p^k+1, p^n-1) with its closed-form branch");
    u64 g_p = 0;
    unsigned g_k = 0, g_n = 0;
    gcd_cmd->add_option("-p", g_p)->required();
    gcd_cmd->add_option("-k", g_k)->required();
    gcd_cmd->add_option("-n", g_n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (threads) set_thread_count(threads);

    try {
        if (*field_cmd) {
            if (!generator.empty() && field_args.modulus.empty())
                throw std::invalid_argument("--generator needs --modulus");
            Field f = field_args.make();
            if (!generator.empty()) {
                std::vector<std::int64_t> mod(f.modulus().begin(), f.modulus().end()), gen;
                std::stringstream ss(generator);
                for (std::string part; std::getline(ss, part, ',');) gen.push_back(std::stoll(part));
                f = Field::with_modulus(f.p(), f.n(), mod, gen);
            }
            emit(field_json(f));
            return 0;
        }
        if (*eval_cmd) {
            const Field f = eval_field.make();
            const FunctionSpec fn = eval_fn.make(f);
            const Element x = parse_element(f, eval_x);
            Json j = record("eval");
            j["p"] = f.p();
            j["n"] = f.n();
            put_function(j, fn);
            j["x"] = element_json(f, x);
            if (!eval_c.empty() || !eval_a.empty()) {
                const Element c = parse_element(f, eval_c.empty() ? "1" : eval_c);
                const Element a = parse_element(f, eval_a.empty() ? "0" : eval_a);
                j["c"] = element_json(f, c);
                j["a"] = element_json(f, a);
                j["value"] = element_json(f, c_derivative(f, fn, c, a, x));
            } else {
                j["value"] = element_json(f, eval(f, fn, x));
            }
            emit(j);
            return 0;
        }
        if (*uni_cmd || *spec_cmd) {
            const bool spectrum = spec_cmd->parsed();
            const Field f = (spectrum ? spec_field : uni_field).make();
            const FunctionSpec fn = (spectrum ? spec_fn : uni_fn).make(f);
            const Element c = parse_element(f, spectrum ? spec_c : uni_c);
            const bool general = spectrum ? spec_general : uni_general;
            const auto* pm = std::get_if<PowerMap>(&fn);
            const CDDTReport rep = (pm && !general) ? c_uniformity_power(f, pm->d, c)
                                                    : c_uniformity_general(f, fn, c);
            Json j = report_json(f, fn, rep, spectrum);
            if (spectrum && !spec_row.empty()) {
                const DDTRow row = ddt_row(f, fn, c, parse_element(f, spec_row));
                j["a"] = element_json(f, row.a);
                j["row"] = row.counts;
            }
            emit(j);
            return 0;
        }
        if (*sweep_cmd) {
            const Field f = sweep_field.make();
            const FunctionSpec fn = sweep_fn.make(f);
            const auto cs = expand_cset(f, parse_cset(cset));
            const auto reports = c_sweep(f, fn, cs);
            if (sweep_csv) std::cout << csv_header_reports() << '\n';
            for (const auto& rep : reports) {
                if (sweep_csv) std::cout << report_csv(f, fn, rep) << '\n';
                else emit(report_json(f, fn, rep, true));
            }
            return 0;
        }
        if (*verify_cmd) {
            if (list_cases) {
                for (const auto& tc : registry()) {
                    Json j = record("case");
                    j["case"] = tc.id;
                    j["exponent"] = tc.exponent;
                    j["condition"] = tc.condition;
                    j["reference"] = tc.reference;
                    j["optional_tier"] = tc.optional_tier;
                    emit(j);
                }
                return 0;
            }
            std::vector<TheoremCase> cases;
            if (verify_case_id.empty()) {
                cases = registry();
            } else {
                auto tc = find_case(verify_case_id);
                if (!tc) throw std::invalid_argument("unknown case '" + verify_case_id + "'");
                cases.push_back(*tc);
            }
            Grid grid = Grid::desk_default();
            if (max_size) grid = grid.limited(max_size);
            bool all_pass = true;
            std::map<std::pair<u64, unsigned>, Field> fields;
            for (const auto& tc : cases) {
                const auto rep = verify_case(tc, grid);
                for (const auto& ir : rep.instances) {
                    const auto key = std::make_pair(ir.params.p, ir.params.n);
                    auto it = fields.find(key);
                    if (it == fields.end()) it = fields.emplace(key, Field::build(key.first, key.second)).first;
                    emit(instance_json(it->second, tc.id, ir));
                }
                emit(verification_summary_json(rep));
                all_pass = all_pass && rep.pass;
            }
            return all_pass ? 0 : 1;
        }
        if (*table_cmd) {
            Grid grid = Grid::desk_default();
            if (table_max) grid = grid.limited(table_max);
            const auto rows = reproduce_table(grid);
            std::cout << (table_csv ? render_csv(rows) : render_markdown(rows));
            return 0;
        }
        if (*dk_cmd) {
            const Field f = dk_field.make();
            Json j = record("dickson");
            j["p"] = f.p();
            j["n"] = f.n();
            j["m"] = dk_m;
            if (!dk_x.empty()) {
                const Element x = parse_element(f, dk_x);
                j["x"] = element_json(f, x);
                j["value"] = element_json(f, dickson_eval(f, dk_m, x));
            }
            if (f.p() != 2) {
                const DicksonPreimages dp(f, dk_m);
                const auto& prm = dp.params();
                j["r"] = prm.r;
                j["m_gcd"] = prm.m_gcd;
                j["lbar"] = prm.lbar;
                j["max_preimage"] = dp.max_preimage();
                const u64 q = f.order();
                j["permutation"] = dp.max_preimage() == 1;
                j["permutation_criterion"] = gcd(dk_m, q * q - 1) == 1;
                if (!dk_pre.empty()) {
                    const auto pre = dp.at(parse_element(f, dk_pre));
                    j["x0"] = element_json(f, pre.x0);
                    j["image"] = element_json(f, pre.value);
                    j["count"] = pre.count;
                    j["branch"] = to_string(pre.branch);
                    if (pre.predicted_twice % 2 == 0) j["predicted"] = pre.predicted_twice / 2;
                    else j["predicted"] = static_cast<double>(pre.predicted_twice) / 2.0;
                    j["agrees"] = pre.agrees();
                }
            } else if (!dk_pre.empty()) {
                throw std::invalid_argument("--preimage needs odd characteristic");
            }
            emit(j);
            return 0;
        }
        if (*gd_cmd) {
            const auto dist = gold_solution_distribution(gd_n, gd_k);
            const auto pred = gold_distribution_prediction(gd_n, gd_k);
            Json j = record("gold-dist");
            j["n"] = gd_n;
            j["k"] = gd_k;
            j["gcd"] = gcd(gd_n, gd_k);
            Json counts = Json::object();
            for (auto [m, cnt] : dist.counts) counts[std::to_string(m)] = cnt;
            j["counts"] = counts;
            j["zero_beta_roots"] = dist.zero_beta_roots;
            Json pj = Json::object();
            bool match = true;
            for (auto [m, cnt] : pred) {
                pj[std::to_string(m)] = cnt;
                const auto it = dist.counts.find(m);
                match = match && (it == dist.counts.end() ? cnt == 0 : it->second == cnt);
            }
            j["predicted"] = pj;
            j["matches"] = match;
            const unsigned m = gd_n / static_cast<unsigned>(gcd(gd_n, gd_k));
            j["cm_index"] = m;
            j["cm_zeros"] = cm_zero_count(gd_n, gd_k, m);
            j["cm_zeros_predicted"] = cm_zero_prediction(gd_n, gd_k);
            emit(j);
            return match ? 0 : 1;
        }
        if (*part_cmd) {
            const Field f = part_field.make();
            const auto s = sij_partition(f);
            Json j = record("partition");
            j["p"] = f.p();
            j["n"] = f.n();
            j["S_1_1"] = s.s11.size();
            j["S_-1_-1"] = s.s_1_1.size();
            j["S_1_-1"] = s.s1_1.size();
            j["S_-1_1"] = s.s_11.size();
            j["eta_minus_one"] = f.quadratic_character(f.minus_one());
            if (f.p() == 3 && f.n() >= 2) {
                const auto jc = jacobsthal_counts(f);
                j["N1"] = jc.n1;
                j["N2"] = jc.n2;
                j["N_predicted"] = jc.predicted;
            }
            emit(j);
            return 0;
        }
        if (*gcd_cmd) {
            const auto g = gcd_qk(g_p, g_k, g_n);
            Json j = record("gcd");
            j["p"] = g.p;
            j["k"] = g.k;
            j["n"] = g.n;
            j["value"] = g.value;
            j["branch"] = to_string(g.branch);
            emit(j);
            return 0;
        }
    } catch (const std::logic_error& e) {
        // invalid_argument, domain_error, length_error, out_of_range
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
