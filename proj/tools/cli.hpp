#ifndef POLEST_TOOLS_CLI_HPP
#define POLEST_TOOLS_CLI_HPP

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <polest/polest.hpp>
#include <polest/verify.hpp>

namespace polest::cli {

enum ExitCode : int { kOk = 0, kAssertionFailure = 1, kUsage = 2 };

struct Range {
    int lo = 0;
    int hi = -1;
    [[nodiscard]] bool empty() const { return hi < lo; }
};

/// "a..b" or "a".
inline Range parse_range(const std::string& text) {
    auto dots = text.find("..");
    auto parse_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw invalid_input("bad range '" + text + "'");
        }
        detail::require(used == s.size(), "bad range '" + text + "'");
        return v;
    };
    if (dots == std::string::npos) {
        int v = parse_int(text);
        return {v, v};
    }
    return {parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
}

inline std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_p(item));
    detail::require(!out.empty(), "empty p list");
    return out;
}

inline Vector parse_vector(const std::string& text) {
    Vector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw invalid_input("bad vector entry '" + item + "'");
        }
        detail::require(used == item.size(), "bad vector entry '" + item + "'");
        out.push_back(v);
    }
    detail::require(!out.empty(), "empty vector");
    return out;
}

/// JSON number, or the string "inf" / "-inf" / "nan" for non-finite values.
inline nlohmann::json num(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

inline std::string bound_text(const BoundReport& r) { return r.value ? format_number(*r.value) : "overflow"; }
inline std::string log_text(double lv) { return std::isfinite(lv) ? format_number(std::exp(lv)) : "overflow"; }

struct Config {
    std::uint64_t seed = 42;
    int budget = 256;
    unsigned threads = 1;
    std::string format = "csv";
    bool override_caps = false;
};

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::string m = "2..3";
    std::string n;
    std::string p;
    bool sharp = false;
};

inline int cmd_bounds(const BoundsArgs& args, const Config& cfg, std::ostream& out) {
    Range mr = parse_range(args.m);
    detail::require(!mr.empty(), "empty m range");
    detail::require(mr.lo >= 1, "m must be >= 1");
    std::optional<Range> nr;
    if (!args.n.empty()) {
        nr = parse_range(args.n);
        detail::require(!nr->empty(), "empty n range");
        detail::require(nr->lo >= 1, "n must be >= 1");
    }
    std::vector<std::optional<double>> spaces{std::nullopt};
    if (!args.p.empty())
        for (double p : parse_p_list(args.p)) spaces.emplace_back(p);

    struct Row {
        int m, n;
        Partition k;
        std::string space;
        BoundReport lower;
        BoundReport upper;
        std::vector<std::pair<std::string, double>> branches;
        bool pinch;
    };
    std::vector<Row> rows;
    for (int m = mr.lo; m <= mr.hi; ++m) {
        const int nlo = nr ? nr->lo : 1, nhi = nr ? std::min(nr->hi, m) : m;
        for (int n = nlo; n <= nhi; ++n) {
            for (const auto& k : partitions_into(m, n)) {
                for (const auto& p : spaces) {
                    Row row{m, n, k, "", {}, {}, {}, false};
                    if (!p) {
                        row.space = "generic";
                        row.lower = bound_x_lower(k);
                        row.upper = bound_real_min(k);
                    } else {
                        row.space = "lp(" + LpSpace(*p, 1).tag() + ")";
                        row.lower = bound_lp_lower(k, *p);
                        row.upper = args.sharp ? bound_lp_upper_sharp(k, *p) : bound_lp_upper(k, *p);
                    }
                    for (const auto& [name, lv] : row.upper.terms)
                        if (name.rfind("factor", 0) != 0) row.branches.emplace_back(name, lv);
                    row.pinch = std::abs(row.lower.log_value - row.upper.log_value) <=
                                1e-12 * std::max(1.0, std::abs(row.upper.log_value));
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    if (cfg.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json branches = nlohmann::json::object();
            for (const auto& [name, lv] : r.branches) branches[name] = num(std::exp(lv));
            arr.push_back({{"m", r.m},
                           {"n", r.n},
                           {"partition", r.k.parts()},
                           {"space", r.space},
                           {"lower", r.lower.value ? num(*r.lower.value) : nlohmann::json("overflow")},
                           {"upper_branches", branches},
                           {"upper", r.upper.value ? num(*r.upper.value) : nlohmann::json("overflow")},
                           {"log_lower", r.lower.log_value},
                           {"log_upper", r.upper.log_value},
                           {"pinch", r.pinch},
                           {"lower_citation", r.lower.cite()},
                           {"upper_citation", r.upper.cite()}});
        }
        out << nlohmann::json({{"sharp", args.sharp}, {"rows", arr}}).dump(2) << "\n";
    } else {
        out << "m,n,partition,space,lower,upper_branch_1,upper_branch_2,upper,log_lower,log_upper,pinch\n";
        for (const auto& r : rows) {
            std::string b1 = r.branches.size() > 0 ? log_text(r.branches[0].second) : "";
            std::string b2 = r.branches.size() > 1 ? log_text(r.branches[1].second) : "";
            out << r.m << ',' << r.n << ",\"" << r.k.to_string() << "\"," << r.space << ',' << bound_text(r.lower) << ','
                << b1 << ',' << b2 << ',' << bound_text(r.upper) << ',' << format_number(r.lower.log_value) << ','
                << format_number(r.upper.log_value) << ',' << (r.pinch ? "yes" : "no") << '\n';
        }
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

inline int cmd_verify(const std::string& suite, const Config& cfg, std::ostream& out) {
    std::vector<std::string> names;
    if (suite == "all") {
        names = suite_names();
    } else {
        const auto& known = suite_names();
        if (std::find(known.begin(), known.end(), suite) == known.end()) throw invalid_input("unknown suite '" + suite + "'");
        names = {suite};
    }
    VerifyConfig vc;
    vc.seed = cfg.seed;
    vc.budget = cfg.budget;
    vc.threads = cfg.threads;
    vc.override_caps = cfg.override_caps;
    bool all_passed = true;
    nlohmann::json suites = nlohmann::json::array();
    if (cfg.format != "json") out << "suite,check,cases,failures,worst,status\n";
    for (const auto& name : names) {
        auto res = run_suite(name, vc);
        all_passed = all_passed && res.passed();
        if (cfg.format == "json") {
            nlohmann::json checks = nlohmann::json::array();
            for (const auto& c : res.checks)
                checks.push_back({{"check", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"worst", num(c.worst)}});
            suites.push_back({{"suite", name},
                              {"passed", res.passed()},
                              {"checks", checks},
                              {"counterexamples", res.counterexamples}});
        } else {
            for (const auto& c : res.checks)
                out << name << ',' << c.name << ',' << c.cases << ',' << c.failures << ',' << format_number(c.worst) << ','
                    << (c.failures == 0 ? "pass" : "FAIL") << '\n';
            for (const auto& ce : res.counterexamples) out << "# counterexample " << name << ' ' << ce.dump() << '\n';
        }
    }
    if (cfg.format == "json")
        out << nlohmann::json({{"seed", cfg.seed}, {"budget", cfg.budget}, {"passed", all_passed}, {"suites", suites}}).dump(2)
            << "\n";
    return all_passed ? kOk : kAssertionFailure;
}

// ---------------------------------------------------------------------------
// extremal
// ---------------------------------------------------------------------------

inline int cmd_extremal(const std::string& partition_text, const std::string& p_text, const Config& cfg, std::ostream& out) {
    detail::require(!partition_text.empty(), "extremal needs --partition");
    Partition k = parse_partition(partition_text);
    std::optional<double> p;
    if (!p_text.empty()) {
        auto ps = parse_p_list(p_text);
        detail::require(ps.size() == 1, "extremal takes a single p value");
        p = ps[0];
    }
    auto inst = p ? build_extremal_lp(k, *p) : build_extremal_x(k);
    NormOptions opt;
    opt.budget = cfg.budget;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    auto rep = verify_extremal(inst, opt);
    if (cfg.format == "json") {
        out << nlohmann::json({{"instance", to_json(inst)}, {"report", to_json(rep)}}).dump(2) << "\n";
    } else {
        out << "field,value\n";
        out << "partition,\"" << k.to_string() << "\"\n";
        out << "space," << (inst.generic ? "generic" : inst.space.tag()) << '\n';
        out << "attained_value," << format_number(inst.attained_value) << '\n';
        out << "polarized," << format_number(rep.polarized) << '\n';
        out << "analytic_poly_norm," << format_number(inst.analytic_poly_norm) << '\n';
        out << "norm_estimate," << format_number(rep.norm_estimate) << '\n';
        out << "ratio," << format_number(rep.ratio) << '\n';
        out << "lower_bound," << format_number(rep.lower_bound) << '\n';
        out << "deviation," << format_number(rep.deviation) << '\n';
        out << "passed," << (rep.passed() ? "yes" : "no") << '\n';
        for (const auto& f : rep.failures) out << "failure,\"" << f << "\"\n";
    }
    return rep.passed() ? kOk : kAssertionFailure;
}

// ---------------------------------------------------------------------------
// radius
// ---------------------------------------------------------------------------

inline int cmd_radius(const std::string& file, const std::string& y_text, const std::string& x_text, const Config& cfg,
                      std::ostream& out) {
    detail::require(!file.empty(), "radius needs --series FILE");
    std::ifstream in(file);
    if (!in) throw invalid_input("cannot open series file '" + file + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("series file does not parse: ") + e.what());
    }
    auto s = series_from_json(j);
    NormOptions opt;
    opt.budget = cfg.budget;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    auto rad = radius_uniform(s, opt);
    auto rb = rho_bar(s, opt);
    const bool entire = std::isinf(rad.rho);

    std::vector<std::pair<std::string, nlohmann::json>> fields;
    fields.emplace_back("rho", num(rad.rho));
    fields.emplace_back("method", to_string(rad.method));
    fields.emplace_back("tail_window", rad.tail_window);
    fields.emplace_back("rho_bar_empirical", num(rb.empirical));
    fields.emplace_back("rho_bar_floor", num(rb.floor));
    fields.emplace_back("rho_bar", num(rb.reported));
    if (entire) fields.emplace_back("analyticity", "fully analytic everywhere");
    for (int n = 1; n <= 3; ++n)
        fields.emplace_back("derivative_floor_n" + std::to_string(n), num(rad.rho / derivative_floor_factor(n)));

    bool ok = true;
    if (!y_text.empty()) {
        Vector y = parse_vector(y_text);
        detail::require(static_cast<int>(y.size()) == s.dim(), "--y length differs from series dimension");
        Vector shift(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) shift[i] = y[i] - s.center()[i];
        const double ny = s.space().norm(shift);
        if (!(ny < rb.reported))
            throw invalid_input("||y|| = " + format_number(ny) + " is not below rho_bar = " + format_number(rb.reported));
        fields.emplace_back("valid_ball_radius", num(rb.reported - ny));
        if (!x_text.empty()) {
            Vector x = parse_vector(x_text);
            detail::require(static_cast<int>(x.size()) == s.dim(), "--x length differs from series dimension");
            auto rep = verify_analyticity(s, y, x, 1e-8, s.max_degree(), rb.reported, opt);
            const double rel = rep.difference / std::max(1.0, std::abs(rep.direct));
            fields.emplace_back("direct", num(rep.direct));
            fields.emplace_back("reexpanded", num(rep.reexpanded));
            fields.emplace_back("relative_error", num(rel));
            fields.emplace_back("coefficient_majorant", num(rep.coefficient_majorant));
            fields.emplace_back("match", rep.passed);
            ok = rep.passed;
        }
    } else if (!x_text.empty()) {
        throw invalid_input("--x needs --y");
    }
    if (cfg.format == "json") {
        nlohmann::json o = nlohmann::json::object();
        for (auto& [k, v] : fields) o[k] = v;
        out << o.dump(2) << "\n";
    } else {
        out << "field,value\n";
        for (auto& [k, v] : fields) {
            std::string text;
            if (v.is_number_float())
                text = format_number(v.get<double>());
            else if (v.is_string())
                text = v.get<std::string>();
            else
                text = v.dump();
            out << k << ',' << text << '\n';
        }
    }
    return ok ? kOk : kAssertionFailure;
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"polarization constants, polynomial norms and power-series radii"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--seed", cfg.seed, "master RNG seed");
    app.add_option("--budget", cfg.budget, "restart budget for norm estimates")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--override-caps", cfg.override_caps, "lift evaluation caps");

    BoundsArgs bargs;
    auto* bounds = app.add_subcommand("bounds", "tabulate lower and upper bounds");
    bounds->add_option("--m", bargs.m, "degree range a..b");
    bounds->add_option("--n", bargs.n, "part-count range a..b (default 1..m)");
    bounds->add_option("--p", bargs.p, "comma-separated p values (number or inf)");
    bounds->add_flag("--sharp", bargs.sharp, "use the exact power sum in the l_p upper bound");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "polarization | sandwich | moments | tails | extremal | asymptotic | series | all")
        ->required();

    std::string partition_text, p_text;
    auto* extremal = app.add_subcommand("extremal", "emit the extremal construction for a partition");
    extremal->add_option("--partition", partition_text, "k1,k2,...")->required();
    extremal->add_option("--p", p_text, "l_p exponent (omit for the normed-space construction)");

    std::string series_file, y_text, x_text;
    auto* radius = app.add_subcommand("radius", "radius and re-expansion analysis of a power series");
    radius->add_option("--series", series_file, "series JSON file")->required();
    radius->add_option("--y", y_text, "re-expansion center, comma-separated");
    radius->add_option("--x", x_text, "evaluation point, comma-separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*bounds) return cmd_bounds(bargs, cfg, out);
        if (*verify) return cmd_verify(suite, cfg, out);
        if (*extremal) return cmd_extremal(partition_text, p_text, cfg, out);
        if (*radius) return cmd_radius(series_file, y_text, x_text, cfg, out);
    } catch (const cap_exceeded& e) {
        err << "error: " << e.what() << " (use --override-caps)\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace polest::cli

#endif
