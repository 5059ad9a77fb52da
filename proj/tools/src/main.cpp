#include <mills/analysis.hpp>
#include <mills/distribution.hpp>
#include <mills/errors.hpp>
#include <mills/grid.hpp>
#include <mills/inequalities.hpp>
#include <mills/specfun.hpp>

#include "spec_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct run_config {
    std::string dist = "normal-h";
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double grid_min = 1e-3;
    double grid_max = 1e3;
    int grid_points = 2000;
    double slack = 1e-9;
    std::uint64_t seed = 42;
    std::string format = "text";
    std::string out;

    bool has_alpha() const { return !std::isnan(alpha); }
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void put_num(ordered_json& obj, const std::string& key, double v) {
    if (std::isfinite(v)) {
        obj[key] = v;
        return;
    }
    obj[key] = std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    obj["nonfinite"] = true;
}

void add_common_flags(CLI::App* sub, run_config& cfg) {
    sub->add_option("--dist", cfg.dist,
                    "distribution: normal-h, gamma, or a path to a spec file")
        ->capture_default_str();
    sub->add_option("--alpha", cfg.alpha, "gamma shape parameter (requires --dist gamma)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid-min", cfg.grid_min, "probe grid lower end")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--grid-max", cfg.grid_max, "probe grid upper end")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--grid-points", cfg.grid_points, "probe grid size")
        ->check(CLI::Range(3, 2000000))
        ->capture_default_str();
    sub->add_option("--slack", cfg.slack, "monotonicity slack relative to local scale")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed for sampled suites")->capture_default_str();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
}

void check_grid_flags(const run_config& cfg) {
    if (!(cfg.grid_min < cfg.grid_max))
        throw usage_error("--grid-min must be smaller than --grid-max");
}

mills::certify_config to_certify_config(const run_config& cfg) {
    mills::certify_config c;
    c.grid_min = cfg.grid_min;
    c.grid_max = cfg.grid_max;
    c.grid_points = cfg.grid_points;
    c.slack = cfg.slack;
    return c;
}

mills::distribution_model build_model(const run_config& cfg) {
    if (cfg.dist == "normal-h") {
        if (cfg.has_alpha())
            throw usage_error("--alpha only applies to --dist gamma");
        return mills::make_normal_halfline();
    }
    if (cfg.dist == "gamma") {
        if (!cfg.has_alpha())
            throw usage_error("--alpha is required for --dist gamma");
        return mills::make_gamma(mills::shape_param(cfg.alpha));
    }
    if (cfg.has_alpha())
        throw usage_error("--alpha only applies to --dist gamma");
    const mills::cli::custom_spec spec = mills::cli::load_custom_spec(cfg.dist);
    return mills::cli::make_custom_from_spec(spec, {cfg.grid_min, cfg.grid_max});
}

void write_output(const run_config& cfg, const std::string& payload) {
    if (cfg.out.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file '" + cfg.out + "'");
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    f.flush();
    if (!f)
        throw std::runtime_error("write to '" + cfg.out + "' failed");
}

// The Stieltjes-transform form of the half-line normal Mills ratio.
double stieltjes_fn(double t) {
    return mills::normal_mills(std::sqrt(t)).value / std::sqrt(t);
}

//----------------------------------------------------------------------------
// eval
//----------------------------------------------------------------------------

int run_eval(const run_config& cfg, double x) {
    check_grid_flags(cfg);
    const mills::distribution_model model = build_model(cfg);

    const double f = model.density(x);
    const double survival = model.survival(x);
    const double m = model.mills(x);
    const double omega = model.omega(x);
    const double omega_prime = model.omega_prime(x);
    const double x2mprime = x * x * (-omega * m - 1.0);

    auto guarded = [&](double (*fn)(const mills::distribution_model&, double))
        -> std::optional<double> {
        try {
            return fn(model, x);
        } catch (const mills::singularity_error&) {
            return std::nullopt;
        }
    };
    const std::optional<double> ta = guarded(mills::test_fn_a);
    const std::optional<double> tb = guarded(mills::test_fn_b);

    std::string payload;
    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "eval";
        j["distribution"] = model.id;
        put_num(j, "x", x);
        put_num(j, "density", f);
        put_num(j, "survival", survival);
        put_num(j, "mills", m);
        put_num(j, "omega", omega);
        put_num(j, "omega_prime", omega_prime);
        put_num(j, "x2mprime", x2mprime);
        if (ta)
            put_num(j, "Ta", *ta);
        else {
            j["Ta"] = "singular";
            j["nonfinite"] = true;
        }
        if (tb)
            put_num(j, "Tb", *tb);
        else {
            j["Tb"] = "singular";
            j["nonfinite"] = true;
        }
        payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
        std::ostringstream os;
        os << "x,density,survival,mills,omega,omega_prime,x2mprime,Ta,Tb\n"
           << fmt17(x) << ',' << fmt17(f) << ',' << fmt17(survival) << ',' << fmt17(m) << ','
           << fmt17(omega) << ',' << fmt17(omega_prime) << ',' << fmt17(x2mprime) << ','
           << (ta ? fmt17(*ta) : "singular") << ',' << (tb ? fmt17(*tb) : "singular") << "\n";
        payload = os.str();
    } else {
        std::ostringstream os;
        auto row = [&os](const char* k, const std::string& v) {
            os << k;
            for (size_t i = std::strlen(k); i < 14; ++i)
                os << ' ';
            os << v << "\n";
        };
        row("distribution", model.id);
        row("x", fmt17(x));
        row("density", fmt17(f));
        row("survival", fmt17(survival));
        row("mills", fmt17(m));
        row("omega", fmt17(omega));
        row("omega_prime", fmt17(omega_prime));
        row("x2mprime", fmt17(x2mprime));
        row("Ta", ta ? fmt17(*ta) : "singular");
        row("Tb", tb ? fmt17(*tb) : "singular");
        payload = os.str();
    }
    write_output(cfg, payload);
    return kExitOk;
}

//----------------------------------------------------------------------------
// certify
//----------------------------------------------------------------------------

ordered_json condition_to_json(const mills::condition_record& rec) {
    ordered_json c;
    c["name"] = rec.name;
    c["passed"] = rec.passed;
    c["note"] = rec.note;
    if (rec.mono) {
        c["direction"] = mills::direction_name(rec.mono->dir);
        c["violations"] = rec.mono->violations.size();
        if (!rec.mono->violations.empty()) {
            ordered_json head = ordered_json::array();
            for (size_t i = 0; i < rec.mono->violations.size() && i < 5; ++i) {
                const auto& v = rec.mono->violations[i];
                ordered_json t;
                put_num(t, "x_lo", v.x_lo);
                put_num(t, "x_hi", v.x_hi);
                put_num(t, "delta", v.delta);
                head.push_back(t);
            }
            c["violation_head"] = head;
        }
    }
    if (rec.limit) {
        ordered_json samples = ordered_json::array();
        for (const auto& [x, v] : rec.limit->samples) {
            ordered_json s;
            put_num(s, "x", x);
            put_num(s, "value", v);
            samples.push_back(s);
        }
        c["samples"] = samples;
    }
    return c;
}

int run_certify(const run_config& cfg) {
    check_grid_flags(cfg);
    const mills::distribution_model model = build_model(cfg);
    const mills::certificate cert = mills::certify_reciprocal(model, to_certify_config(cfg));

    std::string payload;
    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "certify";
        j["distribution"] = model.id;
        ordered_json grid;
        grid["min"] = cfg.grid_min;
        grid["max"] = cfg.grid_max;
        grid["points"] = cfg.grid_points;
        grid["slack"] = cfg.slack;
        j["grid"] = grid;
        j["verdict"] = mills::verdict_name(cert.outcome);
        j["route"] = mills::route_name(cert.route);
        ordered_json conds = ordered_json::array();
        for (const auto& rec : cert.conditions)
            conds.push_back(condition_to_json(rec));
        j["conditions"] = conds;
        ordered_json excl = ordered_json::array();
        for (const auto& [lo, hi] : cert.excluded_intervals)
            excl.push_back(ordered_json::array({lo, hi}));
        j["excluded_intervals"] = excl;
        j["notes"] = cert.notes;
        payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
        std::ostringstream os;
        os << "item,passed,detail\n";
        os << "verdict,," << mills::verdict_name(cert.outcome) << "\n";
        os << "route,," << mills::route_name(cert.route) << "\n";
        for (const auto& rec : cert.conditions)
            os << "condition:" << rec.name << ',' << (rec.passed ? "yes" : "no") << ','
               << rec.note << "\n";
        for (const auto& [lo, hi] : cert.excluded_intervals)
            os << "excluded_interval,," << fmt17(lo) << ';' << fmt17(hi) << "\n";
        for (const auto& note : cert.notes)
            os << "note,,\"" << note << "\"\n";
        payload = os.str();
    } else {
        std::ostringstream os;
        os << "distribution  " << model.id << "\n";
        os << "verdict       " << mills::verdict_name(cert.outcome) << "\n";
        os << "route         " << mills::route_name(cert.route) << "\n";
        os << "conditions:\n";
        for (const auto& rec : cert.conditions) {
            os << "  [" << (rec.passed ? "pass" : "fail") << "] " << rec.name;
            for (size_t i = rec.name.size(); i < 40; ++i)
                os << ' ';
            os << rec.note;
            if (rec.mono && !rec.mono->violations.empty())
                os << "  (" << rec.mono->violations.size() << " violating pairs)";
            os << "\n";
            if (rec.limit)
                for (const auto& [x, v] : rec.limit->samples)
                    os << "        x = " << fmt17(x) << "  value = " << fmt17(v) << "\n";
        }
        if (!cert.excluded_intervals.empty()) {
            os << "excluded intervals:\n";
            for (const auto& [lo, hi] : cert.excluded_intervals)
                os << "  [" << fmt17(lo) << ", " << fmt17(hi) << "]\n";
        }
        if (!cert.notes.empty()) {
            os << "notes:\n";
            for (const auto& note : cert.notes)
                os << "  - " << note << "\n";
        }
        payload = os.str();
    }
    write_output(cfg, payload);
    return kExitOk;
}

//----------------------------------------------------------------------------
// sweep
//----------------------------------------------------------------------------

int run_sweep(const run_config& cfg, double alpha_min, double alpha_max, double alpha_step) {
    check_grid_flags(cfg);
    if (!(alpha_min > 0.0) || !(alpha_min <= alpha_max) || !(alpha_step > 0.0))
        throw usage_error("sweep needs 0 < --alpha-min <= --alpha-max and --alpha-step > 0");

    const mills::certify_config cc = to_certify_config(cfg);
    const long count = static_cast<long>(std::floor((alpha_max - alpha_min) / alpha_step + 1e-9)) + 1;

    std::ostringstream os;
    os << "alpha,verdict,route,omega_ratio_direction,Ta_direction,Tb_direction,"
          "x2mprime_direction\n";
    for (long i = 0; i < count; ++i) {
        const double alpha = alpha_min + static_cast<double>(i) * alpha_step;
        const mills::distribution_model model = mills::make_gamma(mills::shape_param(alpha));
        const mills::certificate cert = mills::certify_reciprocal(model, cc);
        const mills::probe_grid pg = mills::build_probe_grid(model, cc);

        auto probe_dir = [&](const std::function<double(double)>& fn,
                             const std::vector<double>& grid,
                             const std::vector<double>& breaks) -> std::string {
            try {
                return mills::direction_name(mills::monotonicity_probe(fn, grid, cfg.slack, breaks).dir);
            } catch (const std::exception&) {
                return "unavailable";
            }
        };
        const std::string or_dir = probe_dir(
            [&](double x) { return mills::omega_ratio(model, x); }, pg.punctured, pg.breaks);
        const std::string ta_dir = probe_dir(
            [&](double x) { return mills::test_fn_a(model, x); }, pg.punctured, pg.breaks);
        const std::string tb_dir = probe_dir(
            [&](double x) { return mills::test_fn_b(model, x); }, pg.punctured, pg.breaks);
        std::string x2_dir;
        try {
            x2_dir = mills::direction_name(mills::x2mprime_probe(model, pg.full, cfg.slack).dir);
        } catch (const std::exception&) {
            x2_dir = "unavailable";
        }

        os << fmt17(alpha) << ',' << mills::verdict_name(cert.outcome) << ','
           << mills::route_name(cert.route) << ',' << or_dir << ',' << ta_dir << ',' << tb_dir
           << ',' << x2_dir << "\n";
    }
    write_output(cfg, os.str());
    return kExitOk;
}

//----------------------------------------------------------------------------
// chain
//----------------------------------------------------------------------------

ordered_json chain_report_to_json(const mills::chain_report& rep) {
    ordered_json j;
    put_num(j, "x", rep.x);
    put_num(j, "y", rep.y);
    put_num(j, "term_harmonic", rep.term_harmonic);
    put_num(j, "term_average", rep.term_average);
    put_num(j, "term_arithmetic", rep.term_arithmetic);
    put_num(j, "term_weighted", rep.term_weighted);
    j["verdict"] = mills::chain_verdict_name(rep.verdict);
    put_num(j, "max_violation", rep.max_violation);
    return j;
}

int run_chain(const run_config& cfg, long n_samples, double range_lo, double range_hi,
              const std::string& direction_flag) {
    check_grid_flags(cfg);
    if (!(range_lo > 0.0) || !(range_lo < range_hi))
        throw usage_error("chain needs 0 < --range-lo < --range-hi");

    const mills::distribution_model model = build_model(cfg);

    std::function<double(double)> fn;
    std::string fn_name;
    if (cfg.dist == "normal-h") {
        fn = stieltjes_fn;
        fn_name = "stieltjes_h";
    } else {
        fn = model.mills;
        fn_name = "mills";
    }

    mills::chain_direction dir;
    if (direction_flag == "convex") {
        dir = mills::chain_direction::convex_chain;
    } else if (direction_flag == "concave") {
        dir = mills::chain_direction::concave_chain;
    } else if (cfg.dist == "normal-h") {
        dir = mills::chain_direction::concave_chain;
    } else {
        const mills::certificate cert = mills::certify_reciprocal(model, to_certify_config(cfg));
        switch (cert.outcome) {
        case mills::verdict::reciprocally_convex:
        case mills::verdict::strictly_reciprocally_convex:
            dir = mills::chain_direction::convex_chain;
            break;
        case mills::verdict::reciprocally_concave:
        case mills::verdict::strictly_reciprocally_concave:
            dir = mills::chain_direction::concave_chain;
            break;
        default:
            throw usage_error(
                "certificate verdict is '" + std::string(mills::verdict_name(cert.outcome)) +
                "'; pass --direction convex or --direction concave explicitly");
        }
    }

    const mills::chain_suite_summary sum =
        mills::random_chain_suite(fn, dir, n_samples, cfg.seed, range_lo, range_hi);

    std::string payload;
    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "chain";
        j["distribution"] = model.id;
        j["fn"] = fn_name;
        j["direction"] = mills::chain_direction_name(dir);
        j["samples"] = sum.n_samples;
        j["seed"] = cfg.seed;
        j["range"] = ordered_json::array({range_lo, range_hi});
        j["passes"] = sum.passes;
        j["equalities"] = sum.equalities;
        j["failures"] = sum.failures;
        ordered_json wp = ordered_json::array();
        wp.push_back(sum.worst_pair.first);
        wp.push_back(sum.worst_pair.second);
        j["worst_pair"] = wp;
        put_num(j, "worst_violation", sum.worst_violation);
        put_num(j, "min_margin", sum.min_margin);
        ordered_json bad = ordered_json::array();
        for (const auto& rep : sum.violated)
            bad.push_back(chain_report_to_json(rep));
        j["violated"] = bad;
        payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
        std::ostringstream os;
        os << "samples,passes,equalities,failures,worst_x,worst_y,worst_violation,min_margin\n"
           << sum.n_samples << ',' << sum.passes << ',' << sum.equalities << ',' << sum.failures
           << ',' << fmt17(sum.worst_pair.first) << ',' << fmt17(sum.worst_pair.second) << ','
           << fmt17(sum.worst_violation) << ',' << fmt17(sum.min_margin) << "\n";
        payload = os.str();
    } else {
        std::ostringstream os;
        os << "distribution     " << model.id << "\n"
           << "fn               " << fn_name << "\n"
           << "direction        " << mills::chain_direction_name(dir) << "\n"
           << "samples          " << sum.n_samples << "\n"
           << "passes           " << sum.passes << "\n"
           << "equalities       " << sum.equalities << "\n"
           << "failures         " << sum.failures << "\n"
           << "worst pair       (" << fmt17(sum.worst_pair.first) << ", "
           << fmt17(sum.worst_pair.second) << ")\n"
           << "worst violation  " << fmt17(sum.worst_violation) << "\n"
           << "min margin       " << fmt17(sum.min_margin) << "\n";
        for (const auto& rep : sum.violated)
            os << "violated: x = " << fmt17(rep.x) << "  y = " << fmt17(rep.y)
               << "  violation = " << fmt17(rep.max_violation) << "\n";
        payload = os.str();
    }
    write_output(cfg, payload);
    return kExitOk;
}

//----------------------------------------------------------------------------
// cm
//----------------------------------------------------------------------------

int run_cm(const run_config& cfg, int max_order, double step) {
    check_grid_flags(cfg);
    const mills::distribution_model model = build_model(cfg);

    std::function<double(double)> fn;
    std::string fn_name;
    if (cfg.dist == "normal-h") {
        fn = stieltjes_fn;
        fn_name = "stieltjes_h";
    } else {
        fn = model.mills;
        fn_name = "mills";
    }

    const std::vector<double> grid = mills::log_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points);
    const mills::cm_report rep = mills::complete_monotonicity_probe(fn, grid, max_order, step);

    std::string payload;
    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "cm";
        j["distribution"] = model.id;
        j["fn"] = fn_name;
        j["max_order"] = rep.max_order;
        j["step"] = rep.step;
        ordered_json grid_j;
        grid_j["min"] = cfg.grid_min;
        grid_j["max"] = cfg.grid_max;
        grid_j["points"] = cfg.grid_points;
        j["grid"] = grid_j;
        ordered_json orders = ordered_json::array();
        for (const auto& row : rep.orders) {
            ordered_json o;
            o["order"] = row.order;
            o["passed"] = row.passed;
            put_num(o, "worst_value", row.worst_value);
            put_num(o, "worst_x", row.worst_x);
            orders.push_back(o);
        }
        j["orders"] = orders;
        j["passed"] = rep.passed;
        payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
        std::ostringstream os;
        os << "order,passed,worst_value,worst_x\n";
        for (const auto& row : rep.orders)
            os << row.order << ',' << (row.passed ? "yes" : "no") << ','
               << fmt17(row.worst_value) << ',' << fmt17(row.worst_x) << "\n";
        payload = os.str();
    } else {
        std::ostringstream os;
        os << "distribution  " << model.id << "\n"
           << "fn            " << fn_name << "\n"
           << "max order     " << rep.max_order << "\n";
        for (const auto& row : rep.orders)
            os << "order " << row.order << "  [" << (row.passed ? "pass" : "fail")
               << "]  worst " << fmt17(row.worst_value) << " at x = " << fmt17(row.worst_x)
               << "\n";
        os << "overall       " << (rep.passed ? "pass" : "fail") << "\n";
        payload = os.str();
    }
    write_output(cfg, payload);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mills ratio toolkit: kernels, reciprocal convexity certification, mean chains"};
    app.require_subcommand(1);

    run_config cfg_eval, cfg_certify, cfg_sweep, cfg_chain, cfg_cm;
    cfg_cm.grid_min = 0.1;
    cfg_cm.grid_max = 20.0;
    cfg_cm.grid_points = 30;

    double eval_x = 0.0;
    CLI::App* eval = app.add_subcommand("eval", "evaluate the model at one abscissa");
    add_common_flags(eval, cfg_eval);
    eval->add_option("--x", eval_x, "abscissa")->required()->check(CLI::PositiveNumber);

    CLI::App* certify =
        app.add_subcommand("certify", "run the reciprocal convexity certifier");
    add_common_flags(certify, cfg_certify);

    double alpha_min = 0.25, alpha_max = 3.0, alpha_step = 0.25;
    CLI::App* sweep =
        app.add_subcommand("sweep", "classify the gamma family over a shape range (CSV)");
    add_common_flags(sweep, cfg_sweep);
    sweep->add_option("--alpha-min", alpha_min, "first shape value")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--alpha-max", alpha_max, "last shape value")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--alpha-step", alpha_step, "shape increment")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    long chain_samples = 1000;
    double range_lo = 1e-2, range_hi = 50.0;
    std::string direction_flag = "auto";
    CLI::App* chain = app.add_subcommand("chain", "sample the four-term mean chain");
    add_common_flags(chain, cfg_chain);
    chain->add_option("--samples", chain_samples, "number of sampled (x, y) pairs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    chain->add_option("--range-lo", range_lo, "sampling range lower end")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    chain->add_option("--range-hi", range_hi, "sampling range upper end")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    chain->add_option("--direction", direction_flag, "chain direction")
        ->check(CLI::IsMember({"auto", "convex", "concave"}))
        ->capture_default_str();

    int max_order = 5;
    double cm_step = 1e-2;
    CLI::App* cm = app.add_subcommand("cm", "finite-difference complete monotonicity check");
    add_common_flags(cm, cfg_cm);
    cm->add_option("--max-order", max_order, "highest difference order")
        ->check(CLI::Range(1, 6))
        ->capture_default_str();
    cm->add_option("--step", cm_step, "base forward-difference step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(eval))
            return run_eval(cfg_eval, eval_x);
        if (app.got_subcommand(certify))
            return run_certify(cfg_certify);
        if (app.got_subcommand(sweep))
            return run_sweep(cfg_sweep, alpha_min, alpha_max, alpha_step);
        if (app.got_subcommand(chain))
            return run_chain(cfg_chain, chain_samples, range_lo, range_hi, direction_flag);
        if (app.got_subcommand(cm))
            return run_cm(cfg_cm, max_order, cm_step);
        std::cerr << "error: no subcommand selected\n";
        return kExitUsage;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mills::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitFailure;
    }
}
