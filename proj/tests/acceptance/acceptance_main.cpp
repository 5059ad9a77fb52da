#include <mills/analysis.hpp>
#include <mills/distribution.hpp>
#include <mills/grid.hpp>
#include <mills/inequalities.hpp>
#include <mills/quadrature.hpp>
#include <mills/specfun.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

//============================================================================
// Acceptance gate: ten numbered criteria, each printing a single PASS/FAIL
// line.  Run one criterion by number (argv[1]) or all of them with no
// arguments; a CLI binary path (argv[2] or MILLS_CLI) is needed only by
// criterion 10.  Exit status is the number of failed criteria.
//============================================================================

using namespace mills;

namespace {

std::vector<std::string> g_detail;

void detail(const std::string& line) { g_detail.push_back(line); }

double rel_gap(double a, double b) {
    return std::fabs(a - b) / std::max({1e-300, std::fabs(a), std::fabs(b)});
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double stieltjes_h(double t) {
    return normal_mills(std::sqrt(t)).value / std::sqrt(t);
}

//----------------------------------------------------------------------------
// 1. anchor value at the origin
//----------------------------------------------------------------------------

bool criterion_1() {
    const double anchor = 1.2533141373155002512; // sqrt(pi/2)
    const double got = normal_mills(0.0).value;
    const double err = std::fabs(got - anchor);
    if (err <= 1e-12)
        return true;
    detail("normal_mills(0) = " + fmt(got) + ", off by " + fmt(err));
    return false;
}

//----------------------------------------------------------------------------
// 2. closed-form kernels against their integral representations
//----------------------------------------------------------------------------

bool criterion_2() {
    const double tol = 1e-8;
    bool ok = true;
    double worst = 0.0;
    std::string worst_at;

    auto record = [&](double gap, const std::string& where) {
        if (gap > worst) {
            worst = gap;
            worst_at = where;
        }
        if (gap > tol) {
            ok = false;
            detail("disagreement " + fmt(gap) + " at " + where);
        }
    };

    for (double x : log_grid(1e-2, 50.0, 50)) {
        const double kernel = normal_mills(x).value;
        const double lap = mills_reference(representation::laplace_normal, x).value;
        const double cau = mills_reference(representation::cauchy_normal, x).value;
        record(rel_gap(lap, kernel), "laplace/kernel x=" + fmt(x));
        record(rel_gap(cau, kernel), "cauchy/kernel x=" + fmt(x));
        record(rel_gap(lap, cau), "laplace/cauchy x=" + fmt(x));
    }
    for (double a : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        const shape_param alpha(a);
        for (double x : log_grid(1e-2, 50.0, 50)) {
            const double kernel = gamma_mills(alpha, x).value;
            const double target = 1e-10 * std::max(1.0, kernel);
            const double shift =
                mills_reference(representation::gamma_shift, alpha, x, target).value;
            const double scaled =
                mills_reference(representation::gamma_scaled, alpha, x, target).value;
            record(rel_gap(shift, kernel),
                   "shift/kernel alpha=" + fmt(a) + " x=" + fmt(x));
            record(rel_gap(scaled, kernel),
                   "scaled/kernel alpha=" + fmt(a) + " x=" + fmt(x));
        }
    }
    detail("worst relative gap " + fmt(worst) + " at " + worst_at);
    return ok;
}

//----------------------------------------------------------------------------
// 3. first-order self-consistency on the default grid
//----------------------------------------------------------------------------

bool criterion_3() {
    const double tol = 1e-6;
    bool ok = true;
    std::vector<std::pair<std::string, distribution_model>> models;
    models.emplace_back("normal-h", make_normal_halfline());
    for (double a : {0.5, 1.0, 1.5, 2.0, 3.0})
        models.emplace_back("gamma(" + fmt(a) + ")", make_gamma(shape_param(a)));

    const std::vector<double> grid = log_grid(1e-3, 1e3, 2000);
    for (const auto& [name, model] : models) {
        double worst = 0.0, worst_x = 0.0;
        for (double x : grid) {
            const double r = std::fabs(ode_residual(model, x));
            if (r > worst) {
                worst = r;
                worst_x = x;
            }
        }
        detail(name + ": max |m' + omega m + 1| = " + fmt(worst) + " at x = " +
               fmt(worst_x) + (worst <= tol ? "" : "  <-- exceeds 1e-6"));
        if (worst > tol)
            ok = false;
    }
    return ok;
}

//----------------------------------------------------------------------------
// 4. verdicts across the gamma shape range
//----------------------------------------------------------------------------

bool criterion_4() {
    bool ok = true;
    auto cert_for = [](double a) {
        return certify_reciprocal(make_gamma(shape_param(a)));
    };
    auto fail = [&](double a, const certificate& c, const char* want) {
        ok = false;
        detail("alpha=" + fmt(a) + ": got " + verdict_name(c.outcome) + " via " +
               route_name(c.route) + ", wanted " + want);
    };

    for (double a : {0.25, 0.5, 0.75}) {
        const certificate c = cert_for(a);
        if (c.outcome != verdict::reciprocally_convex &&
            c.outcome != verdict::strictly_reciprocally_convex)
            fail(a, c, "a reciprocally_convex variant");
    }
    {
        // constant Mills ratio: both families non-strictly, or an explicit note
        const certificate c = cert_for(1.0);
        const bool convex_side =
            c.outcome == verdict::reciprocally_convex ||
            c.outcome == verdict::strictly_reciprocally_convex;
        const bool concave_side =
            c.outcome == verdict::reciprocally_concave ||
            c.outcome == verdict::strictly_reciprocally_concave;
        bool noted = false;
        for (const std::string& n : c.notes)
            noted = noted || n.find("both") != std::string::npos;
        if (!((convex_side || concave_side) && noted))
            fail(1.0, c, "a non-strict verdict with a both-families note");
    }
    for (double a : {1.25, 1.5, 2.0}) {
        const certificate c = cert_for(a);
        if (c.outcome != verdict::reciprocally_concave &&
            c.outcome != verdict::strictly_reciprocally_concave)
            fail(a, c, "a reciprocally_concave variant");
    }
    for (double a : {2.5, 3.0}) {
        const certificate c = cert_for(a);
        if (c.outcome != verdict::neither)
            fail(a, c, "neither");
    }
    return ok;
}

//----------------------------------------------------------------------------
// 5. direction of x^2 m' by shape
//----------------------------------------------------------------------------

bool criterion_5() {
    bool ok = true;
    const std::vector<double> grid = log_grid(1e-3, 1e3, 2000);
    auto probe = [&](double a) {
        return x2mprime_probe(make_gamma(shape_param(a)), grid, 1e-9);
    };
    auto expect = [&](double a, bool good, const monotonicity_report& rep) {
        if (!good) {
            ok = false;
            detail("alpha=" + fmt(a) + ": x^2 m' classified " +
                   direction_name(rep.dir));
        }
    };

    for (double a : {0.5, 3.0}) {
        const monotonicity_report rep = probe(a);
        expect(a,
               rep.dir == direction::strictly_increasing ||
                   rep.dir == direction::non_decreasing,
               rep);
    }
    {
        const monotonicity_report rep = probe(1.5);
        expect(1.5,
               rep.dir == direction::strictly_decreasing ||
                   rep.dir == direction::non_increasing,
               rep);
    }
    for (double a : {1.0, 2.0}) {
        const monotonicity_report rep = probe(a);
        expect(a, rep.dir == direction::constant, rep);
    }
    return ok;
}

//----------------------------------------------------------------------------
// 6. the four-term chain for the Stieltjes transform
//----------------------------------------------------------------------------

bool criterion_6() {
    bool ok = true;

    const chain_suite_summary suite = random_chain_suite(
        stieltjes_h, chain_direction::concave_chain, 1000, 20240817u, 1e-2, 50.0);
    if (suite.failures != 0) {
        ok = false;
        detail("random suite: " + std::to_string(suite.failures) +
               " violations, worst at (" + fmt(suite.worst_pair.first) + ", " +
               fmt(suite.worst_pair.second) + ")");
    } else {
        detail("random suite: 1000/1000 hold, tightest margin " +
               fmt(suite.min_margin));
    }

    for (double x : log_grid(1e-2, 50.0, 10)) {
        const chain_report r = stieltjes_chain(x, x);
        if (r.verdict != chain_verdict::holds_with_equality) {
            ok = false;
            detail("diagonal x=" + fmt(x) + ": " + chain_verdict_name(r.verdict));
        }
    }

    // separated pairs must show strict gaps
    double min_gap = 1e300;
    int checked = 0;
    for (double x : log_grid(0.02, 30.0, 20)) {
        const double y = 2.0 * x + 1.2;
        const chain_report r = stieltjes_chain(x, y);
        ++checked;
        if (r.verdict != chain_verdict::holds) {
            ok = false;
            detail("pair (" + fmt(x) + ", " + fmt(y) + "): " +
                   chain_verdict_name(r.verdict));
        }
        min_gap = std::min(min_gap, r.min_margin);
    }
    detail(std::to_string(checked) + " separated pairs, smallest strict gap " +
           fmt(min_gap));
    if (min_gap <= 1e-6)
        ok = false;
    return ok;
}

//----------------------------------------------------------------------------
// 7. complete monotonicity of the Stieltjes transform
//----------------------------------------------------------------------------

bool criterion_7() {
    const cm_report rep =
        complete_monotonicity_probe(stieltjes_h, log_grid(0.1, 20.0, 30), 5);
    if (rep.passed)
        return true;
    for (const cm_order_result& o : rep.orders)
        if (!o.passed)
            detail("order " + std::to_string(o.order) + ": worst signed value " +
                   fmt(o.worst_value) + " at x = " + fmt(o.worst_x));
    return false;
}

//----------------------------------------------------------------------------
// 8. Stieltjes integral representation
//----------------------------------------------------------------------------

bool criterion_8() {
    bool ok = true;
    double worst = 0.0;
    for (double x : log_grid(0.1, 20.0, 30)) {
        const double direct = stieltjes_h(x);
        const double viaq = mills_reference(representation::stieltjes_h, x).value;
        const double gap = rel_gap(viaq, direct);
        worst = std::max(worst, gap);
        if (gap > 1e-7) {
            ok = false;
            detail("x=" + fmt(x) + ": relative gap " + fmt(gap));
        }
    }
    detail("worst relative gap " + fmt(worst));
    return ok;
}

//----------------------------------------------------------------------------
// 9. negative control at alpha = 3
//----------------------------------------------------------------------------

bool criterion_9() {
    bool ok = true;
    const distribution_model g3 = make_gamma(shape_param(3.0));

    const chain_suite_summary suite = random_chain_suite(
        g3.mills, chain_direction::convex_chain, 200, 20240817u, 1e-2, 50.0);
    if (suite.failures < 1) {
        ok = false;
        detail("expected at least one violated pair, saw none");
    } else {
        detail(std::to_string(suite.failures) +
               "/200 pairs violated; largest violation " + fmt(suite.worst_violation) +
               " at (" + fmt(suite.worst_pair.first) + ", " +
               fmt(suite.worst_pair.second) + ")");
    }

    const certificate c = certify_reciprocal(g3);
    if (c.outcome != verdict::neither || c.route != cert_route::direct_probe) {
        ok = false;
        detail("certificate: " + std::string(verdict_name(c.outcome)) + " via " +
               route_name(c.route));
    }
    bool m_convex = false, recip_convex = false;
    for (const condition_record& rec : c.conditions) {
        if (rec.name == "m curvature")
            m_convex = rec.note == "strictly_convex" || rec.note == "convex";
        if (rec.name == "x^2 m' monotone")
            recip_convex =
                rec.note == "strictly_increasing" || rec.note == "non_decreasing";
    }
    if (!m_convex || !recip_convex) {
        ok = false;
        detail("direct probe did not confirm both curvatures convex");
    }
    return ok;
}

//----------------------------------------------------------------------------
// 10. CLI determinism and exit codes
//----------------------------------------------------------------------------

std::string g_cli_path;

int run_shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

bool criterion_10() {
    if (g_cli_path.empty()) {
        detail("no CLI path given (argv[2] or MILLS_CLI)");
        return false;
    }
    bool ok = true;
    const std::filesystem::path tmp = std::filesystem::temp_directory_path();
    const std::filesystem::path out1 = tmp / "mills_acceptance_sweep_1.csv";
    const std::filesystem::path out2 = tmp / "mills_acceptance_sweep_2.csv";

    for (const auto& out : {out1, out2}) {
        const int code = run_shell(g_cli_path + " sweep --out " + out.string() +
                                   " >/dev/null 2>&1");
        if (code != 0) {
            detail("sweep exited with " + std::to_string(code));
            return false;
        }
    }
    const std::string a = slurp(out1), b = slurp(out2);
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
    if (a.empty() || a != b) {
        ok = false;
        detail("sweep runs differ (" + std::to_string(a.size()) + " vs " +
               std::to_string(b.size()) + " bytes)");
    } else {
        detail("sweep byte-identical across runs (" + std::to_string(a.size()) +
               " bytes)");
    }

    struct probe {
        const char* args;
        int want;
    };
    const probe matrix[] = {
        {"eval --dist gamma --alpha 0.5 --x 1", 0},
        {"certify --dist gamma --alpha 2", 0},
        {"eval --x 0", 1},
        {"eval --dist gamma --x 1", 1},
        {"certify --dist gamma --alpha -1", 1},
        {"chain --samples 0", 1},
        {"cm --max-order 9", 1},
        {"sweep --out /nonexistent-dir-zz9/out.csv", 2},
    };
    for (const probe& p : matrix) {
        const int code =
            run_shell(g_cli_path + " " + p.args + " >/dev/null 2>&1");
        if (code != p.want) {
            ok = false;
            detail(std::string("'") + p.args + "' exited " + std::to_string(code) +
                   ", wanted " + std::to_string(p.want));
        }
    }
    return ok;
}

//----------------------------------------------------------------------------

struct criterion {
    int number;
    const char* title;
    bool (*run)();
};

const criterion kCriteria[] = {
    {1, "normal Mills ratio anchor at the origin", criterion_1},
    {2, "kernels agree with integral representations", criterion_2},
    {3, "ODE residual within 1e-6 on the default grid", criterion_3},
    {4, "certifier verdicts across the gamma family", criterion_4},
    {5, "x^2 m' directions by shape", criterion_5},
    {6, "four-term chain for the Stieltjes transform", criterion_6},
    {7, "complete monotonicity through order 5", criterion_7},
    {8, "Stieltjes integral representation", criterion_8},
    {9, "negative control at alpha = 3", criterion_9},
    {10, "CLI determinism and exit codes", criterion_10},
};

} // namespace

int main(int argc, char** argv) {
    int which = 0;
    if (argc > 1 && std::strcmp(argv[1], "all") != 0) {
        which = std::atoi(argv[1]);
        if (which < 1 || which > 10) {
            std::fprintf(stderr, "usage: %s [1-10|all] [cli-path]\n", argv[0]);
            return 64;
        }
    }
    if (argc > 2)
        g_cli_path = argv[2];
    else if (const char* env = std::getenv("MILLS_CLI"))
        g_cli_path = env;

    int failures = 0;
    for (const criterion& c : kCriteria) {
        if (which != 0 && c.number != which)
            continue;
        g_detail.clear();
        const bool passed = c.run();
        std::printf("criterion %2d: %s -- %s\n", c.number, passed ? "PASS" : "FAIL",
                    c.title);
        for (const std::string& line : g_detail)
            std::printf("              %s\n", line.c_str());
        if (!passed)
            ++failures;
    }
    return failures;
}
