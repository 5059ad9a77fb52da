#include <mills/analysis.hpp>

#include <mills/errors.hpp>
#include <mills/grid.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mills {

const char* direction_name(direction d) {
    switch (d) {
    case direction::strictly_increasing: return "strictly_increasing";
    case direction::strictly_decreasing: return "strictly_decreasing";
    case direction::non_decreasing: return "non_decreasing";
    case direction::non_increasing: return "non_increasing";
    case direction::constant: return "constant";
    case direction::not_monotone: return "not_monotone";
    }
    return "?";
}

const char* curvature_name(curvature c) {
    switch (c) {
    case curvature::strictly_convex: return "strictly_convex";
    case curvature::convex: return "convex";
    case curvature::strictly_concave: return "strictly_concave";
    case curvature::concave: return "concave";
    case curvature::affine: return "affine";
    case curvature::mixed: return "mixed";
    }
    return "?";
}

const char* limit_expr_name(limit_expr e) {
    switch (e) {
    case limit_expr::f_over_omega: return "f/omega";
    case limit_expr::f_over_one_minus_xomega: return "f/(1-x omega)";
    case limit_expr::xf_over_one_minus_xomega: return "x f/(1-x omega)";
    }
    return "?";
}

const char* verdict_name(verdict v) {
    switch (v) {
    case verdict::reciprocally_convex: return "reciprocally_convex";
    case verdict::strictly_reciprocally_convex: return "strictly_reciprocally_convex";
    case verdict::reciprocally_concave: return "reciprocally_concave";
    case verdict::strictly_reciprocally_concave: return "strictly_reciprocally_concave";
    case verdict::neither: return "neither";
    case verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* route_name(cert_route r) {
    switch (r) {
    case cert_route::part_a: return "part_a";
    case cert_route::part_b: return "part_b";
    case cert_route::direct_probe: return "direct_probe";
    case cert_route::none: return "none";
    }
    return "?";
}

namespace {

void check_grid(const std::vector<double>& grid, const char* what) {
    if (grid.size() < 3)
        throw domain_error(std::string(what) + ": grid needs at least 3 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw domain_error(std::string(what) + ": grid must be strictly ascending");
}

bool straddles_break(double lo, double hi, const std::vector<double>& breaks) {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), lo);
    return it != breaks.end() && *it < hi;
}

std::vector<double> evaluate(const std::function<double(double)>& fn,
                             const std::vector<double>& grid, const char* what) {
    std::vector<double> f(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        f[i] = fn(grid[i]);
        if (!std::isfinite(f[i])) {
            std::ostringstream os;
            os << what << ": non-finite value at x = " << grid[i];
            throw domain_error(os.str());
        }
    }
    return f;
}

} // namespace

monotonicity_report monotonicity_probe(const std::function<double(double)>& fn,
                                       const std::vector<double>& grid, double slack,
                                       const std::vector<double>& breakpoints) {
    check_grid(grid, "monotonicity_probe");
    if (!(slack >= 0.0))
        throw domain_error("monotonicity_probe: slack must be >= 0");

    std::vector<double> breaks = breakpoints;
    std::sort(breaks.begin(), breaks.end());
    const std::vector<double> f = evaluate(fn, grid, "monotonicity_probe");

    monotonicity_report rep;
    rep.grid = grid;
    rep.slack = slack;

    long n_up = 0, n_down = 0, n_flat = 0;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        if (straddles_break(grid[i], grid[i + 1], breaks))
            continue;
        const double tol = slack * std::max({1.0, std::fabs(f[i]), std::fabs(f[i + 1])});
        const double d = f[i + 1] - f[i];
        if (d > tol)
            ++n_up;
        else if (d < -tol)
            ++n_down;
        else
            ++n_flat;
    }

    if (n_up == 0 && n_down == 0) {
        rep.dir = direction::constant;
        return rep;
    }
    if (n_down == 0) {
        rep.dir = (n_flat == 0) ? direction::strictly_increasing : direction::non_decreasing;
        return rep;
    }
    if (n_up == 0) {
        rep.dir = (n_flat == 0) ? direction::strictly_decreasing : direction::non_increasing;
        return rep;
    }

    rep.dir = direction::not_monotone;
    const bool majority_up = n_up >= n_down;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        if (straddles_break(grid[i], grid[i + 1], breaks))
            continue;
        const double tol = slack * std::max({1.0, std::fabs(f[i]), std::fabs(f[i + 1])});
        const double d = f[i + 1] - f[i];
        if ((majority_up && d < -tol) || (!majority_up && d > tol))
            rep.violations.push_back({grid[i], grid[i + 1], d});
    }
    return rep;
}

curvature curvature_probe(const std::function<double(double)>& fn,
                          const std::vector<double>& grid, double slack) {
    check_grid(grid, "curvature_probe");
    const std::vector<double> f = evaluate(fn, grid, "curvature_probe");

    long n_pos = 0, n_neg = 0, n_flat = 0;
    for (size_t i = 1; i + 1 < grid.size(); ++i) {
        const double h0 = grid[i] - grid[i - 1];
        const double h1 = grid[i + 1] - grid[i];
        const double d2 = ((f[i + 1] - f[i]) / h1 - (f[i] - f[i - 1]) / h0) /
                          (0.5 * (h0 + h1));
        const double scale =
            std::max({1.0, std::fabs(f[i - 1]), std::fabs(f[i]), std::fabs(f[i + 1])});
        const double tol = 4.0 * slack * scale / (h0 * h1);
        if (d2 > tol)
            ++n_pos;
        else if (d2 < -tol)
            ++n_neg;
        else
            ++n_flat;
    }
    if (n_pos == 0 && n_neg == 0)
        return curvature::affine;
    if (n_neg == 0)
        return (n_flat == 0) ? curvature::strictly_convex : curvature::convex;
    if (n_pos == 0)
        return (n_flat == 0) ? curvature::strictly_concave : curvature::concave;
    return curvature::mixed;
}

namespace {

double shared_denominator(const distribution_model& model, double x) {
    const double w = model.omega(x);
    const double wp = model.omega_prime(x);
    return x * w * w - x * wp - 2.0 * w;
}

} // namespace

double test_fn_a(const distribution_model& model, double x) {
    const double den = shared_denominator(model, x);
    if (std::fabs(den) < 1e-14)
        throw singularity_error("test_fn_a: denominator vanishes", x);
    return x * x * x * model.omega_prime(x) / den;
}

double test_fn_b(const distribution_model& model, double x) {
    const double den = shared_denominator(model, x);
    if (std::fabs(den) < 1e-14)
        throw singularity_error("test_fn_b: denominator vanishes", x);
    return (x * x * model.omega_prime(x) - x * model.omega(x) + 2.0) / den;
}

double omega_ratio(const distribution_model& model, double x) {
    for (double z : model.omega_zeros) {
        const double radius = std::max(1e-6, 1e-3 * std::fabs(z));
        if (std::fabs(x - z) <= radius)
            throw singularity_error("omega_ratio: x inside the exclusion interval of an omega zero", x);
    }
    const double w = model.omega(x);
    if (std::fabs(w) < 1e-14)
        throw singularity_error("omega_ratio: omega vanishes", x);
    return model.omega_prime(x) / (w * w);
}

limit_diagnostic limit_probe(const distribution_model& model, limit_expr which) {
    static const double kProbes[4] = {1e1, 1e2, 1e3, 1e4};

    limit_diagnostic diag;
    diag.which = which;
    for (double x : kProbes) {
        double val;
        try {
            const double f = model.density(x);
            double den;
            switch (which) {
            case limit_expr::f_over_omega:
                den = model.omega(x);
                val = f / den;
                break;
            case limit_expr::f_over_one_minus_xomega:
                den = 1.0 - x * model.omega(x);
                val = f / den;
                break;
            case limit_expr::xf_over_one_minus_xomega:
                den = 1.0 - x * model.omega(x);
                val = x * f / den;
                break;
            default:
                throw domain_error("limit_probe: unknown expression");
            }
            if (den == 0.0 || !std::isfinite(val)) {
                std::ostringstream os;
                os << "expression undefined at x = " << x;
                diag.note = os.str();
                diag.passed = false;
                return diag;
            }
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "evaluation failed at x = " << x << ": " << e.what();
            diag.note = os.str();
            diag.passed = false;
            return diag;
        }
        diag.samples.emplace_back(x, val);
    }

    bool shrinking = true;
    for (size_t i = 1; i < diag.samples.size(); ++i)
        shrinking = shrinking &&
                    std::fabs(diag.samples[i].second) <= std::fabs(diag.samples[i - 1].second);
    const double last = std::fabs(diag.samples.back().second);
    diag.passed = shrinking && last < 1e-8;
    if (!shrinking)
        diag.note = "sample magnitudes do not decrease";
    else if (last >= 1e-8)
        diag.note = "final sample magnitude not below 1e-8";
    return diag;
}

monotonicity_report x2mprime_probe(const distribution_model& model,
                                   const std::vector<double>& grid, double slack) {
    // m' comes from the identity m' = -omega m - 1, which is exact given m
    // and omega; differencing m here would only add noise.
    auto g = [&model](double x) {
        const double m = model.mills(x);
        return x * x * (-model.omega(x) * m - 1.0);
    };
    return monotonicity_probe(g, grid, slack);
}

double ode_residual(const distribution_model& model, double x) {
    if (!(x > 0.0))
        throw domain_error("ode_residual: x must be > 0");
    const double h = 6e-6 * x;
    const double dm = (model.mills(x + h) - model.mills(x - h)) / (2.0 * h);
    return dm + model.omega(x) * model.mills(x) + 1.0;
}

cm_report complete_monotonicity_probe(const std::function<double(double)>& fn,
                                      const std::vector<double>& grid, int max_order,
                                      double step) {
    check_grid(grid, "complete_monotonicity_probe");
    if (max_order < 1 || max_order > 6)
        throw domain_error("complete_monotonicity_probe: max_order must be in [1, 6]");
    if (!(step > 0.0))
        throw domain_error("complete_monotonicity_probe: step must be > 0");

    static const double kBinom[7][7] = {
        {1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1},
        {1, 5, 10, 10, 5, 1}, {1, 6, 15, 20, 15, 6, 1},
    };

    cm_report rep;
    rep.max_order = max_order;
    rep.step = step;
    rep.passed = true;

    for (int n = 0; n <= max_order; ++n) {
        cm_order_result row{n, true, std::numeric_limits<double>::infinity(), grid.front()};
        for (double x : grid) {
            const double h = std::max(step, x * step);
            double signed_diff = 0.0, mag = 0.0;
            for (int k = 0; k <= n; ++k) {
                const double v = fn(x + k * h);
                if (!std::isfinite(v))
                    throw domain_error("complete_monotonicity_probe: non-finite value");
                const double term = kBinom[n][k] * v;
                signed_diff += (k % 2 == 0) ? term : -term;  // (-1)^n diff^n f
                mag += std::fabs(term);
            }
            if (signed_diff < row.worst_value) {
                row.worst_value = signed_diff;
                row.worst_x = x;
            }
            if (signed_diff < -1e-13 * mag)
                row.passed = false;
        }
        rep.passed = rep.passed && row.passed;
        rep.orders.push_back(row);
    }
    return rep;
}

//----------------------------------------------------------------------------
// Certifier
//----------------------------------------------------------------------------

namespace {

bool dec_like(direction d) {
    return d == direction::strictly_decreasing || d == direction::non_increasing ||
           d == direction::constant;
}
bool inc_like(direction d) {
    return d == direction::strictly_increasing || d == direction::non_decreasing ||
           d == direction::constant;
}

double bisect(const std::function<double(double)>& fn, double a, double b) {
    double fa = fn(a);
    for (int i = 0; i < 200 && (b - a) > 1e-12; ++i) {
        const double mid = 0.5 * (a + b);
        const double fm = fn(mid);
        if (fm == 0.0)
            return mid;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

condition_record limit_condition(const limit_diagnostic& diag) {
    condition_record rec;
    rec.name = std::string("limit ") + limit_expr_name(diag.which) + " -> 0";
    rec.passed = diag.passed;
    rec.note = diag.note;
    rec.limit = diag;
    return rec;
}

condition_record mono_condition(const std::string& name, const monotonicity_report& rep,
                                bool passed) {
    condition_record rec;
    rec.name = name;
    rec.passed = passed;
    rec.note = direction_name(rep.dir);
    rec.mono = rep;
    return rec;
}

} // namespace

probe_grid build_probe_grid(const distribution_model& model, const certify_config& config) {
    if (!(config.grid_min > 0.0) || !(config.grid_max > config.grid_min) ||
        config.grid_points < 3 || !(config.slack >= 0.0))
        throw domain_error("build_probe_grid: invalid grid configuration");

    probe_grid pg;
    pg.full = log_grid(config.grid_min, config.grid_max, config.grid_points);

    // Puncture the grid around omega zeros.
    for (double z : model.omega_zeros) {
        const double r = std::max(1e-6, 1e-3 * std::fabs(z));
        pg.excluded.emplace_back(z - r, z + r);
    }
    pg.punctured.reserve(pg.full.size());
    for (double x : pg.full) {
        bool excluded = false;
        for (const auto& [lo, hi] : pg.excluded)
            excluded = excluded || (x >= lo && x <= hi);
        if (!excluded)
            pg.punctured.push_back(x);
    }

    // Segment boundaries: omega zeros plus the zeros of the shared test
    // function denominator found by sign change + bisection.
    pg.breaks = model.omega_zeros;
    if (pg.punctured.size() >= 2) {
        auto den = [&model](double x) { return shared_denominator(model, x); };
        double prev = den(pg.punctured.front());
        for (size_t i = 1; i < pg.punctured.size(); ++i) {
            const double cur = den(pg.punctured[i]);
            if (std::isfinite(prev) && std::isfinite(cur) &&
                ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) &&
                !straddles_break(pg.punctured[i - 1], pg.punctured[i], pg.breaks))
                pg.breaks.push_back(bisect(den, pg.punctured[i - 1], pg.punctured[i]));
            prev = cur;
        }
    }
    std::sort(pg.breaks.begin(), pg.breaks.end());
    return pg;
}

certificate certify_reciprocal(const distribution_model& model,
                               const certify_config& config) {
    certificate cert;
    const probe_grid pg = build_probe_grid(model, config);
    const std::vector<double>& grid = pg.full;
    const std::vector<double>& pgrid = pg.punctured;
    const std::vector<double>& breaks = pg.breaks;
    cert.excluded_intervals = pg.excluded;

    // Probe everything once; routes reuse the same reports.
    const limit_diagnostic lim_a = limit_probe(model, limit_expr::f_over_omega);
    const limit_diagnostic lim_b1 = limit_probe(model, limit_expr::f_over_one_minus_xomega);
    const limit_diagnostic lim_b2 = limit_probe(model, limit_expr::xf_over_one_minus_xomega);

    std::optional<monotonicity_report> r_or, r_ta, r_tb;
    std::string err_or, err_ta, err_tb;
    if (pgrid.size() >= 3) {
        try {
            r_or = monotonicity_probe([&](double x) { return omega_ratio(model, x); },
                                      pgrid, config.slack, breaks);
        } catch (const std::exception& e) {
            err_or = e.what();
        }
        try {
            r_ta = monotonicity_probe([&](double x) { return test_fn_a(model, x); },
                                      pgrid, config.slack, breaks);
        } catch (const std::exception& e) {
            err_ta = e.what();
        }
        try {
            r_tb = monotonicity_probe([&](double x) { return test_fn_b(model, x); },
                                      pgrid, config.slack, breaks);
        } catch (const std::exception& e) {
            err_tb = e.what();
        }
    } else {
        err_or = err_ta = err_tb = "punctured grid too small";
    }

    struct orientation_result {
        bool fires = false;
        bool strict = false;
        bool convex = false;
    };
    auto pair_orientations = [](const monotonicity_report& ratio,
                                const monotonicity_report& tfn) {
        orientation_result conv, conc;
        if (dec_like(ratio.dir) && inc_like(tfn.dir)) {
            conv.fires = true;
            conv.convex = true;
            conv.strict = ratio.dir == direction::strictly_decreasing &&
                          tfn.dir == direction::strictly_increasing;
        }
        if (inc_like(ratio.dir) && dec_like(tfn.dir)) {
            conc.fires = true;
            conc.strict = ratio.dir == direction::strictly_increasing &&
                          tfn.dir == direction::strictly_decreasing;
        }
        return std::make_pair(conv, conc);
    };

    auto settle = [&cert](const orientation_result& conv, const orientation_result& conc) {
        if (conv.fires && conc.fires) {
            // Only possible when both test functions sit flat inside slack.
            cert.outcome = verdict::reciprocally_convex;
            cert.notes.push_back(
                "test functions constant on the grid: both the reciprocally "
                "convex and reciprocally concave families hold non-strictly "
                "(affine Mills ratio)");
        } else if (conv.fires) {
            cert.outcome = conv.strict ? verdict::strictly_reciprocally_convex
                                       : verdict::reciprocally_convex;
        } else {
            cert.outcome = conc.strict ? verdict::strictly_reciprocally_concave
                                       : verdict::reciprocally_concave;
        }
    };

    bool partA = false, partB = false;
    orientation_result a_conv, a_conc, b_conv, b_conc;
    if (lim_a.passed && r_or && r_ta) {
        std::tie(a_conv, a_conc) = pair_orientations(*r_or, *r_ta);
        partA = a_conv.fires || a_conc.fires;
    }
    if (lim_a.passed && lim_b1.passed && lim_b2.passed && r_or && r_tb) {
        std::tie(b_conv, b_conc) = pair_orientations(*r_or, *r_tb);
        partB = b_conv.fires || b_conc.fires;
    }

    if (partA) {
        settle(a_conv, a_conc);
        cert.route = cert_route::part_a;
        cert.conditions.push_back(limit_condition(lim_a));
        cert.conditions.push_back(mono_condition("omega'/omega^2 monotone", *r_or, true));
        cert.conditions.push_back(mono_condition("T_a monotone", *r_ta, true));
        if (partB)
            cert.notes.push_back("part (b) conditions hold as well");
        return cert;
    }
    if (partB) {
        settle(b_conv, b_conc);
        cert.route = cert_route::part_b;
        cert.conditions.push_back(limit_condition(lim_a));
        cert.conditions.push_back(limit_condition(lim_b1));
        cert.conditions.push_back(limit_condition(lim_b2));
        cert.conditions.push_back(mono_condition("omega'/omega^2 monotone", *r_or, true));
        cert.conditions.push_back(mono_condition("T_b monotone", *r_tb, true));
        return cert;
    }

    // Why the parts did not fire, for the record.
    if (!err_or.empty())
        cert.notes.push_back("omega'/omega^2 probe failed: " + err_or);
    else if (r_or)
        cert.notes.push_back(std::string("part (a)/(b) not fired: omega'/omega^2 is ") +
                             direction_name(r_or->dir) +
                             (r_ta ? std::string(", T_a is ") + direction_name(r_ta->dir) : err_ta) +
                             (r_tb ? std::string(", T_b is ") + direction_name(r_tb->dir) : err_tb));
    if (!lim_a.passed)
        cert.notes.push_back("limit f/omega failed: " + lim_a.note);

    // Direct probe: curvature of m plus the direction of x^2 m'.
    cert.route = cert_route::direct_probe;
    curvature shape;
    std::optional<monotonicity_report> r_x2;
    try {
        shape = curvature_probe(model.mills, grid, config.slack);
        r_x2 = x2mprime_probe(model, grid, config.slack);
    } catch (const std::exception& e) {
        cert.outcome = verdict::inconclusive;
        cert.notes.push_back(std::string("direct probe failed: ") + e.what());
        return cert;
    }

    const bool m_convex = shape == curvature::strictly_convex || shape == curvature::convex;
    const bool m_concave = shape == curvature::strictly_concave || shape == curvature::concave;
    const bool m_affine = shape == curvature::affine;
    const direction xd = r_x2->dir;
    const bool x_up = xd == direction::strictly_increasing || xd == direction::non_decreasing;
    const bool x_down = xd == direction::strictly_decreasing || xd == direction::non_increasing;
    const bool x_const = xd == direction::constant;

    condition_record curv_rec;
    curv_rec.name = "m curvature";
    curv_rec.note = curvature_name(shape);
    curv_rec.passed = shape != curvature::mixed;
    cert.conditions.push_back(curv_rec);
    cert.conditions.push_back(
        mono_condition("x^2 m' monotone", *r_x2, xd != direction::not_monotone));

    if (m_affine && x_const) {
        cert.outcome = verdict::reciprocally_convex;
        cert.notes.push_back(
            "m affine with constant x^2 m': both families hold non-strictly");
    } else if ((m_concave || m_affine) && (x_up || x_const)) {
        cert.outcome = (shape == curvature::strictly_concave &&
                        xd == direction::strictly_increasing)
                           ? verdict::strictly_reciprocally_convex
                           : verdict::reciprocally_convex;
    } else if ((m_convex || m_affine) && (x_down || x_const)) {
        cert.outcome = (shape == curvature::strictly_convex &&
                        xd == direction::strictly_decreasing)
                           ? verdict::strictly_reciprocally_concave
                           : verdict::reciprocally_concave;
    } else if (m_convex && x_up) {
        // m and m(1/x) both convex: genuinely on neither side.
        cert.outcome = verdict::neither;
    } else if (m_concave && x_down) {
        cert.outcome = verdict::neither;
    } else {
        cert.outcome = verdict::inconclusive;
        cert.notes.push_back("direct probe inconclusive: curvature or x^2 m' direction unresolved");
    }
    return cert;
}

} // namespace mills
