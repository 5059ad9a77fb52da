#ifndef MILLS_ANALYSIS_HPP
#define MILLS_ANALYSIS_HPP

#include <mills/distribution.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

//============================================================================
// Monotonicity probes, limit diagnostics and the reciprocal convexity
// certifier.
//
// A function f is reciprocally convex when f is concave and x -> f(1/x) is
// convex on (0, inf), and reciprocally concave when -f is reciprocally
// convex.  The certifier decides which side a model's Mills ratio falls on
// by checking sufficient conditions built from omega = f'/f:
//
//   part (a):  f/omega -> 0,  omega'/omega^2 monotone,  and
//              T_a = x^3 omega' / (x omega^2 - x omega' - 2 omega) monotone
//              the opposite way;
//   part (b):  three tail limits,  omega'/omega^2 monotone,  and
//              T_b = (x^2 omega' - x omega + 2) / (same denominator);
//   direct:    curvature of m from second differences plus the direction of
//              x^2 m', which carries the curvature of m(1/x).
//
// omega zeros make omega'/omega^2 blow up, so grids are punctured around
// them and conditions are evaluated piecewise on the remaining segments.
// The shared denominator of T_a and T_b has zeros of its own; probes split
// there as well, so a pole crossing is never mistaken for a direction
// change.
//============================================================================

namespace mills {

enum class direction {
    strictly_increasing,
    strictly_decreasing,
    non_decreasing,
    non_increasing,
    constant,
    not_monotone,
};
const char* direction_name(direction d);

struct monotonicity_report {
    std::vector<double> grid;
    direction dir = direction::constant;
    struct violation {
        double x_lo, x_hi, delta;
    };
    // Consecutive pairs moving against the dominant trend beyond slack.
    std::vector<violation> violations;
    double slack = 0.0;
};

// Classify fn on the grid.  slack is relative to the local function scale:
// a step counts as a move only when it exceeds slack * max(1, |f|).  Pairs
// straddling a breakpoint are exempt, which is how piecewise evaluation on
// punctured grids is expressed.  Evaluation errors propagate to the caller.
monotonicity_report monotonicity_probe(const std::function<double(double)>& fn,
                                       const std::vector<double>& grid,
                                       double slack,
                                       const std::vector<double>& breakpoints = {});

enum class curvature {
    strictly_convex,
    convex,
    strictly_concave,
    concave,
    affine,
    mixed,
};
const char* curvature_name(curvature c);

// Sign of the second divided differences of fn over the grid, with the same
// local-scale slack convention as monotonicity_probe.
curvature curvature_probe(const std::function<double(double)>& fn,
                          const std::vector<double>& grid, double slack);

// The two test functions above and omega'/omega^2, evaluated from the
// model's omega and omega'.  A denominator within 1e-14 of zero raises
// singularity_error carrying the abscissa; omega_ratio also refuses points
// inside the exclusion radius max(1e-6, 1e-3 z) of an omega zero z.
double test_fn_a(const distribution_model& model, double x);
double test_fn_b(const distribution_model& model, double x);
double omega_ratio(const distribution_model& model, double x);

enum class limit_expr {
    f_over_omega,
    f_over_one_minus_xomega,
    xf_over_one_minus_xomega,
};
const char* limit_expr_name(limit_expr e);

struct limit_diagnostic {
    limit_expr which;
    std::vector<std::pair<double, double>> samples;  // (x, value)
    bool passed = false;
    std::string note;
};

// Samples the expression at x = 10, 10^2, 10^3, 10^4 and passes when the
// magnitudes are non-increasing and the last is below 1e-8.  A heuristic,
// not a proof; failures carry the sampled values.
limit_diagnostic limit_probe(const distribution_model& model, limit_expr which);

// Direction of x -> x^2 m'(x), with m' taken from the identity
// m' = -omega m - 1 rather than finite differences.
monotonicity_report x2mprime_probe(const distribution_model& model,
                                   const std::vector<double>& grid, double slack);

// Self-consistency check: central-difference m' plus omega m plus 1.
// Zero in exact arithmetic for any genuine Mills ratio.
double ode_residual(const distribution_model& model, double x);

struct cm_order_result {
    int order;
    bool passed;
    double worst_value;  // most negative signed value of (-1)^n diff^n f
    double worst_x;
};
struct cm_report {
    int max_order;
    double step;
    std::vector<cm_order_result> orders;
    bool passed = false;
};

// Complete monotonicity probe: checks (-1)^n diff^n f >= 0 on the grid for
// n = 0..max_order (max 6) using forward differences with per-point step
// max(step, x * step).
cm_report complete_monotonicity_probe(const std::function<double(double)>& fn,
                                      const std::vector<double>& grid,
                                      int max_order, double step = 1e-2);

enum class verdict {
    reciprocally_convex,
    strictly_reciprocally_convex,
    reciprocally_concave,
    strictly_reciprocally_concave,
    neither,
    inconclusive,
};
const char* verdict_name(verdict v);

enum class cert_route { part_a, part_b, direct_probe, none };
const char* route_name(cert_route r);

struct condition_record {
    std::string name;
    bool passed = false;
    std::string note;
    std::optional<monotonicity_report> mono;
    std::optional<limit_diagnostic> limit;
};

struct certificate {
    verdict outcome = verdict::inconclusive;
    cert_route route = cert_route::none;
    std::vector<condition_record> conditions;
    std::vector<std::pair<double, double>> excluded_intervals;
    std::vector<std::string> notes;
};

struct certify_config {
    double grid_min = 1e-3;
    double grid_max = 1e3;
    int grid_points = 2000;
    double slack = 1e-9;
};

struct probe_grid {
    std::vector<double> full;
    std::vector<double> punctured;                      // full minus excluded intervals
    std::vector<double> breaks;                         // omega zeros + denominator zeros
    std::vector<std::pair<double, double>> excluded;    // intervals around omega zeros
};

// The grid the certifier works on: log-spaced points punctured around omega
// zeros, with segment boundaries at omega zeros and at sign changes of the
// shared test function denominator.
probe_grid build_probe_grid(const distribution_model& model, const certify_config& config);

// Try part (a), then part (b), then the direct probe.  Never throws on grid
// evaluation trouble: a condition that cannot be evaluated is recorded as
// failed and the verdict degrades to inconclusive at worst.
certificate certify_reciprocal(const distribution_model& model,
                               const certify_config& config = {});

} // namespace mills

#endif
