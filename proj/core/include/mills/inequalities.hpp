#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

// Four-term mean chain for a function on (0,inf):
//
//   fn(2xy/(x+y))  vs  (fn(x)+fn(y))/2  vs  fn((x+y)/2)  vs  (x fn(x)+y fn(y))/(x+y)
//
// A reciprocally convex function (concave, with fn(1/x) convex) satisfies the
// chain left to right with <=; a reciprocally concave one reverses every
// inequality. Equality throughout happens exactly at x = y, up to tolerance.

namespace mills {

enum class chain_direction { convex_chain, concave_chain };
enum class chain_verdict { holds, holds_with_equality, violated };

const char* chain_direction_name(chain_direction d);
const char* chain_verdict_name(chain_verdict v);

struct chain_report {
    double x = 0.0;
    double y = 0.0;
    double term_harmonic = 0.0;   // fn(2xy/(x+y))
    double term_average = 0.0;    // (fn(x) + fn(y))/2
    double term_arithmetic = 0.0; // fn((x+y)/2)
    double term_weighted = 0.0;   // (x fn(x) + y fn(y))/(x+y)
    chain_direction direction = chain_direction::convex_chain;
    chain_verdict verdict = chain_verdict::holds;
    double max_violation = 0.0;   // largest gap pointing the forbidden way, 0 when none
    double min_margin = 0.0;      // smallest gap pointing the required way
    double tolerance = 0.0;       // 1e-10 * (1 + max |term|)
};

// Evaluates all four terms of the chain at (x, y) and grades the ordering.
// Both x and y must be positive; evaluation failures are rethrown with the
// failing abscissa attached.
chain_report chain_terms(const std::function<double(double)>& fn, double x, double y,
                         chain_direction direction);

// The concave chain for h(x) = normal_mills(sqrt(x))/sqrt(x), the Stieltjes
// transform attached to the half-line normal model. Holds strictly for every
// x != y and collapses to equality on the diagonal.
chain_report stieltjes_chain(double x, double y);

struct chain_suite_summary {
    long n_samples = 0;
    long passes = 0;      // holds or holds_with_equality
    long equalities = 0;
    long failures = 0;    // violated
    std::pair<double, double> worst_pair{0.0, 0.0};
    double worst_violation = 0.0; // 0 when nothing violated
    double min_margin = 0.0;      // tightest satisfied gap over the whole suite
    std::vector<chain_report> violated; // capped at 32 reports, failures holds the true count
};

// Draws n_samples (x, y) pairs log-uniformly from [lo, hi]^2 with a fixed
// seed (bit-reproducible across platforms) and grades every chain. The worst
// pair is the largest violation when anything violated, otherwise the
// tightest margin; ties break toward smaller x, then smaller y.
chain_suite_summary random_chain_suite(const std::function<double(double)>& fn,
                                       chain_direction direction, long n_samples,
                                       std::uint64_t seed, double lo, double hi);

} // namespace mills
