#include <mills/inequalities.hpp>

#include <mills/errors.hpp>
#include <mills/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace mills {

const char* chain_direction_name(chain_direction d) {
    switch (d) {
    case chain_direction::convex_chain: return "convex_chain";
    case chain_direction::concave_chain: return "concave_chain";
    }
    return "?";
}

const char* chain_verdict_name(chain_verdict v) {
    switch (v) {
    case chain_verdict::holds: return "holds";
    case chain_verdict::holds_with_equality: return "holds_with_equality";
    case chain_verdict::violated: return "violated";
    }
    return "?";
}

namespace {

double eval_at(const std::function<double(double)>& fn, double t) {
    double v;
    try {
        v = fn(t);
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "chain evaluation failed at x = " << t << ": " << e.what();
        throw domain_error(os.str());
    }
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "chain evaluation non-finite at x = " << t;
        throw domain_error(os.str());
    }
    return v;
}

} // namespace

chain_report chain_terms(const std::function<double(double)>& fn, double x, double y,
                         chain_direction direction) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw domain_error("chain_terms: x and y must be positive and finite");

    const double fx = eval_at(fn, x);
    const double fy = eval_at(fn, y);

    chain_report rep;
    rep.x = x;
    rep.y = y;
    rep.direction = direction;
    rep.term_harmonic = eval_at(fn, 2.0 * x * y / (x + y));
    rep.term_average = 0.5 * (fx + fy);
    rep.term_arithmetic = eval_at(fn, 0.5 * (x + y));
    rep.term_weighted = (x * fx + y * fy) / (x + y);

    const double scale = std::max({std::fabs(rep.term_harmonic), std::fabs(rep.term_average),
                                   std::fabs(rep.term_arithmetic), std::fabs(rep.term_weighted)});
    rep.tolerance = 1e-10 * (1.0 + scale);

    // Signed gaps in chain order; the convex chain wants all three >= 0.
    double gaps[3] = {rep.term_average - rep.term_harmonic,
                      rep.term_arithmetic - rep.term_average,
                      rep.term_weighted - rep.term_arithmetic};
    if (direction == chain_direction::concave_chain)
        for (double& g : gaps)
            g = -g;

    double worst = 0.0, tightest = std::numeric_limits<double>::infinity(), biggest = 0.0;
    for (double g : gaps) {
        worst = std::min(worst, g);
        tightest = std::min(tightest, g);
        biggest = std::max(biggest, std::fabs(g));
    }
    rep.max_violation = std::max(0.0, -worst);
    rep.min_margin = tightest;

    if (worst < -rep.tolerance)
        rep.verdict = chain_verdict::violated;
    else if (biggest <= rep.tolerance)
        rep.verdict = chain_verdict::holds_with_equality;
    else
        rep.verdict = chain_verdict::holds;
    return rep;
}

chain_report stieltjes_chain(double x, double y) {
    auto h = [](double t) { return normal_mills(std::sqrt(t)).value / std::sqrt(t); };
    return chain_terms(h, x, y, chain_direction::concave_chain);
}

chain_suite_summary random_chain_suite(const std::function<double(double)>& fn,
                                       chain_direction direction, long n_samples,
                                       std::uint64_t seed, double lo, double hi) {
    if (n_samples < 1)
        throw domain_error("random_chain_suite: n_samples must be >= 1");
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
        throw domain_error("random_chain_suite: range must satisfy 0 < lo <= hi");

    std::mt19937_64 rng(seed);
    const double log_lo = std::log(lo);
    const double log_span = std::log(hi) - log_lo;
    auto draw = [&rng, log_lo, log_span]() {
        // 53-bit mantissa uniform in [0,1); identical on every platform.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::exp(log_lo + u * log_span);
    };

    chain_suite_summary sum;
    sum.n_samples = n_samples;
    sum.min_margin = std::numeric_limits<double>::infinity();

    bool have_worst = false;
    double worst_key = 0.0;
    auto better = [&](double key, const chain_report& rep, bool violated_mode) {
        if (!have_worst)
            return true;
        if (violated_mode ? key > worst_key : key < worst_key)
            return true;
        if (key != worst_key)
            return false;
        if (rep.x != sum.worst_pair.first)
            return rep.x < sum.worst_pair.first;
        return rep.y < sum.worst_pair.second;
    };

    for (long i = 0; i < n_samples; ++i) {
        const double x = draw();
        const double y = draw();
        const chain_report rep = chain_terms(fn, x, y, direction);

        sum.min_margin = std::min(sum.min_margin, rep.min_margin);
        if (rep.verdict == chain_verdict::violated) {
            if (sum.failures == 0) {
                // First violation resets the worst-pair tracking to violations only.
                have_worst = false;
            }
            ++sum.failures;
            if (sum.violated.size() < 32)
                sum.violated.push_back(rep);
            if (better(rep.max_violation, rep, true)) {
                have_worst = true;
                worst_key = rep.max_violation;
                sum.worst_pair = {rep.x, rep.y};
            }
        } else {
            ++sum.passes;
            if (rep.verdict == chain_verdict::holds_with_equality)
                ++sum.equalities;
            if (sum.failures == 0 && better(rep.min_margin, rep, false)) {
                have_worst = true;
                worst_key = rep.min_margin;
                sum.worst_pair = {rep.x, rep.y};
            }
        }
    }

    if (sum.failures > 0)
        sum.worst_violation = worst_key;
    return sum;
}

} // namespace mills
