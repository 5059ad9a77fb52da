#ifndef MILLS_GRID_HPP
#define MILLS_GRID_HPP

#include <mills/errors.hpp>

#include <cmath>
#include <vector>

namespace mills {

// n logarithmically spaced points on [lo, hi], endpoints exact.
inline std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw domain_error("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

} // namespace mills

#endif
