#include <mills/distribution.hpp>

#include <mills/grid.hpp>
#include <mills/quadrature.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace mills {

namespace {

constexpr double kInvSqrtTwoPi = 0.39894228040143267793994605993438;

void require_support(double x, const char* id) {
    if (!std::isfinite(x) || x <= 0.0)
        throw domain_error(std::string(id) + ": abscissa must be finite and > 0");
}

// Root of fn in [a, b] (fn(a), fn(b) of opposite sign), bisected to 1e-12.
double bisect_zero(const std::function<double(double)>& fn, double a, double b) {
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

std::vector<double> find_sign_changes(const std::function<double(double)>& fn,
                                      const std::vector<double>& grid) {
    std::vector<double> zeros;
    double prev = fn(grid.front());
    for (size_t i = 1; i < grid.size(); ++i) {
        const double cur = fn(grid[i]);
        if (std::isfinite(prev) && std::isfinite(cur) &&
            ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)))
            zeros.push_back(bisect_zero(fn, grid[i - 1], grid[i]));
        prev = cur;
    }
    return zeros;
}

} // namespace

distribution_model make_gamma(const shape_param& alpha) {
    const double a = alpha.value();

    char buf[48];
    std::snprintf(buf, sizeof buf, "gamma(%g)", a);

    distribution_model m;
    m.id = buf;
    m.density = [a](double x) {
        require_support(x, "gamma density");
        return std::exp((a - 1.0) * std::log(x) - x - std::lgamma(a));
    };
    m.survival = [a](double x) {
        require_support(x, "gamma survival");
        return regularized_gamma_q(shape_param(a), x).value;
    };
    m.omega = [a](double x) {
        require_support(x, "gamma omega");
        return (a - 1.0) / x - 1.0;
    };
    m.omega_prime = [a](double x) {
        require_support(x, "gamma omega_prime");
        return (1.0 - a) / (x * x);
    };
    m.mills = [a](double x) { return gamma_mills(shape_param(a), x).value; };
    if (a > 1.0)
        m.omega_zeros = {a - 1.0};
    return m;
}

distribution_model make_normal_halfline() {
    distribution_model m;
    m.id = "normal-h";
    m.density = [](double x) { return kInvSqrtTwoPi * std::exp(-0.5 * x * x); };
    m.survival = [](double x) { return normal_survival(x).value; };
    m.omega = [](double x) { return -x; };
    m.omega_prime = [](double) { return -1.0; };
    m.mills = [](double x) { return normal_mills(x).value; };
    return m;
}

distribution_model make_custom(std::function<double(double)> omega_fn,
                               std::function<double(double)> omega_prime_fn,
                               std::function<double(double)> density_fn,
                               const support_hint& hint) {
    if (!omega_fn || !omega_prime_fn || !density_fn)
        throw domain_error("make_custom: all three functions are required");
    if (!(hint.lo > 0.0) || !(hint.hi > hint.lo))
        throw domain_error("make_custom: need 0 < hint.lo < hint.hi");

    // omega must match d/dx log density wherever the density carries
    // representable mass; points whose density has underflowed are skipped.
    const std::vector<double> probes = log_grid(hint.lo, hint.hi, 41);
    double worst_x = 0.0, worst_gap = 0.0;
    int checked = 0;
    for (double x : probes) {
        const double h = x * 1e-6;
        const double flo = density_fn(x - h), fhi = density_fn(x + h);
        if (!(flo > 0.0) || !(fhi > 0.0) || !std::isfinite(flo) || !std::isfinite(fhi))
            continue;
        const double fd = (std::log(fhi) - std::log(flo)) / (2.0 * h);
        const double gap = std::fabs(fd - omega_fn(x));
        ++checked;
        if (gap > worst_gap) {
            worst_gap = gap;
            worst_x = x;
        }
    }
    if (checked == 0)
        throw model_error("make_custom: density not usable anywhere on the hint range",
                          hint.lo);
    if (worst_gap > 1e-4)
        throw model_error("make_custom: omega does not match d/dx log(density)", worst_x);

    struct tail_cache {
        std::mutex mu;
        std::map<double, double> vals;
    };
    auto cache = std::make_shared<tail_cache>();

    auto survival = [density_fn, cache](double x) {
        require_support(x, "custom survival");
        {
            std::lock_guard<std::mutex> lock(cache->mu);
            auto it = cache->vals.find(x);
            if (it != cache->vals.end())
                return it->second;
        }
        // The tail integral can be many orders of magnitude below 1, and the
        // Mills ratio divides it by a density of the same scale, so the
        // stopping rule must be relative; the absolute floor only guards
        // against chasing digits past the underflow threshold.
        quad_options opt;
        opt.target_abs_err = 1e-300;
        opt.target_rel_err = 1e-12;
        const double v = integrate_semi_infinite(density_fn, x, opt).value;
        std::lock_guard<std::mutex> lock(cache->mu);
        cache->vals.emplace(x, v);
        return v;
    };

    distribution_model m;
    m.id = "custom";
    m.density = density_fn;
    m.survival = survival;
    m.omega = omega_fn;
    m.omega_prime = omega_prime_fn;
    m.mills = [survival, density_fn](double x) {
        require_support(x, "custom mills");
        return survival(x) / density_fn(x);
    };
    m.omega_zeros = find_sign_changes(omega_fn, log_grid(hint.lo, hint.hi, 257));
    return m;
}

} // namespace mills
