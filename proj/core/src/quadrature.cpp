#include <mills/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace mills {

namespace {

// Gauss 7 / Kronrod 15 rule on [-1, 1] (QUADPACK constants).
constexpr double kXgk[8] = {
    0.99145537112081263920685469752633,
    0.94910791234275852452618968404785,
    0.86486442335976907278971278864093,
    0.74153118559939443986386477328079,
    0.58608723546769113029414483825873,
    0.40584515137739716690660641207696,
    0.20778495500789846760068940377324,
    0.0,
};
constexpr double kWgk[8] = {
    0.02293532201052922496373200805897,
    0.06309209262997855329070066318921,
    0.10479001032225018383987632254152,
    0.14065325971552591874518959051024,
    0.16900472663926790282658342659855,
    0.19035057806478540991325640242101,
    0.20443294007529889241416199923465,
    0.20948214108472782801299917489171,
};
constexpr double kWg[4] = {
    0.12948496616886969327061143267908,
    0.27970539148927666790146777142378,
    0.38183005050511894495036977548898,
    0.41795918367346938775510204081633,
};

struct panel {
    double a, b;
    double value;
    double error;
};

struct worse_error {
    bool operator()(const panel& p, const panel& q) const { return p.error < q.error; }
};

// One Kronrod pass over [a, b].  The error estimate follows QUADPACK's
// scaling of |K15 - G7| against the deviation integral, with a roundoff
// floor, so it stays meaningful down to machine precision.
panel kronrod15(const std::function<double(double)>& f, double a, double b,
                long& evaluations) {
    const double hw = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - hw * kXgk[i]);
        fv[14 - i] = f(mid + hw * kXgk[i]);
    }
    fv[7] = f(mid);
    evaluations += 15;

    for (double v : fv) {
        if (std::isnan(v))
            throw domain_error("integrate_semi_infinite: integrand returned NaN");
    }

    double resk = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    }
    resk += kWgk[7] * fv[7];
    resabs += kWgk[7] * std::fabs(fv[7]);

    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 3; ++i)
        resg += kWg[i] * (fv[1 + 2 * i] + fv[13 - 2 * i]);

    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fv[i] - mean) + std::fabs(fv[14 - i] - mean));

    panel p;
    p.a = a;
    p.b = b;
    p.value = resk * hw;
    if (!std::isfinite(p.value))
        throw domain_error("integrate_semi_infinite: integrand not integrable in panel");

    double err = std::fabs((resk - resg) * hw);
    resasc *= std::fabs(hw);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    err = std::max(err, 50.0 * eps * resabs * std::fabs(hw));
    p.error = err;
    return p;
}

} // namespace

quadrature_result integrate_semi_infinite(const std::function<double(double)>& f,
                                          double lower, const quad_options& opt) {
    if (!std::isfinite(lower))
        throw domain_error("integrate_semi_infinite: lower bound must be finite");
    if (!(opt.target_abs_err > 0.0))
        throw domain_error("integrate_semi_infinite: tolerance must be > 0");

    if (opt.sqrt_singularity_at_lower) {
        // s = lower + v^2 turns an s^(-1/2) endpoint into a bounded, smooth
        // integrand in v; recurse with the substitution applied.
        quad_options inner = opt;
        inner.sqrt_singularity_at_lower = false;
        inner.initial_breakpoints.clear();
        for (double b : opt.initial_breakpoints)
            if (b > lower)
                inner.initial_breakpoints.push_back(std::sqrt(b - lower));
        return integrate_semi_infinite(
            [&f, lower](double v) { return 2.0 * v * f(lower + v * v); }, 0.0, inner);
    }

    // Map t = lower + v/(1-v), dt = dv/(1-v)^2, onto v in (0, 1).
    auto mapped = [&f, lower](double v) {
        const double omv = 1.0 - v;
        const double t = lower + v / omv;
        if (!std::isfinite(t))
            return 0.0;  // beyond the double range the decaying tail is zero
        const double ft = f(t);
        if (ft == 0.0)
            return 0.0;
        return ft / (omv * omv);
    };

    std::vector<double> cuts{0.0};
    for (double b : opt.initial_breakpoints) {
        if (b > lower && std::isfinite(b))
            cuts.push_back((b - lower) / (1.0 + (b - lower)));
    }
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    long evaluations = 0;
    int panels_used = 0;
    std::priority_queue<panel, std::vector<panel>, worse_error> heap;
    double total_value = 0.0, total_error = 0.0;

    auto push = [&](double a, double b) {
        panel p = kronrod15(mapped, a, b, evaluations);
        ++panels_used;
        total_value += p.value;
        total_error += p.error;
        heap.push(p);
    };

    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        push(cuts[i], cuts[i + 1]);

    auto accepted = [&]() {
        double bound = opt.target_abs_err;
        if (opt.target_rel_err > 0.0)
            bound = std::max(bound, opt.target_rel_err * std::fabs(total_value));
        return total_error <= bound;
    };

    while (!accepted()) {
        if (panels_used >= opt.max_panels || heap.empty())
            throw accuracy_error(
                "integrate_semi_infinite: subdivision budget exhausted before "
                "reaching the requested tolerance",
                total_value, total_error);
        panel worst = heap.top();
        heap.pop();
        total_value -= worst.value;
        total_error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw accuracy_error(
                "integrate_semi_infinite: panel width underflow before "
                "reaching the requested tolerance",
                total_value + worst.value, total_error + worst.error);
        push(worst.a, mid);
        push(mid, worst.b);
    }

    quadrature_result r;
    r.value = total_value;
    r.abs_error_estimate = total_error;
    r.evaluations = evaluations;
    return r;
}

quadrature_result integrate_semi_infinite(const std::function<double(double)>& f,
                                          double lower, double target_abs_err) {
    quad_options opt;
    opt.target_abs_err = target_abs_err;
    return integrate_semi_infinite(f, lower, opt);
}

namespace {

constexpr double kInvSqrtTwoPi = 0.39894228040143267793994605993438;

void require_positive_x(double x, const char* what) {
    if (!std::isfinite(x) || x <= 0.0)
        throw domain_error(std::string(what) + ": x must be finite and > 0");
}

// Large integrals get a relative stopping floor so the absolute target is
// not chased below roundoff of the value itself.
quad_options scaled_options(double target_abs_err) {
    quad_options opt;
    opt.target_abs_err = target_abs_err;
    opt.target_rel_err = 1e-13;
    return opt;
}

} // namespace

quadrature_result mills_reference(representation rep,
                                  const std::optional<shape_param>& alpha,
                                  double x, double target_abs_err) {
    switch (rep) {
    case representation::laplace_normal: {
        if (!std::isfinite(x) || x < 0.0)
            throw domain_error("mills_reference: laplace_normal needs x >= 0");
        return integrate_semi_infinite(
            [x](double t) { return std::exp(-x * t - 0.5 * t * t); }, 0.0,
            scaled_options(target_abs_err));
    }
    case representation::cauchy_normal: {
        require_positive_x(x, "mills_reference: cauchy_normal");
        return integrate_semi_infinite(
            [x](double t) {
                return 2.0 * x * kInvSqrtTwoPi * std::exp(-0.5 * t * t) / (x * x + t * t);
            },
            0.0, scaled_options(target_abs_err));
    }
    case representation::stieltjes_h: {
        require_positive_x(x, "mills_reference: stieltjes_h");
        quad_options opt = scaled_options(target_abs_err);
        opt.sqrt_singularity_at_lower = true;
        return integrate_semi_infinite(
            [x](double s) {
                return kInvSqrtTwoPi * std::exp(-0.5 * s) / ((x + s) * std::sqrt(s));
            },
            0.0, opt);
    }
    case representation::gamma_shift: {
        if (!alpha)
            throw domain_error("mills_reference: gamma_shift requires alpha");
        require_positive_x(x, "mills_reference: gamma_shift");
        const double a = alpha->value();
        quad_options opt = scaled_options(target_abs_err);
        opt.initial_breakpoints = {1.0 + 10.0 / x};
        return integrate_semi_infinite(
            [a, x](double u) { return x * std::exp((a - 1.0) * std::log(u) + (1.0 - u) * x); },
            1.0, opt);
    }
    case representation::gamma_scaled: {
        if (!alpha)
            throw domain_error("mills_reference: gamma_scaled requires alpha");
        require_positive_x(x, "mills_reference: gamma_scaled");
        const double a = alpha->value();
        return integrate_semi_infinite(
            [a, x](double u) { return std::exp((a - 1.0) * std::log1p(u / x) - u); }, 0.0,
            scaled_options(target_abs_err));
    }
    }
    throw domain_error("mills_reference: unknown representation");
}

quadrature_result mills_reference(representation rep, double x, double target_abs_err) {
    return mills_reference(rep, std::nullopt, x, target_abs_err);
}

quadrature_result gamma_x2mprime_reference(const shape_param& alpha, double x,
                                           int order, double target_abs_err) {
    require_positive_x(x, "gamma_x2mprime_reference");
    if (order != 0 && order != 1)
        throw domain_error("gamma_x2mprime_reference: order must be 0 or 1");
    const double a = alpha.value();
    if (order == 0) {
        //   x^2 m'(x) = -(a-1) int_0^inf (1 + u/x)^(a-2) u e^-u du
        return integrate_semi_infinite(
            [a, x](double u) {
                return -(a - 1.0) * u * std::exp((a - 2.0) * std::log1p(u / x) - u);
            },
            0.0, scaled_options(target_abs_err));
    }
    //   d/dx [x^2 m'(x)] = (a-1)(a-2) int_0^inf (1 + u/x)^(a-3) (u^2/x^2) e^-u du
    return integrate_semi_infinite(
        [a, x](double u) {
            return (a - 1.0) * (a - 2.0) * (u * u) / (x * x) *
                   std::exp((a - 3.0) * std::log1p(u / x) - u);
        },
        0.0, scaled_options(target_abs_err));
}

quadrature_result gamma_msecond_reference(const shape_param& alpha, double x,
                                          double target_abs_err) {
    require_positive_x(x, "gamma_msecond_reference");
    const double a = alpha.value();
    //   m''(x) = (a-1) int_1^inf (1-u)^2 u^(a-2) e^((1-u)x) du
    quad_options opt = scaled_options(target_abs_err);
    opt.initial_breakpoints = {1.0 + 10.0 / x};
    return integrate_semi_infinite(
        [a, x](double u) {
            const double d = 1.0 - u;
            return (a - 1.0) * d * d * std::exp((a - 2.0) * std::log(u) + d * x);
        },
        1.0, opt);
}

} // namespace mills
