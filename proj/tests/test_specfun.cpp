#include <doctest.h>

#include <mills/errors.hpp>
#include <mills/grid.hpp>
#include <mills/specfun.hpp>

#include <cmath>
#include <limits>
#include <vector>

using namespace mills;

namespace {

double rel_gap(double a, double b) {
    return std::fabs(a - b) / std::max({1e-300, std::fabs(a), std::fabs(b)});
}

// Reference values computed with 50-digit arithmetic and rounded to double.
constexpr double kSqrtHalfPi = 1.2533141373155002512;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kPhiBar1 = 0.15865525393145705;
constexpr double kNm001 = 1.2433764712490347;
constexpr double kNm05 = 0.87636445645369235;
constexpr double kNm1 = 0.65567954241879847;
constexpr double kNm2 = 0.42136922928805447;
constexpr double kNm50 = 0.019992009580853567;
constexpr double kGm05_1 = 0.75787215614131211;
constexpr double kGm05_01 = 0.40556507920419639;
constexpr double kGm15_2 = 1.2106846146440272;
constexpr double kUpper2_1 = 0.73575888234288464; // 2/e

} // namespace

TEST_CASE("shape_param validates its argument") {
    CHECK_THROWS_AS(shape_param(0.0), domain_error);
    CHECK_THROWS_AS(shape_param(-2.5), domain_error);
    CHECK_THROWS_AS(shape_param(std::numeric_limits<double>::quiet_NaN()), domain_error);
    CHECK_THROWS_AS(shape_param(std::numeric_limits<double>::infinity()), domain_error);
    CHECK(shape_param(0.25).value() == 0.25);
}

TEST_CASE("erfcx anchors and tail behaviour") {
    CHECK(erfcx(0.0) == 1.0);
    // erfcx(z) ~ 1/(z sqrt(pi)) * (1 - 1/(2 z^2) + 3/(4 z^4)) for large z;
    // the next series term bounds the truncation
    for (double z : {20.0, 100.0}) {
        const double zz = z * z;
        const double asym =
            (1.0 - 0.5 / zz + 0.75 / (zz * zz)) / (z * kSqrtPi);
        const double trunc = 15.0 / (8.0 * zz * zz * zz);
        CHECK(rel_gap(erfcx(z), asym) < trunc + 1e-12);
    }
    // strictly decreasing and positive on a wide grid
    double prev = erfcx(0.0);
    for (double z : log_grid(1e-3, 500.0, 120)) {
        const double v = erfcx(z);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(normal_mills(std::numeric_limits<double>::quiet_NaN()),
                    domain_error);
}

TEST_CASE("normal survival pinned values") {
    CHECK(normal_survival(0.0).value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rel_gap(normal_survival(1.0).value, kPhiBar1) < 1e-13);
    // symmetric tail identity Phibar(-x) = 1 - Phibar(x)
    const double lo = normal_survival(-1.0).value;
    CHECK(rel_gap(lo, 1.0 - kPhiBar1) < 1e-12);
}

TEST_CASE("normal mills pinned values and shape") {
    CHECK(std::fabs(normal_mills(0.0).value - kSqrtHalfPi) < 1e-13);
    CHECK(rel_gap(normal_mills(0.01).value, kNm001) < 1e-12);
    CHECK(rel_gap(normal_mills(0.5).value, kNm05) < 1e-12);
    CHECK(rel_gap(normal_mills(1.0).value, kNm1) < 1e-12);
    CHECK(rel_gap(normal_mills(2.0).value, kNm2) < 1e-12);
    CHECK(rel_gap(normal_mills(50.0).value, kNm50) < 1e-12);
    // deep tail: x m(x) -> 1 - 1/x^2 + 3/x^4 - ...
    CHECK(rel_gap(normal_mills(1e3).value * 1e3, 0.9999990000029999850) < 1e-12);
    CHECK(rel_gap(normal_mills(1e4).value * 1e4, 0.99999999000000030) < 1e-12);

    double prev = std::numeric_limits<double>::infinity();
    for (double x : log_grid(1e-3, 40.0, 200)) {
        const double v = normal_mills(x).value;
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("envelope flagging widens the error bound") {
    const spec_value in = normal_mills(5.0);
    CHECK_FALSE(in.flagged);
    const spec_value out = normal_mills(45.0);
    CHECK(out.flagged);
    CHECK(std::isfinite(out.value));
    CHECK(out.abs_error_bound > in.abs_error_bound);
    CHECK(normal_survival(45.0).flagged);
    CHECK_FALSE(normal_survival(12.0).flagged);
}

TEST_CASE("incomplete gamma halves sum to the whole") {
    for (double a : {0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 7.5}) {
        const shape_param alpha(a);
        const double whole = std::tgamma(a);
        for (double x : {0.1, 1.0, 5.0, 30.0}) {
            const double up = upper_incomplete_gamma(alpha, x).value;
            const double lo = lower_incomplete_gamma(alpha, x).value;
            CHECK(rel_gap(up + lo, whole) < 1e-12);
        }
    }
}

TEST_CASE("upper incomplete gamma pinned and cross-checked") {
    CHECK(rel_gap(upper_incomplete_gamma(shape_param(2.0), 1.0).value, kUpper2_1) <
          1e-12);
    // half-integer identity against the error function kernel
    for (double x : {0.25, 1.0, 4.0}) {
        const double lhs = upper_incomplete_gamma(shape_param(0.5), x).value;
        const double rhs = kSqrtPi * erfcx(std::sqrt(x)) * std::exp(-x);
        CHECK(rel_gap(lhs, rhs) < 1e-12);
    }
    CHECK_THROWS_AS(upper_incomplete_gamma(shape_param(1.0), -1.0), domain_error);
}

TEST_CASE("gamma mills pinned values") {
    CHECK(rel_gap(gamma_mills(shape_param(0.5), 1.0).value, kGm05_1) < 1e-10);
    CHECK(rel_gap(gamma_mills(shape_param(0.5), 0.1).value, kGm05_01) < 1e-10);
    CHECK(rel_gap(gamma_mills(shape_param(1.5), 2.0).value, kGm15_2) < 1e-10);
    // alpha = 3 has the rational closed form (x^2 + 2x + 2) / x^2
    CHECK(rel_gap(gamma_mills(shape_param(3.0), 0.5).value, 13.0) < 1e-10);
    for (double x : {0.05, 0.7, 4.0, 60.0}) {
        const double closed = (x * x + 2.0 * x + 2.0) / (x * x);
        CHECK(rel_gap(gamma_mills(shape_param(3.0), x).value, closed) < 1e-10);
    }
}

TEST_CASE("gamma mills closed families") {
    // alpha = 1 is the exponential law: mills is identically one
    for (double x : log_grid(1e-3, 400.0, 40))
        CHECK(std::fabs(gamma_mills(shape_param(1.0), x).value - 1.0) < 1e-13);
    // alpha = 2: mills = 1 + 1/x
    for (double x : log_grid(1e-2, 400.0, 40))
        CHECK(rel_gap(gamma_mills(shape_param(2.0), x).value, 1.0 + 1.0 / x) < 1e-10);
    // alpha = 1/2 reduces to the error function kernel
    for (double x : {0.1, 1.0, 5.0}) {
        const double rhs = kSqrtPi * std::sqrt(x) * erfcx(std::sqrt(x));
        CHECK(rel_gap(gamma_mills(shape_param(0.5), x).value, rhs) < 1e-12);
    }
}

TEST_CASE("regularized gamma tail") {
    CHECK(regularized_gamma_q(shape_param(1.7), 0.0).value == 1.0);
    for (double x : {0.3, 1.0, 6.0})
        CHECK(rel_gap(regularized_gamma_q(shape_param(1.0), x).value, std::exp(-x)) <
              1e-12);
    double prev = 1.0;
    for (double x : log_grid(1e-2, 50.0, 60)) {
        const double q = regularized_gamma_q(shape_param(2.5), x).value;
        CHECK(q <= prev);
        CHECK(q >= 0.0);
        prev = q;
    }
}
