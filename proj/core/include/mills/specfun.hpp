#ifndef MILLS_SPECFUN_HPP
#define MILLS_SPECFUN_HPP

#include <mills/errors.hpp>

//============================================================================
// Scalar special-function kernels.
//
// Everything here is pure and reentrant: no global state, no caches.  Each
// kernel returns a spec_value whose abs_error_bound is a defensible upper
// bound on the absolute error inside the validated envelope stated at the
// kernel.  Outside that envelope the call still succeeds, but the bound is
// widened and the result is flagged.
//============================================================================

namespace mills {

// Positive shape parameter.  Construction rejects alpha <= 0 and non-finite
// values, so downstream code can assume validity.
class shape_param {
public:
    explicit shape_param(double alpha);
    double value() const { return alpha_; }
private:
    double alpha_;
};

struct spec_value {
    double value = 0.0;
    double abs_error_bound = 0.0;
    bool flagged = false;    // true when outside the validated envelope
};

// Scaled complementary error function, exp(z^2) erfc(z).  Finite for all
// finite z >= 0 even where erfc itself underflows.
double erfcx(double z);

// Standard normal upper tail probability.  Envelope: |x| <= 40, relative
// error <= 1e-13 where the result is representable.  Computed through
// erfcx, never as 1 - Phi(x).
spec_value normal_survival(double x);

// Mills ratio of the standard normal, survival over density.  Strictly
// decreasing, value sqrt(pi/2) at x = 0.  Envelope: x in [0, 40],
// relative error <= 1e-12.
spec_value normal_mills(double x);

// Upper incomplete gamma Gamma(alpha, x), not regularized.
// Envelope: alpha in (0, 50], x in [0, 500], relative error <= 1e-12.
spec_value upper_incomplete_gamma(const shape_param& alpha, double x);

// Lower incomplete gamma, the complement; upper + lower = Gamma(alpha).
spec_value lower_incomplete_gamma(const shape_param& alpha, double x);

// Mills ratio of the gamma law with unit rate:
//   Gamma(alpha, x) * x^(1-alpha) * e^x,  x > 0.
// Identically 1 at alpha = 1.  Envelope: alpha in (0, 50], x in (0, 500],
// relative error <= 1e-10.  Intermediates that would exceed 1e300 are
// handled in log space.
spec_value gamma_mills(const shape_param& alpha, double x);

// Regularized upper tail Q(alpha, x) = Gamma(alpha, x) / Gamma(alpha).
spec_value regularized_gamma_q(const shape_param& alpha, double x);

} // namespace mills

#endif
