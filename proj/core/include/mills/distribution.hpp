#ifndef MILLS_DISTRIBUTION_HPP
#define MILLS_DISTRIBUTION_HPP

#include <mills/specfun.hpp>

#include <functional>
#include <string>
#include <vector>

namespace mills {

// A positive law on (0, inf) described by the handful of scalar functions
// the probes and certificates need.  omega is the logarithmic derivative of
// the density, f'/f; everything downstream is invariant under rescaling the
// density, so models need not be normalized.
struct distribution_model {
    std::string id;
    std::function<double(double)> density;
    std::function<double(double)> survival;
    std::function<double(double)> omega;
    std::function<double(double)> omega_prime;
    std::function<double(double)> mills;
    std::vector<double> omega_zeros;  // roots of omega in (0, inf), ascending
};

// Range on which a user-supplied model is probed for consistency and
// searched for omega zeros.
struct support_hint {
    double lo = 1e-3;
    double hi = 1e3;
};

// Gamma law with unit rate and shape alpha.  omega(x) = (alpha-1)/x - 1,
// which has the single zero alpha-1 when alpha > 1.
distribution_model make_gamma(const shape_param& alpha);

// Standard normal restricted to the half line x > 0 (density not
// renormalized; Mills ratio and omega are unaffected by the restriction).
distribution_model make_normal_halfline();

// Build a model from user-supplied omega, omega' and density.  The density
// is cross-checked against omega by differentiating the log density on the
// hint range; a mismatch beyond 1e-4 raises model_error carrying the worst
// offending abscissa.  survival and mills are evaluated by quadrature on
// demand and cached per abscissa (thread-safe).
distribution_model make_custom(std::function<double(double)> omega_fn,
                               std::function<double(double)> omega_prime_fn,
                               std::function<double(double)> density_fn,
                               const support_hint& hint = {});

} // namespace mills

#endif
