#pragma once

#include <mills/distribution.hpp>

#include <map>
#include <string>

// Custom distribution spec files: plain key = value lines, '#' comments.
//
//   name  = tilted-weibull        (optional)
//   omega = 1/x - 2*x             (required)
//
// The omega expression is a sum of a 1/x term and polynomial terms
// c, c*x, c*x^k. From it the density follows as exp of the antiderivative
// (unnormalized; omega and the Mills ratio do not see the normalization),
// and omega' is differentiated term by term.

namespace mills::cli {

struct omega_expression {
    double inv_coeff = 0.0;          // coefficient of 1/x
    std::map<int, double> poly;      // power -> coefficient, powers 0..6
    std::string text;                // expression as parsed
};

omega_expression parse_omega_expression(const std::string& expr);

struct custom_spec {
    std::string name = "custom";
    omega_expression omega;
};

custom_spec load_custom_spec(const std::string& path);

// Builds the model via make_custom, which re-checks omega against the
// density by differencing log f.
distribution_model make_custom_from_spec(const custom_spec& spec, support_hint hint);

} // namespace mills::cli
