#ifndef MILLS_ERRORS_HPP
#define MILLS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mills {

// Bad input: non-finite argument, value outside the function's domain,
// a shape parameter that is not positive, and the like.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// A requested tolerance could not be met.  Carries the best value and the
// error estimate actually achieved so callers can decide what to do with it.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& msg, double best, double err_estimate)
        : std::runtime_error(msg), best_value(best), achieved_error(err_estimate) {}
    double best_value;
    double achieved_error;
};

// Evaluation hit a point where a denominator vanishes (or nearly does).
class singularity_error : public std::runtime_error {
public:
    singularity_error(const std::string& msg, double at)
        : std::runtime_error(msg), x(at) {}
    double x;
};

// A user-supplied model failed its internal consistency check.
class model_error : public std::runtime_error {
public:
    model_error(const std::string& msg, double worst)
        : std::runtime_error(msg), worst_x(worst) {}
    double worst_x;
};

} // namespace mills

#endif
