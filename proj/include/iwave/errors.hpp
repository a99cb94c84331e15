#ifndef IWAVE_ERRORS_HPP
#define IWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iwave {

/** Invalid input: bad configuration values, violated preconditions. */
struct config_error : std::invalid_argument {
    explicit config_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/** Numerical fault: non-convergence, consistency failure.  Carries the module
 * that raised it and the offending residual. */
struct numerical_error : std::runtime_error {
    std::string module;
    double residual;
    numerical_error(const std::string& module_, const std::string& msg, double residual_)
        : std::runtime_error(module_ + ": " + msg + " (residual " + std::to_string(residual_) + ")"),
          module(module_),
          residual(residual_) {}
};

} // namespace iwave

#endif
