#pragma once

#include <functional>

namespace genprob {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    unsigned evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b], bisecting the interval with the
/// largest error until the total estimate is below max(abs_tol, rel_tol*|I|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    double rel_tol, unsigned max_intervals = 2000);

}  // namespace genprob
