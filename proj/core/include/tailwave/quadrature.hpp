#pragma once

#include <functional>

namespace tailwave {

// Adaptive Simpson quadrature with absolute tolerance. Handles a > b by
// orientation; max_depth bounds the recursion.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 40);

}  // namespace tailwave
