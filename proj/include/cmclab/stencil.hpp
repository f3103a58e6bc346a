#pragma once

#include <cstddef>

namespace cmclab {

// Finite-difference stencils on uniform grids.  The value type only
// needs +, - and scalar multiplication, so these apply to scalars,
// ImVector and Quaternion grids alike.  f is an index-callable giving
// the sample at signed offset from the evaluation point.

template <typename F>
auto fd_d1_c2(F&& f, double h) {  // central, O(h^2)
    return (f(1) - f(-1)) * (1.0 / (2.0 * h));
}

template <typename F>
auto fd_d1_c4(F&& f, double h) {  // central, O(h^4)
    return (f(-2) - f(2) + (f(1) - f(-1)) * 8.0) * (1.0 / (12.0 * h));
}

template <typename F>
auto fd_d1_c6(F&& f, double h) {  // central, O(h^6)
    return ((f(3) - f(-3)) + (f(-2) - f(2)) * 9.0 + (f(1) - f(-1)) * 45.0) *
           (1.0 / (60.0 * h));
}

template <typename F>
auto fd_d1_onesided2(F&& f, double h) {  // forward, O(h^2)
    return (f(0) * -3.0 + f(1) * 4.0 - f(2)) * (1.0 / (2.0 * h));
}

template <typename F>
auto fd_d2_c2(F&& f, double h) {  // central second derivative, O(h^2)
    return (f(1) + f(-1) - f(0) * 2.0) * (1.0 / (h * h));
}

template <typename F>
auto fd_d2_c4(F&& f, double h) {  // central second derivative, O(h^4)
    return ((f(1) + f(-1)) * 16.0 - (f(2) + f(-2)) - f(0) * 30.0) * (1.0 / (12.0 * h * h));
}

}  // namespace cmclab
