#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cmclab/errors.hpp"

namespace cmclab {

// Adaptive Dormand-Prince 5(4) integrator on fixed-size states.  Steps
// are clamped so requested output stations are hit exactly, and the step
// sequence is a deterministic function of the inputs.

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N, typename F>
class Dopri5 {
  public:
    Dopri5(F rhs, double tol) : rhs_(rhs), atol_(tol), rtol_(tol) {}

    // Advance y from t to t_end (either direction), writing into y.
    void integrate(double t, OdeState<N>& y, double t_end) {
        const double dir = (t_end >= t) ? 1.0 : -1.0;
        double h = dir * initial_step(t, y, std::abs(t_end - t));
        std::size_t steps = 0;
        while (dir * (t_end - t) > 1e-14 * (1.0 + std::abs(t))) {
            if (dir * (t + h) > dir * t_end) h = t_end - t;
            OdeState<N> ynew;
            const double err = attempt(t, y, h, ynew);
            if (err <= 1.0) {
                t += h;
                y = ynew;
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            if (++steps > max_steps_)
                throw numerical_error("Dopri5: step limit exceeded (stiff or bad tolerance)");
        }
    }

    // Integrate through an increasing (or decreasing) list of stations,
    // invoking sink(t, y) at each.  Stations must be monotone away from t0.
    template <typename Sink>
    void integrate_stations(double t0, OdeState<N> y, const std::vector<double>& stations,
                            Sink&& sink) {
        double t = t0;
        for (double ts : stations) {
            integrate(t, y, ts);
            t = ts;
            sink(ts, y);
        }
    }

  private:
    double initial_step(double t, const OdeState<N>& y, double span) const {
        OdeState<N> f = rhs_(t, y);
        double ny = 0, nf = 0;
        for (std::size_t i = 0; i < N; ++i) {
            ny += y[i] * y[i];
            nf += f[i] * f[i];
        }
        double h = 0.01 * std::sqrt((ny + 1e-12) / (nf + 1e-12));
        return std::min(h, span);
    }

    // One trial step; returns the scaled error estimate.
    double attempt(double t, const OdeState<N>& y, double h, OdeState<N>& out) const {
        constexpr double a21 = 1.0 / 5;
        constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                         a54 = -212.0 / 729;
        constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                         a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                         b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                         e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                         e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

        const OdeState<N> k1 = rhs_(t, y);
        OdeState<N> tmp;
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        const OdeState<N> k2 = rhs_(t + h / 5, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const OdeState<N> k3 = rhs_(t + 3 * h / 10, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const OdeState<N> k4 = rhs_(t + 4 * h / 5, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const OdeState<N> k5 = rhs_(t + 8 * h / 9, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                 a65 * k5[i]);
        const OdeState<N> k6 = rhs_(t + h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const OdeState<N> k7 = rhs_(t + h, out);

        double err = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(out[i]));
            err += (e / sc) * (e / sc);
        }
        return std::sqrt(err / N);
    }

    F rhs_;
    double atol_, rtol_;
    std::size_t max_steps_ = 10'000'000;
};

template <std::size_t N, typename F>
Dopri5<N, F> make_dopri5(F rhs, double tol) {
    return Dopri5<N, F>(rhs, tol);
}

// Locate a root of g(t) inside [lo, hi] by bisection, where g is an
// arbitrary functional of the integrated solution (callers re-integrate
// from a cached state).  g(lo) and g(hi) must have opposite signs.
template <typename G>
double bisect_root(G&& g, double lo, double hi, double tol_t) {
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0) return lo;
    if (ghi == 0) return hi;
    if ((glo > 0) == (ghi > 0))
        throw numerical_error("bisect_root: no sign change in bracket");
    for (int it = 0; it < 200 && (hi - lo) > tol_t; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0) return mid;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace cmclab
