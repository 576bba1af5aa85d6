#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

using ComplexScalar = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr ComplexScalar kI{0.0, 1.0};

inline bool is_finite(ComplexScalar z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Controls the trapezoid refinement loop shared by all integral evaluators.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    int max_doublings = 20;
    int initial_points = 64;

    void validate() const {
        if (!(abs_tol > 0.0)) {
            throw DomainError("QuadratureSpec: abs_tol must be positive");
        }
        if (initial_points < 8 || (initial_points & (initial_points - 1)) != 0) {
            throw DomainError("QuadratureSpec: initial_points must be >= 8 and a power of two");
        }
        if (max_doublings < 0) {
            throw DomainError("QuadratureSpec: max_doublings must be >= 0");
        }
    }
};

namespace detail {

inline int next_pow2_at_least(double n) {
    int m = 8;
    while (static_cast<double>(m) < n) m *= 2;
    return m;
}

// Baseline node count near the Nyquist requirement for an integrand whose
// phase winds roughly `oscillation` times over the interval, rounded up so
// the QuadratureSpec power-of-two invariant is preserved.
inline int oscillation_baseline(int initial_points, double oscillation) {
    const double blocks = std::ceil((oscillation + 16.0) / 16.0);
    return next_pow2_at_least(static_cast<double>(initial_points) * blocks);
}

}  // namespace detail

// Mean value (2*pi)^{-1} * integral of f over [-pi, pi) for a smooth
// 2*pi-periodic integrand. Uniform trapezoid with interval doubling; node
// placement is deterministic for a given point count.
template <class F>
ComplexScalar periodic_quadrature(F&& f, const QuadratureSpec& spec = {}) {
    spec.validate();
    int m = spec.initial_points;
    ComplexScalar sum{0.0, 0.0};
    for (int j = 0; j < m; ++j) {
        sum += f(-kPi + 2.0 * kPi * j / m);
    }
    ComplexScalar prev = sum / static_cast<double>(m);
    for (int d = 0; d < spec.max_doublings; ++d) {
        ComplexScalar mid{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            mid += f(-kPi + 2.0 * kPi * (j + 0.5) / m);
        }
        const ComplexScalar next = 0.5 * (prev + mid / static_cast<double>(m));
        m *= 2;
        if (std::abs(next - prev) < spec.abs_tol) {
            if (!is_finite(next)) {
                throw ConvergenceFailure("periodic_quadrature: non-finite result");
            }
            return next;
        }
        prev = next;
    }
    throw ConvergenceFailure("periodic_quadrature: tolerance " + std::to_string(spec.abs_tol) +
                             " not reached within " + std::to_string(spec.max_doublings) +
                             " doublings");
}

// Plain integral of f over [a, b], trapezoid with interval doubling.
template <class F>
ComplexScalar trapezoid_quadrature(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    int m = spec.initial_points;
    double h = (b - a) / m;
    ComplexScalar sum = 0.5 * (f(a) + f(b));
    for (int j = 1; j < m; ++j) {
        sum += f(a + j * h);
    }
    ComplexScalar prev = sum * h;
    for (int d = 0; d < spec.max_doublings; ++d) {
        ComplexScalar mid{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            mid += f(a + (j + 0.5) * h);
        }
        const ComplexScalar next = 0.5 * (prev + h * mid);
        m *= 2;
        h *= 0.5;
        if (std::abs(next - prev) < spec.abs_tol) {
            if (!is_finite(next)) {
                throw ConvergenceFailure("trapezoid_quadrature: non-finite result");
            }
            return next;
        }
        prev = next;
    }
    throw ConvergenceFailure("trapezoid_quadrature: tolerance " + std::to_string(spec.abs_tol) +
                             " not reached within " + std::to_string(spec.max_doublings) +
                             " doublings");
}

}  // namespace qwalk
