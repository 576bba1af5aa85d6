#pragma once

#include <cmath>
#include <complex>

#include "qwalk/quadrature.hpp"

namespace qwalk {

// J_n(z) for integer n and complex z, via the integral representation
// (2*pi)^{-1} * integral of exp(i*(n*k - z*sin k)) over [-pi, pi].
// The representation already satisfies J_{-n}(z) = (-1)^n J_n(z).
// Each order is evaluated independently; no recurrence ladders.
inline ComplexScalar bessel_j(int n, ComplexScalar z, const QuadratureSpec& spec = {}) {
    spec.validate();
    QuadratureSpec qs = spec;
    qs.initial_points =
        detail::oscillation_baseline(spec.initial_points, std::abs(n) + std::abs(z));
    // Integrand magnitude peaks at exp(|Im z|); keep the stop criterion
    // meaningful relative to that scale.
    qs.abs_tol = spec.abs_tol * std::max(1.0, std::exp(std::abs(z.imag())));
    const double nn = static_cast<double>(n);
    return periodic_quadrature(
        [&](double k) { return std::exp(kI * (nn * k - z * std::sin(k))); }, qs);
}

// K_nu(z) for nu in {0, 1} and Re(z) > 0, via the semi-infinite
// representation integral of exp(-z*cosh t) * cosh(nu*t) over t >= 0,
// truncated where the envelope drops below abs_tol * 1e-3.
inline ComplexScalar bessel_k(int nu, ComplexScalar z, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (nu != 0 && nu != 1) {
        throw DomainError("bessel_k: order must be 0 or 1");
    }
    if (!(z.real() > 0.0)) {
        throw DomainError("bessel_k: Re(z) must be positive");
    }

    // Truncation point: exp(-Re(z)*cosh t_max) = abs_tol * 1e-3, solved by
    // bisection. When the envelope is already below threshold at t = 0 the
    // whole tail is negligible and a unit window suffices.
    const double threshold = -std::log(spec.abs_tol * 1e-3);
    double t_max = 1.0;
    if (z.real() * std::cosh(1.0) < threshold) {
        double lo = 1.0, hi = 2.0;
        while (z.real() * std::cosh(hi) < threshold) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (z.real() * std::cosh(mid) < threshold ? lo : hi) = mid;
        }
        t_max = 0.5 * (lo + hi);
    }

    QuadratureSpec qs = spec;
    const double cycles = std::abs(z.imag()) * (std::cosh(t_max) - 1.0) / (2.0 * kPi);
    qs.initial_points = detail::oscillation_baseline(spec.initial_points, cycles);
    const double dnu = static_cast<double>(nu);
    return trapezoid_quadrature(
        [&](double t) { return std::exp(-z * std::cosh(t)) * std::cosh(dnu * t); }, 0.0, t_max,
        qs);
}

}  // namespace qwalk
