// Test-side oracles, independent of the evaluation paths they check.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/quadrature.hpp"

namespace oracles {

using qwalk::ComplexScalar;
using qwalk::kI;
using qwalk::kPi;

// Truncated power series sum_j (-1)^j (x/2)^{n+2j} / (j! (n+j)!), n >= 0.
inline double series_bessel_j(int n, double x) {
    double term = std::pow(0.5 * x, n);
    for (int j = 1; j <= n; ++j) term /= j;
    double sum = term;
    for (int j = 1; j < 200; ++j) {
        term *= -0.25 * x * x / (static_cast<double>(j) * (n + j));
        sum += term;
        if (std::abs(term) < 1e-18 * std::max(std::abs(sum), 1.0)) break;
    }
    return sum;
}

// sum_j (x^2/4)^j / (j!)^2, the modified Bessel value behind the e^{cos k} mean.
inline double series_modified_i0(double x) {
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < 200; ++j) {
        term *= 0.25 * x * x / (static_cast<double>(j) * j);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// Fixed-resolution trapezoid of the K_nu representation, ten times denser
// than anything the library starts from.
inline ComplexScalar highres_bessel_k(int nu, ComplexScalar z, int points = 200000,
                                      double t_max = 14.0) {
    ComplexScalar sum = 0.5 * (std::exp(-z) + std::exp(-z * std::cosh(t_max)) *
                                                  std::cosh(static_cast<double>(nu) * t_max));
    const double h = t_max / points;
    for (int j = 1; j < points; ++j) {
        const double t = j * h;
        sum += std::exp(-z * std::cosh(t)) * std::cosh(static_cast<double>(nu) * t);
    }
    return sum * h;
}

struct Mat2 {
    ComplexScalar a, b, c, d;  // row major
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    Mat2 scaled(ComplexScalar s) const { return {s * a, s * b, s * c, s * d}; }
    double norm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
};

// Momentum-space one-step operator: conditional shift times coin.
inline Mat2 step_operator(double k, double theta) {
    const ComplexScalar em = std::exp(-kI * k);
    const ComplexScalar ep = std::exp(kI * k);
    const double ct = std::cos(theta), st = std::sin(theta);
    return {em * ct, em * ComplexScalar{0.0, -st}, ep * ComplexScalar{0.0, -st}, ep * ct};
}

// Brute-force momentum-space walk step on a ring: plain O(N^2) transforms and
// a 2x2 multiply per mode.
inline qwalk::SpinorLattice momentum_step(const qwalk::SpinorLattice& state, double theta) {
    const int n = state.size();
    std::vector<ComplexScalar> fu(n), fd(n);
    for (int j = 0; j < n; ++j) {
        ComplexScalar au{0.0, 0.0}, ad{0.0, 0.0};
        for (int i = 0; i < n; ++i) {
            const ComplexScalar w = std::exp(-kI * (2.0 * kPi * j * i / n));
            au += state.up[static_cast<size_t>(i)] * w;
            ad += state.down[static_cast<size_t>(i)] * w;
        }
        const double k = 2.0 * kPi * (j <= n / 2 ? j : j - n) / n;
        const Mat2 u = step_operator(k, theta);
        fu[static_cast<size_t>(j)] = u.a * au + u.b * ad;
        fd[static_cast<size_t>(j)] = u.c * au + u.d * ad;
    }
    qwalk::SpinorLattice out = state;
    for (int i = 0; i < n; ++i) {
        ComplexScalar su{0.0, 0.0}, sd{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const ComplexScalar w = std::exp(kI * (2.0 * kPi * j * i / n));
            su += fu[static_cast<size_t>(j)] * w;
            sd += fd[static_cast<size_t>(j)] * w;
        }
        out.up[static_cast<size_t>(i)] = su / static_cast<double>(n);
        out.down[static_cast<size_t>(i)] = sd / static_cast<double>(n);
    }
    return out;
}

inline qwalk::SpinorLattice random_spinor_state(int half_width, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    auto s = qwalk::SpinorLattice::zeros(-half_width, half_width);
    for (auto& v : s.up) v = ComplexScalar{dist(rng), dist(rng)};
    for (auto& v : s.down) v = ComplexScalar{dist(rng), dist(rng)};
    s.normalize();
    return s;
}

inline double max_site_distance(const qwalk::SpinorLattice& a, const qwalk::SpinorLattice& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.up.size(); ++i) {
        worst = std::max(worst, std::abs(a.up[i] - b.up[i]));
        worst = std::max(worst, std::abs(a.down[i] - b.down[i]));
    }
    return worst;
}

}  // namespace oracles
