#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "qwalk/bessel.hpp"
#include "qwalk/fft.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {

struct Spinor {
    ComplexScalar up;
    ComplexScalar down;
};

// ---------------------------------------------------------------------------
// Continuum packet: positive-energy solution localized on the scale `a`.
// ---------------------------------------------------------------------------

struct DiracPacketParams {
    double mass;
    double a;
    DiracPacketParams(double mass_, double a_) : mass(mass_), a(a_) {
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw DomainError("DiracPacketParams: mass must be positive");
        }
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw DomainError("DiracPacketParams: a must be positive");
        }
    }
};

// sqrt(pi/2m) [K_1(2ma) + K_0(2ma)]^{-1/2}; with this factor the packet
// density integrates to one.
inline double dirac_normalization(const DiracPacketParams& p, const QuadratureSpec& spec = {}) {
    QuadratureSpec qs = spec;
    qs.abs_tol = spec.abs_tol * std::min(1.0, std::exp(-2.0 * p.mass * p.a));
    const double k0 = bessel_k(0, ComplexScalar{2.0 * p.mass * p.a, 0.0}, qs).real();
    const double k1 = bessel_k(1, ComplexScalar{2.0 * p.mass * p.a, 0.0}, qs).real();
    return std::sqrt(kPi / (2.0 * p.mass)) / std::sqrt(k1 + k0);
}

// Closed form of the packet,
//   psi_{R/L} = m N / (pi sqrt 2) * [ K_1(m s)/s * (a + i(t +- x)) + K_0(m s) ],
// with s the principal square root of x^2 + (a + i t)^2. For a > 0, t >= 0
// the argument has nonnegative imaginary part, so Re(s) > 0 and the K
// integrals are in domain; this is asserted.
inline Spinor dirac_packet(double x, double t, const DiracPacketParams& p,
                           const QuadratureSpec& spec = {}) {
    const ComplexScalar b{p.a, t};
    const ComplexScalar s = std::sqrt(x * x + b * b);
    const ComplexScalar ms = p.mass * s;
    if (!(ms.real() > 0.0)) {
        throw DomainError("dirac_packet: Re(m s) <= 0; branch assumption violated");
    }
    QuadratureSpec qs = spec;
    qs.abs_tol = spec.abs_tol * std::min(1.0, std::exp(-ms.real()));
    const ComplexScalar k0 = bessel_k(0, ms, qs);
    const ComplexScalar k1 = bessel_k(1, ms, qs);
    const double pref = p.mass * dirac_normalization(p, spec) / (kPi * std::sqrt(2.0));
    return Spinor{pref * (k1 / s * (b + kI * x) + k0),
                  pref * (k1 / s * (b - kI * x) + k0)};
}

// Independent route: direct momentum quadrature of
//   N/(2 pi) * (I + (sigma_z p + sigma_x m)/omega(p)) (1,1)^T/sqrt2 * e^{i p x - (a+it) omega},
// truncated where the e^{-a omega} envelope falls below 1e-14.
inline Spinor dirac_packet_oracle(double x, double t, const DiracPacketParams& p,
                                  const QuadratureSpec& spec = {}) {
    const double omega_cut = -std::log(1e-14) / p.a;
    double p_cut = 0.0;
    if (omega_cut > p.mass) {
        p_cut = std::sqrt(omega_cut * omega_cut - p.mass * p.mass);
    }
    p_cut = std::max(p_cut, 4.0 * p.mass + 8.0 / p.a);

    QuadratureSpec qs = spec;
    qs.initial_points = detail::oscillation_baseline(
        spec.initial_points, (std::abs(x) + std::abs(t)) * p_cut / (2.0 * kPi));
    qs.abs_tol = spec.abs_tol * std::min(1.0, 2.0 * std::exp(-p.a * p.mass));

    const ComplexScalar b{p.a, t};
    auto component = [&](double branch_sign) {
        return trapezoid_quadrature(
            [&](double q) {
                const double w = std::hypot(q, p.mass);
                return (1.0 + (p.mass + branch_sign * q) / w) *
                       std::exp(kI * q * x - b * w);
            },
            -p_cut, p_cut, qs);
    };
    const double pref = dirac_normalization(p, spec) / (2.0 * kPi * std::sqrt(2.0));
    return Spinor{pref * component(+1.0), pref * component(-1.0)};
}

// Closed-form packet sampled on a uniform grid, as a Dirac-on-grid state.
inline SpinorLattice dirac_packet_profile(const DiracPacketParams& p, double t,
                                          double half_width, double spacing,
                                          const QuadratureSpec& spec = {}) {
    if (!(spacing > 0.0)) throw DomainError("dirac_packet_profile: spacing must be positive");
    const int w = static_cast<int>(std::ceil(half_width / spacing));
    SpinorLattice s = SpinorLattice::zeros(-w, w, spacing);
    for (int i = 0; i < s.size(); ++i) {
        const Spinor amp = dirac_packet(s.position(i), t, p, spec);
        s.up[static_cast<size_t>(i)] = amp.up;
        s.down[static_cast<size_t>(i)] = amp.down;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Discrete-time walk packet.
// ---------------------------------------------------------------------------

namespace detail {

// Positive-band spinor (e^{i omega} - U(k)) (1,1)^T, written out.
inline ComplexScalar dtqw_band_up(double k, double theta, double w) {
    return std::exp(kI * w) - std::exp(ComplexScalar{0.0, -theta - k});
}
inline ComplexScalar dtqw_band_down(double k, double theta, double w) {
    return std::exp(kI * w) - std::exp(ComplexScalar{0.0, -theta + k});
}

// I_n with the band bottom shifted out of the exponent:
//   Ihat_n(z) = (2 pi)^{-1} integral e^{i k n - i (omega(k) - theta) z} dk
//             = e^{i theta z} I_n(z).
// Working with Ihat keeps every integrand O(1) for Im(z) <= 0, which is what
// the packet and normalization assemblies use internally; the physical
// prefactors are restored analytically.
inline ComplexScalar In_shifted(int n, ComplexScalar z, double theta,
                                const QuadratureSpec& spec) {
    QuadratureSpec qs = spec;
    qs.initial_points =
        oscillation_baseline(spec.initial_points, std::abs(n) + std::abs(z));
    if (z.imag() > 0.0) {
        qs.abs_tol = spec.abs_tol * std::exp((kPi - 2.0 * theta) * z.imag());
    }
    const double ct = std::cos(theta);
    const double nn = static_cast<double>(n);
    return periodic_quadrature(
        [&](double k) {
            const double w = std::acos(ct * std::cos(k));
            return std::exp(kI * (nn * k - (w - theta) * z));
        },
        qs);
}

// e^{2 alpha theta} times the normalization bracket; real positive for valid
// parameters. Terms are evaluated a few digits below the requested tolerance
// so the reality check is not dominated by quadrature noise.
inline double dtqw_scaled_bracket(double theta, double alpha, const QuadratureSpec& spec) {
    QuadratureSpec qs = spec;
    qs.abs_tol = spec.abs_tol * 1e-3;
    const ComplexScalar z0{0.0, -2.0 * alpha};
    const ComplexScalar zm{-1.0, -2.0 * alpha};
    const ComplexScalar zp{1.0, -2.0 * alpha};
    const ComplexScalar bracket = 2.0 * In_shifted(0, z0, theta, qs) -
                                  std::exp(2.0 * kI * theta) * In_shifted(1, zm, theta, qs) -
                                  std::exp(-2.0 * kI * theta) * In_shifted(1, zp, theta, qs);
    if (!(std::abs(bracket.imag()) <= 1e-10 * std::max(std::abs(bracket.real()), 1e-300))) {
        throw NormalizationError("dtqw normalization bracket is not real");
    }
    if (!(bracket.real() > 0.0)) {
        throw NormalizationError("dtqw normalization bracket is not positive");
    }
    return bracket.real();
}

inline ComplexScalar unit_imag_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return ComplexScalar{1.0, 0.0};
        case 1: return ComplexScalar{0.0, 1.0};
        case 2: return ComplexScalar{-1.0, 0.0};
        default: return ComplexScalar{0.0, -1.0};
    }
}

}  // namespace detail

struct DTQWPacketParams {
    double theta;
    double alpha;
    DTQWPacketParams(double theta_, double alpha_) : theta(theta_), alpha(alpha_) {
        if (!(theta > 0.0 && theta < 0.5 * kPi)) {
            throw DomainError("DTQWPacketParams: theta must lie in (0, pi/2)");
        }
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw DomainError("DTQWPacketParams: alpha must be positive");
        }
        detail::dtqw_scaled_bracket(theta, alpha, QuadratureSpec{});
    }
};

// Oscillatory kernel I_n(z) = (2 pi)^{-1} integral e^{i k n - i omega(k) z} dk
// with omega(k) = arccos(cos theta cos k).
inline ComplexScalar In_function(int n, ComplexScalar z, double theta,
                                 const QuadratureSpec& spec = {}) {
    if (!(theta > 0.0 && theta < 0.5 * kPi)) {
        throw DomainError("In_function: theta must lie in (0, pi/2)");
    }
    QuadratureSpec qs = spec;
    qs.initial_points =
        detail::oscillation_baseline(spec.initial_points, std::abs(n) + std::abs(z));
    // |integrand| peaks at exp(omega * Im z) over omega in [theta, pi - theta];
    // keep the stop criterion proportional to that scale.
    const double y = z.imag();
    qs.abs_tol = spec.abs_tol * std::exp(y <= 0.0 ? theta * y : (kPi - theta) * y);
    const double ct = std::cos(theta);
    const double nn = static_cast<double>(n);
    return periodic_quadrature(
        [&](double k) {
            const double w = std::acos(ct * std::cos(k));
            return std::exp(kI * (nn * k - w * z));
        },
        qs);
}

// N = [2 I_0(-2 i alpha) - e^{i theta} I_1(-1 - 2 i alpha) - e^{-i theta} I_1(1 - 2 i alpha)]^{-1/2}.
inline double dtqw_normalization(const DTQWPacketParams& p, const QuadratureSpec& spec = {}) {
    const double scaled = detail::dtqw_scaled_bracket(p.theta, p.alpha, spec);
    return std::exp(p.alpha * p.theta) / std::sqrt(scaled);
}

// Closed-form packet
//   psi_up   = N/sqrt2 [ I_n(tau-1-i alpha) - e^{-i theta} I_{n-1}(tau-i alpha) ]
//   psi_down = N/sqrt2 [ I_n(tau-1-i alpha) - e^{-i theta} I_{n+1}(tau-i alpha) ],
// assembled from the shifted kernels so no intermediate under/overflows.
inline Spinor dtqw_packet(int n, int tau, const DTQWPacketParams& p,
                          const QuadratureSpec& spec = {}) {
    if (tau < 0) throw DomainError("dtqw_packet: tau must be >= 0");
    const double nhat = 1.0 / std::sqrt(detail::dtqw_scaled_bracket(p.theta, p.alpha, spec));
    const ComplexScalar za{static_cast<double>(tau) - 1.0, -p.alpha};
    const ComplexScalar zb{static_cast<double>(tau), -p.alpha};
    const ComplexScalar common =
        std::exp(kI * p.theta) * detail::In_shifted(n, za, p.theta, spec);
    const ComplexScalar eth = std::exp(-kI * p.theta);
    const ComplexScalar phase =
        nhat / std::sqrt(2.0) * std::exp(-kI * (p.theta * static_cast<double>(tau)));
    return Spinor{phase * (common - eth * detail::In_shifted(n - 1, zb, p.theta, spec)),
                  phase * (common - eth * detail::In_shifted(n + 1, zb, p.theta, spec))};
}

// Whole-profile fast path: the band spinor and exponential are sampled on a
// dense k grid and all site amplitudes come from one FFT per component.
// Pointwise identical to dtqw_packet within the quadrature tolerance.
inline SpinorLattice dtqw_packet_profile(const DTQWPacketParams& p, int tau, int n_min,
                                         int n_max, const QuadratureSpec& spec = {}) {
    if (tau < 0) throw DomainError("dtqw_packet_profile: tau must be >= 0");
    const int nsites = n_max - n_min + 1;
    const ComplexScalar z{static_cast<double>(tau), -p.alpha};
    const double bandwidth = std::cos(p.theta) * std::abs(z);
    const int m = detail::next_pow2_at_least(
        std::max(4.0 * nsites, 8.0 * (bandwidth + 64.0)));

    const double nhat = 1.0 / std::sqrt(detail::dtqw_scaled_bracket(p.theta, p.alpha, spec));
    const ComplexScalar pref =
        nhat / std::sqrt(2.0) * std::exp(-kI * (p.theta * static_cast<double>(tau)));
    const double ct = std::cos(p.theta);
    const ComplexScalar ez{p.alpha, static_cast<double>(tau)};  // alpha + i tau

    auto up_integrand = [&](double k) {
        const double w = std::acos(ct * std::cos(k));
        return detail::dtqw_band_up(k, p.theta, w) * std::exp(-ez * (w - p.theta));
    };
    auto down_integrand = [&](double k) {
        const double w = std::acos(ct * std::cos(k));
        return detail::dtqw_band_down(k, p.theta, w) * std::exp(-ez * (w - p.theta));
    };
    const auto cu = detail::fourier_coefficients(up_integrand, n_min, n_max, m);
    const auto cd = detail::fourier_coefficients(down_integrand, n_min, n_max, m);

    SpinorLattice out = SpinorLattice::zeros(n_min, n_max);
    for (int i = 0; i < nsites; ++i) {
        out.up[static_cast<size_t>(i)] = pref * cu[static_cast<size_t>(i)];
        out.down[static_cast<size_t>(i)] = pref * cd[static_cast<size_t>(i)];
    }
    return out;
}

// Slow independent route: per-site quadrature with the projector applied as
// an explicit 2x2 matrix product under the integral.
inline Spinor dtqw_packet_oracle(int n, int tau, const DTQWPacketParams& p,
                                 const QuadratureSpec& spec = {}) {
    if (tau < 0) throw DomainError("dtqw_packet_oracle: tau must be >= 0");
    const ComplexScalar z{static_cast<double>(tau), -p.alpha};
    QuadratureSpec qs = spec;
    qs.initial_points = detail::oscillation_baseline(
        spec.initial_points, std::abs(n) + 1.0 + std::abs(z));
    qs.abs_tol = spec.abs_tol * std::exp(-p.theta * p.alpha);

    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double nn = static_cast<double>(n);
    const ComplexScalar exponent_scale{p.alpha, static_cast<double>(tau)};  // alpha + i tau

    auto integrand = [&](double k, int component) {
        // Momentum-space step operator, conditional shift times coin.
        const ComplexScalar f = std::exp(-kI * k);  // shift phase for the up row
        const ComplexScalar u00 = f * ct, u01 = f * ComplexScalar{0.0, -st};
        const ComplexScalar u10 = std::conj(f) * ComplexScalar{0.0, -st},
                            u11 = std::conj(f) * ct;
        const double w = std::acos(ct * std::cos(k));
        const ComplexScalar ew = std::exp(kI * w);
        const ComplexScalar proj_up = (ew - u00 - u01) * inv_sqrt2;
        const ComplexScalar proj_down = (ew - u10 - u11) * inv_sqrt2;
        const ComplexScalar weight = std::exp(kI * nn * k - exponent_scale * w);
        return (component == 0 ? proj_up : proj_down) * weight;
    };
    const double norm = dtqw_normalization(p, spec);
    return Spinor{norm * periodic_quadrature([&](double k) { return integrand(k, 0); }, qs),
                  norm * periodic_quadrature([&](double k) { return integrand(k, 1); }, qs)};
}

namespace detail {

// Small-cos-theta approximation I_n(z) ~ e^{i pi (n - z)/2} J_n(z cos theta).
inline ComplexScalar In_bessel_approx(int n, ComplexScalar z, double theta,
                                      const QuadratureSpec& spec) {
    const ComplexScalar phase =
        std::exp(kI * (0.5 * kPi) * (static_cast<double>(n) - z));
    return phase * bessel_j(n, z * std::cos(theta), spec);
}

inline double dtqw_bessel_bracket(double theta, double alpha, const QuadratureSpec& spec) {
    QuadratureSpec qs = spec;
    qs.abs_tol = spec.abs_tol * 1e-3;
    const ComplexScalar z0{0.0, -2.0 * alpha};
    const ComplexScalar zm{-1.0, -2.0 * alpha};
    const ComplexScalar zp{1.0, -2.0 * alpha};
    const ComplexScalar bracket =
        2.0 * In_bessel_approx(0, z0, theta, qs) -
        std::exp(kI * theta) * In_bessel_approx(1, zm, theta, qs) -
        std::exp(-kI * theta) * In_bessel_approx(1, zp, theta, qs);
    if (!(std::abs(bracket.imag()) <= 1e-8 * std::max(std::abs(bracket.real()), 1e-300))) {
        throw NormalizationError("dtqw bessel bracket is not real");
    }
    if (!(bracket.real() > 0.0)) {
        throw NormalizationError("dtqw bessel bracket is not positive");
    }
    return bracket.real();
}

}  // namespace detail

// The packet with every I_n replaced by the Bessel approximation, including
// inside the normalization, so the approximate packet is itself normalized.
inline Spinor dtqw_packet_bessel(int n, int tau, const DTQWPacketParams& p,
                                 const QuadratureSpec& spec = {}) {
    if (tau < 0) throw DomainError("dtqw_packet_bessel: tau must be >= 0");
    const double nb = 1.0 / std::sqrt(detail::dtqw_bessel_bracket(p.theta, p.alpha, spec));
    const ComplexScalar za{static_cast<double>(tau) - 1.0, -p.alpha};
    const ComplexScalar zb{static_cast<double>(tau), -p.alpha};
    const ComplexScalar common = detail::In_bessel_approx(n, za, p.theta, spec);
    const ComplexScalar eth = std::exp(-kI * p.theta);
    const double pref = nb / std::sqrt(2.0);
    return Spinor{
        pref * (common - eth * detail::In_bessel_approx(n - 1, zb, p.theta, spec)),
        pref * (common - eth * detail::In_bessel_approx(n + 1, zb, p.theta, spec))};
}

inline SpinorLattice dtqw_packet_bessel_profile(const DTQWPacketParams& p, int tau, int n_min,
                                                int n_max, const QuadratureSpec& spec = {}) {
    SpinorLattice out = SpinorLattice::zeros(n_min, n_max);
    for (int i = 0; i < out.size(); ++i) {
        const Spinor amp = dtqw_packet_bessel(out.site(i), tau, p, spec);
        out.up[static_cast<size_t>(i)] = amp.up;
        out.down[static_cast<size_t>(i)] = amp.down;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Continuous-time walk packet.
// ---------------------------------------------------------------------------

struct CTQWPacketParams {
    double gamma;
    double alpha;
    CTQWPacketParams(double gamma_, double alpha_) : gamma(gamma_), alpha(alpha_) {
        if (!(gamma > 0.0) || !std::isfinite(gamma)) {
            throw DomainError("CTQWPacketParams: gamma must be positive");
        }
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw DomainError("CTQWPacketParams: alpha must be positive");
        }
        const ComplexScalar j0 = bessel_j(0, ComplexScalar{0.0, -4.0 * gamma * alpha});
        if (!(j0.real() > 0.0) ||
            !(std::abs(j0.imag()) <= 1e-10 * std::max(j0.real(), 1e-300))) {
            throw NormalizationError("CTQWPacketParams: J_0(-4 i gamma alpha) must be real positive");
        }
    }
};

namespace detail {

inline double ctqw_normalization(const CTQWPacketParams& p, const QuadratureSpec& spec) {
    const ComplexScalar j0 =
        bessel_j(0, ComplexScalar{0.0, -4.0 * p.gamma * p.alpha}, spec);
    return std::exp(2.0 * p.gamma * p.alpha) / std::sqrt(j0.real());
}

}  // namespace detail

// psi(n, t) = N e^{-2 gamma (alpha + i t)} i^n J_n(2 gamma (t - i alpha)),
// N = e^{2 gamma alpha} [J_0(-4 i gamma alpha)]^{-1/2}.
inline ComplexScalar ctqw_packet(int n, double t, const CTQWPacketParams& p,
                                 const QuadratureSpec& spec = {}) {
    if (t < 0.0) throw DomainError("ctqw_packet: t must be >= 0");
    const double norm = detail::ctqw_normalization(p, spec);
    const ComplexScalar envelope =
        std::exp(-2.0 * p.gamma * ComplexScalar{p.alpha, t});
    const ComplexScalar jn = bessel_j(n, 2.0 * p.gamma * ComplexScalar{t, -p.alpha}, spec);
    return norm * envelope * detail::unit_imag_pow(n) * jn;
}

// All sites at once from one FFT of e^{-(alpha + i t) omega(k)}.
inline ScalarLattice ctqw_packet_profile(const CTQWPacketParams& p, double t, int n_min,
                                         int n_max, const QuadratureSpec& spec = {}) {
    if (t < 0.0) throw DomainError("ctqw_packet_profile: t must be >= 0");
    const int nsites = n_max - n_min + 1;
    const double bandwidth = 2.0 * p.gamma * std::abs(ComplexScalar{t, -p.alpha});
    const int m = detail::next_pow2_at_least(
        std::max(4.0 * nsites, 8.0 * (bandwidth + 64.0)));
    const double norm = detail::ctqw_normalization(p, spec);
    const ComplexScalar ez{p.alpha, t};
    const auto coeffs = detail::fourier_coefficients(
        [&](double k) { return std::exp(-ez * (2.0 * p.gamma * (1.0 - std::cos(k)))); },
        n_min, n_max, m);
    ScalarLattice out = ScalarLattice::zeros(n_min, n_max);
    for (int i = 0; i < nsites; ++i) {
        out.amp[static_cast<size_t>(i)] = norm * coeffs[static_cast<size_t>(i)];
    }
    return out;
}

}  // namespace qwalk
