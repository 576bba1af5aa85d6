#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qwalk/dispersion.hpp"
#include "qwalk/fft.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

namespace detail {

// Index window [lo, hi] holding all but ~tail_fraction of the state's norm
// per side. Used for the ring-wrap safety check.
template <class Lattice>
std::pair<int, int> support_window(const Lattice& state, double tail_fraction = 1e-10) {
    std::vector<double> site_mass;
    if constexpr (std::is_same_v<Lattice, SpinorLattice>) {
        site_mass.resize(state.up.size());
        for (size_t i = 0; i < state.up.size(); ++i) {
            site_mass[i] = std::norm(state.up[i]) + std::norm(state.down[i]);
        }
    } else {
        site_mass.resize(state.amp.size());
        for (size_t i = 0; i < state.amp.size(); ++i) {
            site_mass[i] = std::norm(state.amp[i]);
        }
    }
    double total = 0.0;
    for (double m : site_mass) total += m;
    if (!(total > 0.0)) return {0, -1};
    const double tail = tail_fraction * total;
    int lo = 0, hi = static_cast<int>(site_mass.size()) - 1;
    double acc = 0.0;
    while (lo < hi && acc + site_mass[static_cast<size_t>(lo)] < tail) {
        acc += site_mass[static_cast<size_t>(lo)];
        ++lo;
    }
    acc = 0.0;
    while (hi > lo && acc + site_mass[static_cast<size_t>(hi)] < tail) {
        acc += site_mass[static_cast<size_t>(hi)];
        --hi;
    }
    return {lo, hi};
}

constexpr int kWrapMarginSites = 8;

template <class Lattice>
void require_lightcone_margin(const Lattice& state, double reach_sites, const char* op) {
    if (reach_sites <= 0.0) return;  // no propagation, nothing to protect
    const auto [lo, hi] = support_window(state);
    if (hi < lo) return;  // zero state
    const int reach = static_cast<int>(std::ceil(reach_sites));
    const int last = state.size() - 1;
    if (lo - reach < kWrapMarginSites || hi + reach > last - kWrapMarginSites) {
        throw LightConeOverflow(std::string(op) + ": light cone reaches within " +
                                std::to_string(kWrapMarginSites) +
                                " sites of the ring wrap point");
    }
}

}  // namespace detail

// One discrete step: the coin e^{-i theta sigma_x} on every site, then the
// conditional shift (up component moves +1 site, down component -1) on the
// periodic ring. Linear and norm-preserving for any theta.
inline SpinorLattice dtqw_step(const SpinorLattice& state, double theta) {
    const int n = state.size();
    const double c = std::cos(theta);
    const ComplexScalar ms{0.0, -std::sin(theta)};
    std::vector<ComplexScalar> cu(static_cast<size_t>(n)), cd(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const size_t ui = static_cast<size_t>(i);
        cu[ui] = c * state.up[ui] + ms * state.down[ui];
        cd[ui] = ms * state.up[ui] + c * state.down[ui];
    }
    SpinorLattice out = state;
    for (int i = 0; i < n; ++i) {
        out.up[static_cast<size_t>(i)] = cu[static_cast<size_t>((i - 1 + n) % n)];
        out.down[static_cast<size_t>(i)] = cd[static_cast<size_t>((i + 1) % n)];
    }
    return out;
}

// Exact inverse of dtqw_step: opposite shifts, then the adjoint coin.
inline SpinorLattice dtqw_step_inverse(const SpinorLattice& state, double theta) {
    const int n = state.size();
    std::vector<ComplexScalar> su(static_cast<size_t>(n)), sd(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        su[static_cast<size_t>(i)] = state.up[static_cast<size_t>((i + 1) % n)];
        sd[static_cast<size_t>(i)] = state.down[static_cast<size_t>((i - 1 + n) % n)];
    }
    const double c = std::cos(theta);
    const ComplexScalar ps{0.0, std::sin(theta)};
    SpinorLattice out = state;
    for (int i = 0; i < n; ++i) {
        const size_t ui = static_cast<size_t>(i);
        out.up[ui] = c * su[ui] + ps * sd[ui];
        out.down[ui] = ps * su[ui] + c * sd[ui];
    }
    return out;
}

inline SpinorLattice dtqw_evolve(const SpinorLattice& state, double theta, int steps) {
    if (steps < 0) throw DomainError("dtqw_evolve: steps must be >= 0");
    detail::require_lightcone_margin(state, std::abs(std::cos(theta)) * steps, "dtqw_evolve");
    SpinorLattice out = state;
    for (int s = 0; s < steps; ++s) {
        out = dtqw_step(out, theta);
    }
    return out;
}

// Exact spectral propagation of i d/dt psi = -gamma (psi(n-1) - 2 psi(n) + psi(n+1)):
// multiply each ring mode by exp(-i omega(k) t) with omega(k) = 2 gamma (1 - cos k).
inline ScalarLattice ctqw_evolve(const ScalarLattice& state, double gamma, double t) {
    if (!(gamma > 0.0)) throw DomainError("ctqw_evolve: gamma must be positive");
    detail::require_lightcone_margin(state, 2.0 * gamma * std::abs(t), "ctqw_evolve");
    ScalarLattice out = state;
    const int n = out.size();
    detail::dft(out.amp, -1);
    for (int j = 0; j < n; ++j) {
        const double w = 2.0 * gamma * (1.0 - std::cos(detail::mode_wavenumber(j, n)));
        out.amp[static_cast<size_t>(j)] *= std::exp(-kI * w * t);
    }
    detail::dft(out.amp, +1);
    for (auto& a : out.amp) a /= static_cast<double>(n);
    return out;
}

// Spectral propagation under H = sigma_z p + sigma_x m: each ring momentum
// mode gets the exact 2x2 exponential
//   e^{-iHt} = cos(w t) I - i sin(w t)/w (sigma_z p + sigma_x m),  w = sqrt(p^2+m^2).
inline SpinorLattice dirac_evolve(const SpinorLattice& state, double mass, double t) {
    if (mass < 0.0) throw DomainError("dirac_evolve: mass must be >= 0");
    detail::require_lightcone_margin(state, std::abs(t) / state.spacing, "dirac_evolve");
    SpinorLattice out = state;
    const int n = out.size();
    detail::dft(out.up, -1);
    detail::dft(out.down, -1);
    for (int j = 0; j < n; ++j) {
        const double p = detail::mode_wavenumber(j, n) / state.spacing;
        const double w = std::hypot(p, mass);
        const double c = std::cos(w * t);
        const double sinc = (w > 0.0) ? std::sin(w * t) / w : t;
        const ComplexScalar m00 = ComplexScalar{c, 0.0} - kI * sinc * p;
        const ComplexScalar m11 = ComplexScalar{c, 0.0} + kI * sinc * p;
        const ComplexScalar m01 = -kI * sinc * mass;
        const size_t uj = static_cast<size_t>(j);
        const ComplexScalar u = out.up[uj], d = out.down[uj];
        out.up[uj] = m00 * u + m01 * d;
        out.down[uj] = m01 * u + m11 * d;
    }
    detail::dft(out.up, +1);
    detail::dft(out.down, +1);
    for (int j = 0; j < n; ++j) {
        out.up[static_cast<size_t>(j)] /= static_cast<double>(n);
        out.down[static_cast<size_t>(j)] /= static_cast<double>(n);
    }
    return out;
}

namespace detail {

// Smooth momentum bump, hard-cut at |p| = p_cut with a cos^2 taper so the
// position-space tails decay fast enough for the wrap check.
inline SpinorLattice bandlimited_gaussian_state(double p_cut, double half_width_x, double eps) {
    const int w = static_cast<int>(std::ceil(half_width_x / eps));
    SpinorLattice s = SpinorLattice::zeros(-w, w, eps);
    const int n = s.size();
    const double sigma_p = p_cut / 4.0;
    for (int j = 0; j < n; ++j) {
        const double p = mode_wavenumber(j, n) / eps;
        if (std::abs(p) <= p_cut) {
            const double taper = std::cos(0.5 * kPi * p / p_cut);
            s.up[static_cast<size_t>(j)] =
                std::exp(-0.5 * p * p / (sigma_p * sigma_p)) * taper * taper;
        }
    }
    dft(s.up, +1);
    // The inverse transform lands the bump at array index 0; rotate it to the
    // center site n = 0.
    std::rotate(s.up.begin(), s.up.begin() + (s.size() - w), s.up.end());
    s.normalize();
    return s;
}

}  // namespace detail

// L2 distance between discretized-walk propagation (coin angle m*eps, t/eps
// steps) and the exact spectral propagator, for each grid spacing in
// `epsilons`, on a fixed band-limited state. The step count is rounded and
// the comparison time rescaled to steps*eps so both propagators are compared
// at the same time.
inline std::vector<double> trotter_convergence(double mass, double momentum_cutoff, double t,
                                               const std::vector<double>& epsilons) {
    if (!(momentum_cutoff > 0.0)) {
        throw DomainError("trotter_convergence: momentum_cutoff must be positive");
    }
    if (mass < 0.0 || t < 0.0) {
        throw DomainError("trotter_convergence: mass and t must be >= 0");
    }
    if (epsilons.empty()) {
        throw DomainError("trotter_convergence: need at least one spacing");
    }
    for (size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0) || !(mass * epsilons[i] < 0.5 * kPi)) {
            throw DomainError("trotter_convergence: require eps > 0 and mass*eps < pi/2");
        }
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw DomainError("trotter_convergence: epsilons must be strictly decreasing");
        }
    }

    const double half_width = 32.0 / momentum_cutoff + t + 4.0;
    std::vector<double> errors;
    errors.reserve(epsilons.size());
    for (double eps : epsilons) {
        const SpinorLattice start =
            detail::bandlimited_gaussian_state(momentum_cutoff, half_width, eps);
        const long steps = std::lround(t / eps);
        const double t_eff = static_cast<double>(steps) * eps;
        const SpinorLattice walked = dtqw_evolve(start, mass * eps, static_cast<int>(steps));
        const SpinorLattice exact = dirac_evolve(start, mass, t_eff);
        double acc = 0.0;
        for (size_t i = 0; i < walked.up.size(); ++i) {
            acc += std::norm(walked.up[i] - exact.up[i]) +
                   std::norm(walked.down[i] - exact.down[i]);
        }
        errors.push_back(std::sqrt(acc * eps));
    }
    return errors;
}

}  // namespace qwalk
