#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qwalk/dispersion.hpp"
#include "qwalk/fft.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/wavepackets.hpp"

namespace qwalk {

// Real probability density over sites or grid points. weight is the site
// spacing, so sum(rho) * weight approximates the total probability.
struct DensityProfile {
    std::vector<double> positions;
    std::vector<double> rho;
    double weight = 1.0;

    double total() const {
        double acc = 0.0;
        for (double r : rho) acc += r;
        return acc * weight;
    }
};

struct MomentSummary {
    double norm;
    double mean;
    double variance;
};

struct SpreadingFit {
    double intercept;
    double slope;
    double r_squared;
};

inline DensityProfile density(const SpinorLattice& state) {
    DensityProfile d;
    d.weight = state.spacing;
    d.positions.resize(state.up.size());
    d.rho.resize(state.up.size());
    for (int i = 0; i < state.size(); ++i) {
        d.positions[static_cast<size_t>(i)] = state.position(i);
        d.rho[static_cast<size_t>(i)] =
            std::norm(state.up[static_cast<size_t>(i)]) +
            std::norm(state.down[static_cast<size_t>(i)]);
    }
    return d;
}

inline DensityProfile density(const ScalarLattice& state) {
    DensityProfile d;
    d.weight = 1.0;
    d.positions.resize(state.amp.size());
    d.rho.resize(state.amp.size());
    for (int i = 0; i < state.size(); ++i) {
        d.positions[static_cast<size_t>(i)] = static_cast<double>(state.site(i));
        d.rho[static_cast<size_t>(i)] = std::norm(state.amp[static_cast<size_t>(i)]);
    }
    return d;
}

inline MomentSummary moments(const DensityProfile& profile) {
    double norm = 0.0, first = 0.0;
    for (size_t i = 0; i < profile.rho.size(); ++i) {
        norm += profile.rho[i] * profile.weight;
        first += profile.positions[i] * profile.rho[i] * profile.weight;
    }
    if (!(norm > 0.0)) throw DomainError("moments: profile has no probability mass");
    const double mean = first / norm;
    double second = 0.0;
    for (size_t i = 0; i < profile.rho.size(); ++i) {
        const double d = profile.positions[i] - mean;
        second += d * d * profile.rho[i] * profile.weight;
    }
    return MomentSummary{norm, mean, std::max(second / norm, 0.0)};
}

namespace detail {

inline double velocity_variance_impl(std::vector<ComplexScalar> up,
                                     std::vector<ComplexScalar> down, double spacing,
                                     const DispersionModel& model) {
    const int n = static_cast<int>(up.size());
    dft(up, -1);
    const bool has_down = !down.empty();
    if (has_down) dft(down, -1);
    const bool continuum = std::holds_alternative<DiracModel>(model);
    double w_sum = 0.0, v_sum = 0.0, v2_sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double k = mode_wavenumber(j, n);
        const double arg = continuum ? k / spacing : k;
        const double weight = std::norm(up[static_cast<size_t>(j)]) +
                              (has_down ? std::norm(down[static_cast<size_t>(j)]) : 0.0);
        const double v = group_velocity(model, arg);
        w_sum += weight;
        v_sum += weight * v;
        v2_sum += weight * v * v;
    }
    if (!(w_sum > 0.0)) throw DomainError("velocity_variance: zero state");
    const double mean = v_sum / w_sum;
    return std::max(v2_sum / w_sum - mean * mean, 0.0);
}

}  // namespace detail

// Variance of the group velocity under the momentum-space weight of a
// single-band state; by the spreading law this is the t^2 coefficient of the
// position variance.
inline double velocity_variance(const SpinorLattice& state, const DispersionModel& model) {
    return detail::velocity_variance_impl(state.up, state.down, state.spacing, model);
}

inline double velocity_variance(const ScalarLattice& state, const DispersionModel& model) {
    return detail::velocity_variance_impl(state.amp, {}, 1.0, model);
}

// Least squares of variance against t^2.
inline SpreadingFit spreading_fit(const std::vector<double>& times,
                                  const std::vector<double>& variances) {
    if (times.size() != variances.size() || times.size() < 3) {
        throw DomainError("spreading_fit: need at least 3 matching samples");
    }
    const size_t n = times.size();
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sx += times[i] * times[i];
        sy += variances[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = times[i] * times[i] - mx;
        const double dy = variances[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DegenerateFit("spreading_fit: all t^2 values equal");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = variances[i] - (intercept + slope * times[i] * times[i]);
        ss_res += r * r;
    }
    const double r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    return SpreadingFit{intercept, slope, r2};
}

// Total probability found outside |position| <= speed * t + buffer.
inline double lightcone_leakage(const DensityProfile& profile, double speed, double t,
                                double buffer) {
    if (buffer < 0.0) throw DomainError("lightcone_leakage: buffer must be >= 0");
    const double edge = speed * t + buffer;
    double acc = 0.0;
    for (size_t i = 0; i < profile.rho.size(); ++i) {
        if (std::abs(profile.positions[i]) > edge) acc += profile.rho[i];
    }
    return acc * profile.weight;
}

// Von Neumann entropy (base 2) of the reduced 2x2 spinor density matrix
// rho_s = sum_n psi(n) psi(n)^dagger * weight.
inline double spinor_entropy(const SpinorLattice& state) {
    double r00 = 0.0, r11 = 0.0;
    ComplexScalar r01{0.0, 0.0}, r10{0.0, 0.0};
    for (size_t i = 0; i < state.up.size(); ++i) {
        r00 += std::norm(state.up[i]);
        r11 += std::norm(state.down[i]);
        r01 += state.up[i] * std::conj(state.down[i]);
        r10 += state.down[i] * std::conj(state.up[i]);
    }
    r00 *= state.spacing;
    r11 *= state.spacing;
    r01 *= state.spacing;
    r10 *= state.spacing;
    const double asym = std::abs(r01 - std::conj(r10));
    const double scale = std::max({std::abs(r00), std::abs(r11), std::abs(r01), 1e-300});
    if (!(asym <= 1e-10 * scale)) {
        throw NonHermitian("spinor_entropy: reduced density matrix lost hermiticity");
    }
    const double trace = r00 + r11;
    if (!(trace > 0.0)) throw DomainError("spinor_entropy: zero state");
    r00 /= trace;
    r11 /= trace;
    r01 /= trace;

    // Closed-form eigenvalues of a trace-one hermitian 2x2.
    const double det = r00 * r11 - std::norm(r01);
    const double disc = std::sqrt(std::max(1.0 - 4.0 * det, 0.0));
    double lambda[2] = {0.5 * (1.0 + disc), 0.5 * (1.0 - disc)};
    double entropy = 0.0;
    for (double& l : lambda) {
        if (l < -1e-12 || l > 1.0 + 1e-12) {
            throw DomainError("spinor_entropy: eigenvalue outside [0, 1] beyond tolerance");
        }
        l = std::clamp(l, 0.0, 1.0);
        if (l > 0.0) entropy -= l * std::log2(l);
    }
    return entropy;
}

// Entanglement of the t=0 (tau=0) packet as a function of the localization
// scale a; the walk uses alpha = a * tan(theta). Produces the data behind the
// entropy-versus-localization comparison of the two models.
inline std::vector<std::pair<double, double>> entropy_vs_localization(
    const DispersionModel& model, const std::vector<double>& a_values,
    const QuadratureSpec& spec = {}) {
    if (a_values.empty()) throw DomainError("entropy_vs_localization: empty scan");
    for (size_t i = 0; i < a_values.size(); ++i) {
        if (!(a_values[i] > 0.0)) {
            throw DomainError("entropy_vs_localization: a values must be positive");
        }
        if (i > 0 && !(a_values[i] > a_values[i - 1])) {
            throw DomainError("entropy_vs_localization: a values must be ascending");
        }
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(a_values.size());
    if (const auto* dirac = std::get_if<DiracModel>(&model)) {
        for (double a : a_values) {
            // Truncation from the exponential tail: mass beyond L is < 1e-10.
            const double L = a + 16.0 / dirac->mass;
            const double h = std::min(std::min(a, 1.0 / dirac->mass) / 8.0, 0.125);
            const SpinorLattice grid =
                dirac_packet_profile(DiracPacketParams{dirac->mass, a}, 0.0, L, h, spec);
            out.emplace_back(a, spinor_entropy(grid));
        }
    } else if (const auto* walk = std::get_if<DtqwModel>(&model)) {
        const double tn = std::tan(walk->theta);
        for (double a : a_values) {
            const double alpha = a * tn;
            const int w = std::max(
                64, static_cast<int>(std::ceil(8.0 * std::sqrt(alpha / tn + 1.0))) + 32);
            const SpinorLattice profile =
                dtqw_packet_profile(DTQWPacketParams{walk->theta, alpha}, 0, -w, w, spec);
            out.emplace_back(a, spinor_entropy(profile));
        }
    } else {
        throw Unsupported("entropy_vs_localization: only the Dirac and DTQW variants are supported");
    }
    return out;
}

}  // namespace qwalk
