#pragma once

#include <cmath>
#include <variant>

#include "qwalk/errors.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {

// Discrete-time walk with coin angle theta in (0, pi/2).
struct DtqwModel {
    double theta;
    explicit DtqwModel(double theta_) : theta(theta_) {
        if (!(theta > 0.0 && theta < 0.5 * kPi)) {
            throw DomainError("DtqwModel: theta must lie in (0, pi/2)");
        }
    }
};

// Free particle with mass > 0 in natural units (hbar = c = 1).
struct DiracModel {
    double mass;
    explicit DiracModel(double mass_) : mass(mass_) {
        if (!(mass > 0.0)) {
            throw DomainError("DiracModel: mass must be positive");
        }
    }
};

// Continuous-time walk with hopping rate gamma > 0.
struct CtqwModel {
    double gamma;
    explicit CtqwModel(double gamma_) : gamma(gamma_) {
        if (!(gamma > 0.0)) {
            throw DomainError("CtqwModel: gamma must be positive");
        }
    }
};

// The usual coin e^{-i pi sigma_y / 4} sigma_z; kept for dispersion contrast
// only, it has no nonrelativistic-limit constants.
struct HadamardModel {};

using DispersionModel = std::variant<DtqwModel, DiracModel, CtqwModel, HadamardModel>;

// Positive-branch frequency of the plane-wave mode with wavenumber k.
inline double omega(const DispersionModel& model, double k) {
    return std::visit(
        [k](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DtqwModel>) {
                return std::acos(std::cos(m.theta) * std::cos(k));
            } else if constexpr (std::is_same_v<T, DiracModel>) {
                return std::hypot(k, m.mass);
            } else if constexpr (std::is_same_v<T, CtqwModel>) {
                return 2.0 * m.gamma * (1.0 - std::cos(k));
            } else {
                return std::asin(std::sin(k) / std::sqrt(2.0));
            }
        },
        model);
}

// d(omega)/dk of the branch returned by omega().
inline double group_velocity(const DispersionModel& model, double k) {
    return std::visit(
        [k](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DtqwModel>) {
                const double c = std::cos(m.theta);
                const double sin_w = std::sqrt(std::max(1.0 - c * c * std::cos(k) * std::cos(k),
                                                        0.0));
                if (sin_w < 1e-300) {
                    // Only reachable in the theta -> 0 limit; the branch
                    // derivative tends to the signed maximum speed.
                    return std::copysign(c, std::sin(k));
                }
                return c * std::sin(k) / sin_w;
            } else if constexpr (std::is_same_v<T, DiracModel>) {
                return k / std::hypot(k, m.mass);
            } else if constexpr (std::is_same_v<T, CtqwModel>) {
                return 2.0 * m.gamma * std::sin(k);
            } else {
                const double s = std::sin(k);
                return std::cos(k) / std::sqrt(2.0 - s * s);
            }
        },
        model);
}

// Largest attainable group speed, the model's effective speed of light.
inline double max_speed(const DispersionModel& model) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DtqwModel>) {
                return std::cos(m.theta);
            } else if constexpr (std::is_same_v<T, DiracModel>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, CtqwModel>) {
                return 2.0 * m.gamma;
            } else {
                return 1.0 / std::sqrt(2.0);
            }
        },
        model);
}

// Inverse curvature of the band bottom, [d^2 omega/dk^2]^{-1} at k = 0.
inline double effective_mass(const DispersionModel& model) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DtqwModel>) {
                return std::tan(m.theta);
            } else if constexpr (std::is_same_v<T, DiracModel>) {
                return m.mass;
            } else if constexpr (std::is_same_v<T, CtqwModel>) {
                throw Unsupported("effective_mass: not defined for the CTQW variant");
            } else {
                throw Unsupported("effective_mass: the Hadamard dispersion has no quadratic band bottom");
            }
        },
        model);
}

// 1 / (effective mass * max speed); localization below this scale behaves
// relativistically.
inline double compton_wavelength(const DispersionModel& model) {
    return 1.0 / (effective_mass(model) * max_speed(model));
}

// Walk localization alpha expressed on the continuum scale: a = alpha / tan(theta).
inline double localization_correspondence(double theta, double alpha) {
    if (!(theta > 0.0 && theta < 0.5 * kPi)) {
        throw DomainError("localization_correspondence: theta must lie in (0, pi/2)");
    }
    return alpha / std::tan(theta);
}

}  // namespace qwalk
