#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {

// Two-component amplitudes over the integer sites n_min..n_max of a ring.
// spacing is 1 for walks and the grid step for Dirac-on-grid states.
struct SpinorLattice {
    int n_min = 0;
    int n_max = -1;
    std::vector<ComplexScalar> up;
    std::vector<ComplexScalar> down;
    double spacing = 1.0;

    static SpinorLattice zeros(int n_min, int n_max, double spacing = 1.0) {
        if (n_max < n_min) throw DomainError("SpinorLattice: n_max < n_min");
        if (!(spacing > 0.0)) throw DomainError("SpinorLattice: spacing must be positive");
        SpinorLattice s;
        s.n_min = n_min;
        s.n_max = n_max;
        s.spacing = spacing;
        s.up.assign(static_cast<size_t>(n_max - n_min + 1), ComplexScalar{});
        s.down.assign(static_cast<size_t>(n_max - n_min + 1), ComplexScalar{});
        return s;
    }

    int size() const { return n_max - n_min + 1; }
    int site(int index) const { return n_min + index; }
    int index_of(int n) const { return n - n_min; }
    double position(int index) const { return (n_min + index) * spacing; }

    double squared_norm() const {
        double acc = 0.0;
        for (size_t i = 0; i < up.size(); ++i) {
            acc += std::norm(up[i]) + std::norm(down[i]);
        }
        return acc * spacing;
    }

    void normalize() {
        const double n2 = squared_norm();
        if (!(n2 > 0.0)) throw DomainError("SpinorLattice: cannot normalize zero state");
        const double inv = 1.0 / std::sqrt(n2);
        for (size_t i = 0; i < up.size(); ++i) {
            up[i] *= inv;
            down[i] *= inv;
        }
    }
};

// One-component amplitudes over integer sites (unit spacing).
struct ScalarLattice {
    int n_min = 0;
    int n_max = -1;
    std::vector<ComplexScalar> amp;

    static ScalarLattice zeros(int n_min, int n_max) {
        if (n_max < n_min) throw DomainError("ScalarLattice: n_max < n_min");
        ScalarLattice s;
        s.n_min = n_min;
        s.n_max = n_max;
        s.amp.assign(static_cast<size_t>(n_max - n_min + 1), ComplexScalar{});
        return s;
    }

    int size() const { return n_max - n_min + 1; }
    int site(int index) const { return n_min + index; }
    int index_of(int n) const { return n - n_min; }

    double squared_norm() const {
        double acc = 0.0;
        for (const auto& a : amp) acc += std::norm(a);
        return acc;
    }

    void normalize() {
        const double n2 = squared_norm();
        if (!(n2 > 0.0)) throw DomainError("ScalarLattice: cannot normalize zero state");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : amp) a *= inv;
    }
};

}  // namespace qwalk
