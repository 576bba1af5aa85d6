#pragma once

#include <complex>
#include <cstring>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "qwalk/errors.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk::detail {

// In-place unnormalized DFT. sign = -1 computes X_r = sum_j x_j e^{-2 pi i j r / N}
// (FFTW forward convention), sign = +1 the conjugate transform. Buffers come
// from fftw_malloc so the kernel choice, and hence the bit pattern of the
// result, does not depend on heap alignment. Planning is serialized because
// FFTW plan creation is not thread-safe.
inline void dft(std::vector<ComplexScalar>& data, int sign) {
    const int n = static_cast<int>(data.size());
    if (n == 0) return;
    static std::mutex plan_mutex;
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
    if (buf == nullptr) throw std::bad_alloc();
    const size_t bytes = sizeof(fftw_complex) * static_cast<size_t>(n);
    // std::complex<double> is layout-compatible with double[2]
    std::memcpy(static_cast<void*>(buf), static_cast<const void*>(data.data()), bytes);
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::memcpy(static_cast<void*>(data.data()), static_cast<const void*>(buf), bytes);
    fftw_free(buf);
}

// Wavenumber of DFT bin j on an N-site ring, mapped to (-pi, pi].
inline double mode_wavenumber(int j, int n) {
    const int wrapped = (j <= n / 2) ? j : j - n;
    return 2.0 * kPi * wrapped / n;
}

// Fourier coefficients c_n = (2*pi)^{-1} * integral of g(k) e^{i k n} dk over
// [-pi, pi], for all n in [n_min, n_max], from one M-point FFT. M controls the
// trapezoid resolution; coefficients beyond M/2 alias, so M must comfortably
// exceed both the output window and the integrand bandwidth.
template <class G>
std::vector<ComplexScalar> fourier_coefficients(G&& g, int n_min, int n_max, int m) {
    if (m < 2 * (std::abs(n_min) + 1) || m < 2 * (std::abs(n_max) + 1)) {
        throw DomainError("fourier_coefficients: transform size too small for site window");
    }
    std::vector<ComplexScalar> samples(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        samples[static_cast<size_t>(j)] = g(-kPi + 2.0 * kPi * j / m);
    }
    dft(samples, +1);
    std::vector<ComplexScalar> out;
    out.reserve(static_cast<size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        const int idx = ((n % m) + m) % m;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // e^{-i pi n} from the -pi origin
        out.push_back(sign * samples[static_cast<size_t>(idx)] / static_cast<double>(m));
    }
    return out;
}

}  // namespace qwalk::detail
