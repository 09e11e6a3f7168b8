#pragma once

#include <complex>
#include <span>
#include <vector>

namespace circmap::fourier {

using Complex = std::complex<double>;

/// Trigonometric interpolant of `samples` (uniform in parameter on [0, 2pi))
/// evaluated at `count` uniformly spaced parameters.
std::vector<Complex> interpolate(std::span<const Complex> samples, std::size_t count);

/// Spectral derivative d/dt of a periodic signal sampled uniformly on [0, 2pi).
std::vector<Complex> derivative(std::span<const Complex> samples);

/// Coefficients c_k of sum_k c_k e^{ikt}, k in [-N/2, N/2); index k + N/2.
std::vector<Complex> coefficients(std::span<const Complex> samples);

}  // namespace circmap::fourier
