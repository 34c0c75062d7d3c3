#pragma once

// Thin FFTW3 wrapper. Plans are created once per size under a lock; the
// new-array execute calls are thread-safe.

#include <complex>
#include <span>

namespace vanatta::fft {

/// Real-to-complex forward DFT: out.size() must be in.size() / 2 + 1.
void forward_real(std::span<const double> in, std::span<std::complex<double>> out);

/// Complex forward DFT (e^{-j 2 pi k n / N}), out.size() == in.size().
void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace vanatta::fft
