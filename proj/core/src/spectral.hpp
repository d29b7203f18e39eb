#pragma once

#include <complex>
#include <vector>

namespace loewner::spectral {

using cplx = std::complex<double>;

// Unnormalized forward DFT: out_n = sum_k x_k e^{-2 pi i n k / N}.
std::vector<cplx> forward(const std::vector<cplx>& x);
// Inverse DFT including the 1/N factor.
std::vector<cplx> inverse(const std::vector<cplx>& x);

// Signed frequency of DFT index i for length n; the Nyquist index maps to +n/2.
int frequency(std::size_t i, std::size_t n);

// Periodic conjugate function (Hilbert transform on the circle): multiplier -i sign(n).
std::vector<double> conjugate(const std::vector<double>& x);

// Spectral derivative of periodic samples on [0, 2 pi).
std::vector<double> derivative(const std::vector<double>& x);

}  // namespace loewner::spectral
