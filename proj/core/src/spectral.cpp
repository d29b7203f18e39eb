#include "spectral.hpp"

#include <unsupported/Eigen/FFT>

namespace loewner::spectral {

std::vector<cplx> forward(const std::vector<cplx>& x) {
    Eigen::FFT<double> fft;
    std::vector<cplx> out;
    fft.fwd(out, x);
    return out;
}

std::vector<cplx> inverse(const std::vector<cplx>& x) {
    Eigen::FFT<double> fft;
    std::vector<cplx> out;
    fft.inv(out, x);
    return out;
}

int frequency(std::size_t i, std::size_t n) {
    return i <= n / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
}

namespace {

template <class Multiplier>
std::vector<double> apply_multiplier(const std::vector<double>& x, Multiplier m) {
    const std::size_t n = x.size();
    std::vector<cplx> c(x.begin(), x.end());
    auto spectrum = forward(c);
    for (std::size_t i = 0; i < n; ++i) {
        const int k = frequency(i, n);
        // The Nyquist mode has no well-defined sign; drop it.
        spectrum[i] *= (n % 2 == 0 && i == n / 2) ? cplx{0.0, 0.0} : m(k);
    }
    const auto back = inverse(spectrum);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = back[i].real();
    return out;
}

}  // namespace

std::vector<double> conjugate(const std::vector<double>& x) {
    return apply_multiplier(x, [](int k) {
        return k > 0 ? cplx{0.0, -1.0} : (k < 0 ? cplx{0.0, 1.0} : cplx{0.0, 0.0});
    });
}

std::vector<double> derivative(const std::vector<double>& x) {
    return apply_multiplier(x, [](int k) { return cplx{0.0, static_cast<double>(k)}; });
}

}  // namespace loewner::spectral
