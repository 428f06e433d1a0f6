#pragma once

#include <utility>
#include <vector>

#include "ntcorr/pauli.hpp"

namespace ntcorr {

enum class Parity { none, antisymmetric, symmetric };
enum class WindowKind { rectangular, hamming };

/// Uniformly sampled complex time series starting at t0.
struct SignalSeries {
    double t0 = 0;
    double dt = 1;
    std::vector<cplx> samples;
    Parity parity = Parity::none;

    double time(std::size_t i) const { return t0 + dt * double(i); }
};

struct Spectrum {
    std::vector<double> omegas;  // ascending, uniform
    std::vector<cplx> values;
    bool normalized = false;
};

/// Extends a series starting at t=0 to [-T, T] using C(-t) = -C(t)
/// (antisymmetric, which forces the t=0 sample to zero) or +C(t).
SignalSeries double_signal(const SignalSeries& series, Parity parity);

/// Pointwise window multiply; hamming is 0.54 - 0.46 cos(2 pi n/(M-1)).
SignalSeries apply_window(const SignalSeries& series, WindowKind kind);

/// Discrete approximation of the continuous transform
/// int dt e^{-i omega t} C(t): FFT scaled by dt with the t0 phase applied,
/// frequencies 2 pi m/(M dt) shifted to ascend through zero.
Spectrum dft(const SignalSeries& series);

/// Cross-spectrum Re(a * conj(b)) floored at zero and max-normalized;
/// uncorrelated noise cancels in expectation while shared peaks survive.
Spectrum correlation_analysis(const Spectrum& a, const Spectrum& b);

Spectrum normalize_spectrum(Spectrum spec);

struct Peak {
    double omega;
    double height;
};

/// Local maxima of |value| above threshold_frac * max, refined by 3-point
/// parabolic interpolation; descending by height.
std::vector<Peak> find_peaks(const Spectrum& spec, double threshold_frac);

struct DispersionFit {
    double m_h_c2 = 0;
    double c = 0;
    double se_m = 0;
    double se_c = 0;
    double residual = 0;
    bool degenerate = false;
};

/// Least squares of E^2 = (m c^2)^2 + (c k)^2 on (k, E) points.
DispersionFit fit_dispersion(const std::vector<std::pair<double, double>>& points);

}  // namespace ntcorr
