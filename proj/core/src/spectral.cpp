#include "ntcorr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace ntcorr {

SignalSeries double_signal(const SignalSeries& series, Parity parity) {
    if (parity == Parity::none)
        throw std::invalid_argument("double_signal: choose a parity");
    if (std::abs(series.t0) > 1e-12)
        throw std::invalid_argument("double_signal: series must start at t=0");
    std::size_t m = series.samples.size();
    if (m < 2) throw std::invalid_argument("double_signal: series too short");

    SignalSeries out;
    out.dt = series.dt;
    out.t0 = -series.dt * double(m - 1);
    out.parity = parity;
    out.samples.resize(2 * m - 1);
    double sign = parity == Parity::antisymmetric ? -1.0 : 1.0;
    for (std::size_t i = 1; i < m; ++i) out.samples[m - 1 - i] = sign * series.samples[i];
    for (std::size_t i = 1; i < m; ++i) out.samples[m - 1 + i] = series.samples[i];
    // The reflection fixes the parity of the t=0 sample.
    out.samples[m - 1] = parity == Parity::antisymmetric ? cplx(0, 0) : series.samples[0];
    return out;
}

SignalSeries apply_window(const SignalSeries& series, WindowKind kind) {
    if (kind == WindowKind::rectangular) return series;
    SignalSeries out = series;
    std::size_t m = out.samples.size();
    if (m < 2) return out;
    for (std::size_t i = 0; i < m; ++i) {
        double w = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * double(i) / double(m - 1));
        out.samples[i] *= w;
    }
    return out;
}

Spectrum dft(const SignalSeries& series) {
    std::size_t m = series.samples.size();
    if (m < 2) throw std::invalid_argument("dft: series too short");

    std::vector<cplx> in = series.samples;
    std::vector<cplx> fft_out(m);
    fftw_plan plan = fftw_plan_dft_1d(int(m), reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(fft_out.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    Spectrum spec;
    spec.omegas.resize(m);
    spec.values.resize(m);
    double base = 2.0 * std::numbers::pi / (double(m) * series.dt);
    long half = long(m) / 2;
    for (std::size_t j = 0; j < m; ++j) {
        long q = long(j) - half;  // ascending through zero
        double omega = base * double(q);
        std::size_t idx = std::size_t((q + long(m)) % long(m));
        cplx phase(std::cos(-omega * series.t0), std::sin(-omega * series.t0));
        spec.omegas[j] = omega;
        spec.values[j] = series.dt * phase * fft_out[idx];
    }
    return spec;
}

Spectrum normalize_spectrum(Spectrum spec) {
    double peak = 0;
    for (const auto& v : spec.values) peak = std::max(peak, std::abs(v));
    if (peak > 0)
        for (auto& v : spec.values) v /= peak;
    spec.normalized = true;
    return spec;
}

Spectrum correlation_analysis(const Spectrum& a, const Spectrum& b) {
    if (a.omegas.size() != b.omegas.size())
        throw std::invalid_argument("correlation_analysis: grid mismatch");
    for (std::size_t i = 0; i < a.omegas.size(); ++i)
        if (std::abs(a.omegas[i] - b.omegas[i]) > 1e-9)
            throw std::invalid_argument("correlation_analysis: grid mismatch");
    Spectrum out;
    out.omegas = a.omegas;
    out.values.resize(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double v = (a.values[i] * std::conj(b.values[i])).real();
        out.values[i] = std::max(v, 0.0);
    }
    return normalize_spectrum(std::move(out));
}

std::vector<Peak> find_peaks(const Spectrum& spec, double threshold_frac) {
    if (threshold_frac <= 0 || threshold_frac >= 1)
        throw std::invalid_argument("find_peaks: threshold_frac must be in (0,1)");
    std::size_t m = spec.values.size();
    std::vector<double> mag(m);
    double global = 0;
    for (std::size_t i = 0; i < m; ++i) {
        mag[i] = std::abs(spec.values[i]);
        global = std::max(global, mag[i]);
    }
    std::vector<Peak> peaks;
    if (global == 0) return peaks;
    double cut = threshold_frac * global;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (mag[i] < cut) continue;
        if (!(mag[i] >= mag[i - 1] && mag[i] > mag[i + 1])) continue;
        double den = mag[i - 1] - 2 * mag[i] + mag[i + 1];
        double delta = den == 0 ? 0.0 : 0.5 * (mag[i - 1] - mag[i + 1]) / den;
        delta = std::clamp(delta, -0.5, 0.5);
        double domega = spec.omegas[1] - spec.omegas[0];
        double height = mag[i] - 0.25 * (mag[i - 1] - mag[i + 1]) * delta;
        peaks.push_back({spec.omegas[i] + delta * domega, height});
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& x, const Peak& y) { return x.height > y.height; });
    return peaks;
}

DispersionFit fit_dispersion(const std::vector<std::pair<double, double>>& points) {
    std::vector<double> ks;
    for (const auto& [k, e] : points) {
        if (e <= 0) throw std::invalid_argument("fit_dispersion: energies must be positive");
        double ak = std::abs(k);
        if (std::none_of(ks.begin(), ks.end(),
                         [&](double x) { return std::abs(x - ak) < 1e-12; }))
            ks.push_back(ak);
    }
    if (ks.size() < 3)
        throw std::invalid_argument("fit_dispersion: need at least 3 distinct |k| values");

    // Linear fit y = a + s x with x = k^2, y = E^2.
    double n = double(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [k, e] : points) {
        double x = k * k, y = e * e;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double det = n * sxx - sx * sx;
    double s = (n * sxy - sx * sy) / det;
    double a = (sxx * sy - sx * sxy) / det;

    double ss_res = 0;
    for (const auto& [k, e] : points) {
        double r = e * e - (a + s * k * k);
        ss_res += r * r;
    }
    double dof = std::max(n - 2.0, 1.0);
    double sigma2 = ss_res / dof;
    double var_s = sigma2 * n / det;
    double var_a = sigma2 * sxx / det;

    DispersionFit fit;
    fit.residual = std::sqrt(ss_res / n);
    if (s <= 0) {
        fit.degenerate = true;
        fit.c = 0;
        fit.se_c = std::numeric_limits<double>::infinity();
    } else {
        fit.c = std::sqrt(s);
        fit.se_c = std::sqrt(var_s) / (2 * fit.c);
    }
    if (a <= 0) {
        fit.degenerate = true;
        fit.m_h_c2 = 0;
        fit.se_m = std::numeric_limits<double>::infinity();
    } else {
        fit.m_h_c2 = std::sqrt(a);
        fit.se_m = std::sqrt(var_a) / (2 * fit.m_h_c2);
    }
    return fit;
}

}  // namespace ntcorr
