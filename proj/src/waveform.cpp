#include "tmafh/waveform.hpp"

#include <cmath>
#include <limits>

#include "tmafh/angles.hpp"

namespace tmafh {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676; // sin(60 deg)

// e^{j*2*pi*l/6} for l = 0..5 with the +-0.5 / +-1 components exact.
constexpr std::complex<double> kPhaseTable[kPhaseLevels] = {
    {1.0, 0.0},           {0.5, kHalfSqrt3},   {-0.5, kHalfSqrt3},
    {-1.0, 0.0},          {-0.5, -kHalfSqrt3}, {0.5, -kHalfSqrt3},
};

} // namespace

std::complex<double> phase_step_value(int level) {
    if (level < 0 || level >= kPhaseLevels)
        throw PreconditionError("phase step level out of range 0..5");
    return kPhaseTable[level];
}

LptmWaveform::LptmWaveform(double f_tma_hz, double delay_s) : f_tma_(f_tma_hz) {
    if (!(f_tma_hz > 0.0) || !std::isfinite(f_tma_hz))
        throw PreconditionError("waveform fundamental must be positive and finite");
    if (!std::isfinite(delay_s))
        throw PreconditionError("waveform delay must be finite");
    const double period = 1.0 / f_tma_hz;
    double d = std::fmod(delay_s, period);
    if (d < 0.0)
        d += period;
    delay_ = d;
}

bool in_harmonic_set(int q) {
    return ((q % kPhaseLevels) + kPhaseLevels) % kPhaseLevels == 1;
}

std::complex<double> fourier_coefficient(int q) {
    if (!in_harmonic_set(q))
        return {0.0, 0.0};
    // (6/(pi*q)) * sin(pi*q/6) * e^{-j*pi*q/6} with q = 6i+1:
    // sin(pi*q/6) = (-1)^i / 2 and e^{-j*pi*q/6} = (-1)^i e^{-j*pi/6}.
    const double a = 3.0 / (kPi * static_cast<double>(q));
    return {a * kHalfSqrt3, -a * 0.5};
}

std::complex<double> shifted_coefficient(int q, const LptmWaveform& w) {
    const std::complex<double> base = fourier_coefficient(q);
    if (base == std::complex<double>{0.0, 0.0})
        return base;
    const double phase = -2.0 * kPi * q * w.f_tma() * w.delay();
    return base * std::complex<double>{std::cos(phase), std::sin(phase)};
}

std::complex<double> sample_waveform(const LptmWaveform& w, double t) {
    const double period = w.period();
    double x = std::fmod(t - w.delay(), period);
    if (x < 0.0)
        x += period;
    // x/period < 1 strictly, so the truncated index stays in 0..5.
    const int level = static_cast<int>(6.0 * (x / period));
    return kPhaseTable[level];
}

Spectrum spectrum(const LptmWaveform& w, int q_max) {
    if (q_max < 1)
        throw PreconditionError("spectrum truncation q_max must be >= 1");
    Spectrum s;
    s.reference_q = 1;
    s.entries.reserve(2 * q_max + 1);
    const double ref_mag = std::abs(shifted_coefficient(1, w));
    for (int q = -q_max; q <= q_max; ++q) {
        SpectrumEntry e;
        e.q = q;
        e.is_null = !in_harmonic_set(q);
        e.value = shifted_coefficient(q, w);
        e.rel_db = e.is_null ? -std::numeric_limits<double>::infinity()
                             : 20.0 * std::log10(std::abs(e.value) / ref_mag);
        s.entries.push_back(e);
    }
    return s;
}

double efficiency() {
    const double c = 3.0 / kPi;
    return c * c;
}

double parseval_check(int q_max) {
    if (q_max < 1)
        throw PreconditionError("parseval_check q_max must be >= 1");
    double sum = 0.0;
    // Radiating orders are q = 6i+1; accumulate outward so the partial sum
    // is built from smallest |q| upward (better rounding, monotone slices).
    for (int i = 0;; ++i) {
        bool any = false;
        const int q_pos = 6 * i + 1;
        const int q_neg = -6 * i + 1 - 6; // i.e. 6*(-i-1)+1
        if (q_pos <= q_max) {
            sum += std::norm(fourier_coefficient(q_pos));
            any = true;
        }
        if (-q_neg <= q_max) {
            sum += std::norm(fourier_coefficient(q_neg));
            any = true;
        }
        if (!any)
            break;
    }
    return sum;
}

} // namespace tmafh
