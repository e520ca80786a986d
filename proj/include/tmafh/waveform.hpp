// waveform.hpp - six-level linear-phase time-modulating waveform.
//
// The modulating signal is a unit-modulus periodic stair-step whose phase
// climbs 0, 60, ..., 300 degrees across six equal segments per period.
// Stepping the phase linearly makes the spectrum single-sideband: the only
// radiating harmonics are the orders q = 6i + 1 (i integer), and the first
// positive harmonic carries (3/pi)^2 = 91.2 % of the power. Re-tuning the
// fundamental moves that harmonic onto any FSK/hop tone, and delaying the
// waveform rotates the harmonic phase, which is what steers the array.

#pragma once

#include <complex>
#include <vector>

#include "tmafh/errors.hpp"

namespace tmafh {

inline constexpr int kPhaseLevels = 6;

// Exact excitation value of phase step l (e^{j*2*pi*l/6}, l = 0..5).
std::complex<double> phase_step_value(int level);

// One periodic six-level modulating waveform: fundamental frequency and a
// time delay. Delays are reduced into [0, period) at construction so that
// equal waveforms compare equal and stored delays are principal values.
class LptmWaveform {
public:
    LptmWaveform(double f_tma_hz, double delay_s);

    double f_tma() const { return f_tma_; }
    double period() const { return 1.0 / f_tma_; }
    double delay() const { return delay_; }

private:
    double f_tma_;
    double delay_;
};

// True when harmonic order q belongs to the radiating set {6i + 1}.
bool in_harmonic_set(int q);

// Fourier series coefficient H_q of the undelayed waveform. Exactly zero
// outside the radiating set; inside it the closed form collapses to
// 3/(pi*q) * e^{-j*pi/6} for every q (the sign of sin(pi*q/6) cancels
// against the segment-midpoint phase factor).
std::complex<double> fourier_coefficient(int q);

// Coefficient of the delayed waveform: H_q * e^{-j*2*pi*q*f_tma*delay}.
// The delay changes only the phase, never the magnitude.
std::complex<double> shifted_coefficient(int q, const LptmWaveform& w);

// Waveform value at time t: e^{j*2*pi*l/6} with l the index of the active
// sixth-of-period segment. Segments are half-open, so a sample landing on
// a boundary belongs to the later segment.
std::complex<double> sample_waveform(const LptmWaveform& w, double t);

struct SpectrumEntry {
    int q;
    std::complex<double> value; // exact zero when is_null
    bool is_null;               // q outside the radiating set: no line at all
    double rel_db;              // 20*log10(|H_q|/|H_1|); -inf when is_null
};

struct Spectrum {
    std::vector<SpectrumEntry> entries; // q = -q_max .. +q_max in order
    int reference_q = 1;                // 0 dB reference harmonic
};

// Two-sided spectrum of w for |q| <= q_max, normalized so q = +1 sits at
// exactly 0 dB. q_max must be >= 1.
Spectrum spectrum(const LptmWaveform& w, int q_max);

// Fraction of radiated power carried by the exploited q = +1 harmonic:
// (3/pi)^2, independent of fundamental, delay and element.
double efficiency();

// Partial power sum over the radiating harmonics with |q| <= q_max.
// Nondecreasing in q_max and -> 1 (the waveform has unit modulus).
double parseval_check(int q_max);

} // namespace tmafh
