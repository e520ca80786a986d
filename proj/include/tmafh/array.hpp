// array.hpp - linear-array beamsteering with delayed modulating waveforms.
//
// Element n applies the common six-level waveform delayed by D_n. Because
// the first-harmonic phase is proportional to the delay, choosing
//   D_n = frac(z_n * sin(theta0)) / f_tma
// makes e^{j*2*pi*f_tma*D_n} equal e^{j*2*pi*z_n*sin(theta0)} and points
// the beam at theta0. Positions z_n are in carrier wavelengths. Delays are
// re-solved for every (m, k) because the fundamental moves with the tone.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tmafh/angles.hpp"
#include "tmafh/errors.hpp"
#include "tmafh/freq_plan.hpp"
#include "tmafh/waveform.hpp"

namespace tmafh {

enum class PositionConvention {
    kZeroBased, // z_n = (n - 1) * d, element 1 at the origin
    kOneBased,  // z_n = n * d, element 1 one spacing off the origin
    kCustom,    // explicit position list
};

class ArrayGeometry {
public:
    static ArrayGeometry uniform(int n_elements, double spacing_wl,
                                 PositionConvention convention);
    static ArrayGeometry custom(std::vector<double> positions_wl);

    int size() const { return static_cast<int>(positions_.size()); }
    const std::vector<double>& positions() const { return positions_; }
    PositionConvention convention() const { return convention_; }

private:
    ArrayGeometry(std::vector<double> positions, PositionConvention convention);

    std::vector<double> positions_; // z_n / lambda_c, strictly increasing
    PositionConvention convention_;
};

// Per-element steering delays for one (m, k) waveform frequency.
struct DelaySchedule {
    double f_tma = 0.0;
    double sin_theta0 = 0.0;
    std::vector<double> cycles;   // frac(z_n * sin theta0) in [0, 1)
    std::vector<double> delays_s; // cycles / f_tma, in [0, period)
};

// Solves D_n = frac(z_n sin theta0) / f_tma. |theta0| <= 90 deg.
DelaySchedule solve_delays(const ArrayGeometry& geom, Angle theta0,
                           double f_tma_hz);

// Nanosecond value of one delay as written to delay tables: the fractional
// cycle count is scaled to ns before dividing by the frequency, and ties
// round half up, so dyadic-exact cases like 312.5 ns export as 313.
std::int64_t delay_export_ns(double cycles, double f_tma_hz);

// Delays for every (m, k) pair of a plan, solved at the pair's tone
// frequency f_tma = tx_offset(m, k).
class DelayTable {
public:
    DelayTable(const ArrayGeometry& geom, const FrequencyPlan& plan,
               Angle theta0);

    const DelaySchedule& at(int m, int k) const;
    Angle theta0() const { return theta0_; }

private:
    int m_order_;
    int k_slots_;
    Angle theta0_;
    std::vector<DelaySchedule> table_; // index (k-1)*M + (m-1)
};

// First-harmonic spatial array factor at observation angle theta:
// sum_n e^{j*2*pi*(z_n sin theta - f_tma D_n)}. Equals N at the steered
// direction when the delays come from solve_delays.
std::complex<double> array_factor(const ArrayGeometry& geom,
                                  const DelaySchedule& sched, Angle theta);

// Relative power pattern 20*log10(|AF(theta)|/N) of a beam steered to
// theta0, evaluated on a grid of angles.
std::vector<double> steered_pattern(const ArrayGeometry& geom, Angle theta0,
                                    const std::vector<Angle>& theta_grid);

// Spatial pattern of harmonic order q (q in the radiating set), in dB
// relative to the q = 1 peak N*|H_1|.
std::vector<double> harmonic_pattern(const ArrayGeometry& geom,
                                     const DelaySchedule& sched, int q,
                                     const std::vector<Angle>& theta_grid);

// Exact stair-step samples of one symbol observed at theta: n_samples
// points t_i = i * t_s / n_samples with the waveform restarted at phase
// step 0 at the symbol start.
std::vector<std::complex<double>> synthesize_symbol(
    const ArrayGeometry& geom, const DelaySchedule& delays, Angle theta,
    int n_samples, double t_s);

// Baseband-equivalent radiated signal across a schedule: per-symbol exact
// waveforms (all harmonics, phase restart at each symbol boundary) summed
// over elements with the spatial phase for observation angle theta.
// Rejects sample rates below 4x the harmonic bandwidth q_max * max f_tma
// and durations past the end of the schedule.
std::vector<std::complex<double>> radiated_signal(
    const ArrayGeometry& geom, const FrequencyPlan& plan,
    const Schedule& schedule, const DelayTable& delays, Angle theta,
    double sample_rate_hz, double duration_s, int q_max = 97);

} // namespace tmafh
