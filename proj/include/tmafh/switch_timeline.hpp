// switch_timeline.hpp - hardware-facing switch-state tables.
//
// The feeding network realizes the six-level waveform by cycling a switch
// through phase states 0..5 (60 degrees each) every sixth of a period.
// This module compiles a waveform (frequency + delay) into the absolute
// picosecond timeline of those states over a control window.
//
// Times are integer picoseconds. Boundary i of the state cycle is
// round(delay_offset_ps + i * period_ps / 6), each boundary rounded
// independently so fractional periods never accumulate drift.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tmafh/array.hpp"
#include "tmafh/errors.hpp"
#include "tmafh/waveform.hpp"

namespace tmafh {

struct SwitchSegment {
    int element;             // 1-based element index; 0 for a bare waveform
    std::int64_t t_start_ps; // inclusive
    std::int64_t t_end_ps;   // exclusive
    int phase_state;         // 0..5, phase = state * 60 degrees

    double start_seconds() const { return static_cast<double>(t_start_ps) * 1e-12; }
    double end_seconds() const { return static_cast<double>(t_end_ps) * 1e-12; }
};

// Switch states of one waveform over [0, window). Segments tile the window
// with no gaps or overlaps; every segment spans one sixth of a period
// except a cyclic cut at the window edges; consecutive states step by one
// modulo six.
std::vector<SwitchSegment> build_timeline(const LptmWaveform& w,
                                          double window_s, int element = 0);

// Timelines for all elements of a steered array at one (m, k) waveform
// frequency, element ids 1..N, concatenated in element order.
std::vector<SwitchSegment> build_array_timeline(const DelaySchedule& delays,
                                                double window_s);

// Reconstructs waveform samples from a single-element timeline at the
// n_samples segment-interior midpoints (i + 0.5) * window / n of its
// window. Validates the tiling and rejects gaps, overlaps, or a grid too
// fine for the picosecond raster. Values equal sample_waveform of the
// originating waveform at the same instants.
std::vector<std::complex<double>> timeline_to_waveform(
    const std::vector<SwitchSegment>& segments, int n_samples);

} // namespace tmafh
