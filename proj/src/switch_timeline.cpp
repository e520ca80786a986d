#include "tmafh/switch_timeline.hpp"

#include <algorithm>
#include <cmath>

namespace tmafh {

std::vector<SwitchSegment> build_timeline(const LptmWaveform& w,
                                          double window_s, int element) {
    if (!(window_s > 0.0) || !std::isfinite(window_s))
        throw PreconditionError("timeline window must be positive");
    const std::int64_t window_ps = std::llround(window_s * 1e12);
    if (window_ps < 1)
        throw PreconditionError("timeline window shorter than 1 ps");
    const double period_ps = 1e12 / w.f_tma();
    const double seg_ps = period_ps / 6.0;
    if (seg_ps < 2.0)
        throw PreconditionError("switching faster than the picosecond raster");
    if (static_cast<double>(window_ps) / seg_ps > 6e6)
        throw PreconditionError("window spans more than one million periods; "
                                "split the control table");

    // Split the delay into whole segments (j) and the in-segment offset.
    const double seg_s = w.period() / 6.0;
    const double offset_s = std::fmod(w.delay(), seg_s); // exact remainder
    const int j = static_cast<int>(std::llround((w.delay() - offset_s) / seg_s));
    const double offset_ps = offset_s * 1e12;
    // State of the segment starting at the offset boundary; the waveform's
    // state at t = offset is floor(((offset - delay) mod T) / (T/6)) which
    // collapses to (6 - j) mod 6.
    const int state_at_offset = (6 - j) % 6;

    std::vector<SwitchSegment> out;
    out.reserve(static_cast<std::size_t>(
        static_cast<double>(window_ps) / seg_ps + 3.0));

    const auto boundary = [&](std::int64_t i) {
        return std::llround(offset_ps + static_cast<double>(i) * seg_ps);
    };

    const std::int64_t b0 = boundary(0);
    if (b0 > 0) {
        // Tail of the segment that began one step before the offset.
        out.push_back(SwitchSegment{element, 0,
                                    std::min<std::int64_t>(b0, window_ps),
                                    (state_at_offset + 5) % 6});
    }
    for (std::int64_t i = 0;; ++i) {
        const std::int64_t start = std::max<std::int64_t>(boundary(i), 0);
        if (start >= window_ps)
            break;
        const std::int64_t end =
            std::min<std::int64_t>(boundary(i + 1), window_ps);
        if (end > start)
            out.push_back(SwitchSegment{
                element, start, end,
                static_cast<int>((state_at_offset + i % 6 + 6) % 6)});
    }
    return out;
}

std::vector<SwitchSegment> build_array_timeline(const DelaySchedule& delays,
                                                double window_s) {
    std::vector<SwitchSegment> out;
    for (std::size_t n = 0; n < delays.delays_s.size(); ++n) {
        const LptmWaveform w(delays.f_tma, delays.delays_s[n]);
        std::vector<SwitchSegment> one =
            build_timeline(w, window_s, static_cast<int>(n) + 1);
        out.insert(out.end(), one.begin(), one.end());
    }
    return out;
}

std::vector<std::complex<double>> timeline_to_waveform(
    const std::vector<SwitchSegment>& segments, int n_samples) {
    if (segments.empty())
        throw PreconditionError("timeline is empty");
    if (n_samples < 1)
        throw PreconditionError("sample count must be >= 1");

    const int element = segments.front().element;
    if (segments.front().t_start_ps != 0)
        throw PreconditionError("timeline does not start at t = 0");
    std::int64_t cursor = 0;
    for (const SwitchSegment& s : segments) {
        if (s.element != element)
            throw PreconditionError("timeline mixes elements");
        if (s.t_start_ps > cursor)
            throw PreconditionError("timeline has a gap");
        if (s.t_start_ps < cursor)
            throw PreconditionError("timeline segments overlap");
        if (s.t_end_ps <= s.t_start_ps)
            throw PreconditionError("timeline segment is empty");
        if (s.phase_state < 0 || s.phase_state >= kPhaseLevels)
            throw PreconditionError("timeline phase state out of range");
        cursor = s.t_end_ps;
    }
    const std::int64_t window_ps = cursor;
    const double step_ps =
        static_cast<double>(window_ps) / static_cast<double>(n_samples);
    if (step_ps < 4.0)
        throw PreconditionError("sampling grid finer than the picosecond raster");

    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(n_samples));
    std::size_t seg = 0;
    for (int i = 0; i < n_samples; ++i) {
        const double t_ps = (static_cast<double>(i) + 0.5) * step_ps;
        while (static_cast<double>(segments[seg].t_end_ps) <= t_ps)
            ++seg;
        out.push_back(phase_step_value(segments[seg].phase_state));
    }
    return out;
}

} // namespace tmafh
