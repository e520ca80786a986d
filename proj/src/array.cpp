#include "tmafh/array.hpp"

#include <algorithm>
#include <cmath>

namespace tmafh {

namespace {

std::complex<double> unit_phasor(double turns) {
    const double phase = 2.0 * kPi * turns;
    return {std::cos(phase), std::sin(phase)};
}

} // namespace

ArrayGeometry::ArrayGeometry(std::vector<double> positions,
                             PositionConvention convention)
    : positions_(std::move(positions)), convention_(convention) {
    if (positions_.empty())
        throw PreconditionError("array needs at least one element");
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (!std::isfinite(positions_[i]))
            throw PreconditionError("element positions must be finite");
        if (i > 0 && !(positions_[i] > positions_[i - 1]))
            throw PreconditionError("element positions must be strictly increasing");
    }
}

ArrayGeometry ArrayGeometry::uniform(int n_elements, double spacing_wl,
                                     PositionConvention convention) {
    if (n_elements < 1)
        throw PreconditionError("array needs at least one element");
    if (!(spacing_wl > 0.0))
        throw PreconditionError("element spacing must be positive");
    if (convention == PositionConvention::kCustom)
        throw PreconditionError("uniform geometry requires zero_based or one_based");
    std::vector<double> z(static_cast<std::size_t>(n_elements));
    const int base = convention == PositionConvention::kOneBased ? 1 : 0;
    for (int n = 0; n < n_elements; ++n)
        z[static_cast<std::size_t>(n)] = static_cast<double>(n + base) * spacing_wl;
    return ArrayGeometry(std::move(z), convention);
}

ArrayGeometry ArrayGeometry::custom(std::vector<double> positions_wl) {
    return ArrayGeometry(std::move(positions_wl), PositionConvention::kCustom);
}

DelaySchedule solve_delays(const ArrayGeometry& geom, Angle theta0,
                           double f_tma_hz) {
    if (!(f_tma_hz > 0.0) || !std::isfinite(f_tma_hz))
        throw PreconditionError("waveform fundamental must be positive");
    if (std::abs(theta0.degrees()) > 90.0 + 1e-12)
        throw PreconditionError("steering angle must lie in [-90, 90] degrees");
    DelaySchedule d;
    d.f_tma = f_tma_hz;
    d.sin_theta0 = theta0.sin();
    d.cycles.reserve(geom.positions().size());
    d.delays_s.reserve(geom.positions().size());
    for (const double z : geom.positions()) {
        const double x = z * d.sin_theta0;
        double frac = x - std::floor(x);
        if (frac >= 1.0)
            frac = 0.0; // fp guard: frac(x) must stay in [0, 1)
        d.cycles.push_back(frac);
        d.delays_s.push_back(frac / f_tma_hz);
    }
    return d;
}

std::int64_t delay_export_ns(double cycles, double f_tma_hz) {
    // Scale to ns before dividing: keeps dyadic cycle counts exact so the
    // .5 ties produced by nice geometries survive to the rounding step.
    const double ns = cycles * 1e9 / f_tma_hz;
    return static_cast<std::int64_t>(std::floor(ns + 0.5)); // half up
}

DelayTable::DelayTable(const ArrayGeometry& geom, const FrequencyPlan& plan,
                       Angle theta0)
    : m_order_(plan.fsk_order()), k_slots_(plan.hop_slots()), theta0_(theta0) {
    table_.reserve(static_cast<std::size_t>(m_order_) * k_slots_);
    for (int k = 1; k <= k_slots_; ++k)
        for (int m = 1; m <= m_order_; ++m)
            table_.push_back(solve_delays(geom, theta0, tx_offset(plan, m, k)));
}

const DelaySchedule& DelayTable::at(int m, int k) const {
    if (m < 1 || m > m_order_ || k < 1 || k > k_slots_)
        throw PreconditionError("delay table index out of range");
    return table_[static_cast<std::size_t>(k - 1) * m_order_ + (m - 1)];
}

std::complex<double> array_factor(const ArrayGeometry& geom,
                                  const DelaySchedule& sched, Angle theta) {
    if (sched.cycles.size() != geom.positions().size())
        throw PreconditionError("delay schedule does not match geometry");
    const double s = theta.sin();
    std::complex<double> af{0.0, 0.0};
    for (std::size_t n = 0; n < geom.positions().size(); ++n)
        af += unit_phasor(geom.positions()[n] * s - sched.cycles[n]);
    return af;
}

std::vector<double> steered_pattern(const ArrayGeometry& geom, Angle theta0,
                                    const std::vector<Angle>& theta_grid) {
    if (theta_grid.empty())
        throw PreconditionError("pattern grid must be nonempty");
    const double s0 = theta0.sin();
    const double n_elem = static_cast<double>(geom.size());
    std::vector<double> out;
    out.reserve(theta_grid.size());
    for (const Angle& theta : theta_grid) {
        const double s = theta.sin();
        std::complex<double> af{0.0, 0.0};
        for (const double z : geom.positions())
            af += unit_phasor(z * (s - s0));
        out.push_back(20.0 * std::log10(std::abs(af) / n_elem));
    }
    return out;
}

std::vector<double> harmonic_pattern(const ArrayGeometry& geom,
                                     const DelaySchedule& sched, int q,
                                     const std::vector<Angle>& theta_grid) {
    if (!in_harmonic_set(q))
        throw PreconditionError("harmonic order q outside the radiating set");
    if (theta_grid.empty())
        throw PreconditionError("pattern grid must be nonempty");
    if (sched.cycles.size() != geom.positions().size())
        throw PreconditionError("delay schedule does not match geometry");
    const std::complex<double> coeff = fourier_coefficient(q);
    const double peak = static_cast<double>(geom.size()) *
                        std::abs(fourier_coefficient(1));
    std::vector<double> out;
    out.reserve(theta_grid.size());
    for (const Angle& theta : theta_grid) {
        const double s = theta.sin();
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t n = 0; n < geom.positions().size(); ++n)
            sum += coeff * unit_phasor(geom.positions()[n] * s -
                                       static_cast<double>(q) * sched.cycles[n]);
        out.push_back(20.0 * std::log10(std::abs(sum) / peak));
    }
    return out;
}

std::vector<std::complex<double>> synthesize_symbol(
    const ArrayGeometry& geom, const DelaySchedule& delays, Angle theta,
    int n_samples, double t_s) {
    if (n_samples < 1)
        throw PreconditionError("symbol sample count must be >= 1");
    if (!(t_s > 0.0))
        throw PreconditionError("symbol period must be positive");
    if (delays.cycles.size() != geom.positions().size())
        throw PreconditionError("delay schedule does not match geometry");

    const std::size_t n_elem = geom.positions().size();
    const double s = theta.sin();
    std::vector<LptmWaveform> waves;
    std::vector<std::complex<double>> spatial;
    waves.reserve(n_elem);
    spatial.reserve(n_elem);
    for (std::size_t n = 0; n < n_elem; ++n) {
        waves.emplace_back(delays.f_tma, delays.delays_s[n]);
        spatial.push_back(unit_phasor(geom.positions()[n] * s));
    }

    std::vector<std::complex<double>> out(static_cast<std::size_t>(n_samples));
    const double dt = t_s / static_cast<double>(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t n = 0; n < n_elem; ++n)
            acc += sample_waveform(waves[n], t) * spatial[n];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

std::vector<std::complex<double>> radiated_signal(
    const ArrayGeometry& geom, const FrequencyPlan& plan,
    const Schedule& schedule, const DelayTable& delays, Angle theta,
    double sample_rate_hz, double duration_s, int q_max) {
    if (schedule.entries.empty())
        throw PreconditionError("schedule is empty");
    if (q_max < 1)
        throw PreconditionError("q_max must be >= 1");
    double f_tma_max = 0.0;
    for (const ScheduleEntry& e : schedule.entries)
        f_tma_max = std::max(f_tma_max, tx_offset(plan, e.m, e.k));
    const double min_rate = 4.0 * static_cast<double>(q_max) * f_tma_max;
    if (!(sample_rate_hz >= min_rate))
        throw PreconditionError(
            "sample rate too low for the requested harmonic content");
    const double span =
        static_cast<double>(schedule.entries.size()) * plan.symbol_period();
    if (!(duration_s > 0.0) || duration_s > span * (1.0 + 1e-12))
        throw PreconditionError("duration must lie within the schedule span");

    const std::size_t n_total = static_cast<std::size_t>(
        std::llround(duration_s * sample_rate_hz));
    const double t_s = plan.symbol_period();
    const double s = theta.sin();
    const std::size_t n_elem = geom.positions().size();

    std::vector<std::complex<double>> spatial(n_elem);
    for (std::size_t n = 0; n < n_elem; ++n)
        spatial[n] = unit_phasor(geom.positions()[n] * s);

    std::vector<std::complex<double>> out(n_total);
    std::ptrdiff_t active = -1;
    std::vector<LptmWaveform> waves;
    for (std::size_t i = 0; i < n_total; ++i) {
        const double t = static_cast<double>(i) / sample_rate_hz;
        std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t / t_s);
        idx = std::min<std::ptrdiff_t>(
            idx, static_cast<std::ptrdiff_t>(schedule.entries.size()) - 1);
        if (idx != active) {
            const ScheduleEntry& e = schedule.entries[static_cast<std::size_t>(idx)];
            const DelaySchedule& d = delays.at(e.m, e.k);
            waves.clear();
            for (std::size_t n = 0; n < n_elem; ++n)
                waves.emplace_back(d.f_tma, d.delays_s[n]);
            active = idx;
        }
        const double tau = t - static_cast<double>(active) * t_s;
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t n = 0; n < n_elem; ++n)
            acc += sample_waveform(waves[n], tau) * spatial[n];
        out[i] = acc;
    }
    return out;
}

} // namespace tmafh
