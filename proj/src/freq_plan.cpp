#include "tmafh/freq_plan.hpp"

#include <cmath>
#include <string>

#include "tmafh/rng.hpp"

namespace tmafh {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

} // namespace

FrequencyPlan::FrequencyPlan(double f_c_hz, double delta_fsk_hz, int m_order,
                             int k_slots, int l_symbols_per_hop, double t_s_s)
    : f_c_(f_c_hz),
      delta_fsk_(delta_fsk_hz),
      m_order_(m_order),
      k_slots_(k_slots),
      l_symbols_(l_symbols_per_hop),
      t_s_(t_s_s) {
    if (!(f_c_hz > 0.0) || !std::isfinite(f_c_hz))
        throw PreconditionError("carrier frequency must be positive");
    if (!(delta_fsk_hz > 0.0) || !std::isfinite(delta_fsk_hz))
        throw PreconditionError("FSK tone spacing must be positive");
    if (m_order < 2 || !is_power_of_two(m_order))
        throw PreconditionError("FSK order M must be a power of two >= 2");
    if (k_slots < 1)
        throw PreconditionError("hop slot count K must be >= 1");
    if (l_symbols_per_hop < 1)
        throw PreconditionError("symbols per hop L must be >= 1");
    if (!(t_s_s > 0.0) || !std::isfinite(t_s_s))
        throw PreconditionError("symbol period must be positive");
    bits_per_symbol_ = 0;
    for (int v = m_order; v > 1; v >>= 1)
        ++bits_per_symbol_;
}

double tx_offset(const FrequencyPlan& plan, int m, int k) {
    if (m < 1 || m > plan.fsk_order())
        throw PreconditionError("tone index m out of range 1..M");
    if (k < 1 || k > plan.hop_slots())
        throw PreconditionError("hop index k out of range 1..K");
    return (static_cast<double>(m) +
            static_cast<double>(k - 1) * plan.fsk_order()) *
           plan.delta_fsk();
}

std::vector<int> hop_pattern(const FrequencyPlan& plan, int n_hops,
                             std::uint64_t seed) {
    if (n_hops < 1)
        throw PreconditionError("hop count must be >= 1");
    std::vector<int> ks(static_cast<std::size_t>(n_hops));
    Lcg64 rng(seed);
    const std::uint64_t k_slots = static_cast<std::uint64_t>(plan.hop_slots());
    for (auto& k : ks)
        k = 1 + static_cast<int>(rng.next_below(k_slots));
    return ks;
}

Schedule build_schedule(const FrequencyPlan& plan,
                        const std::vector<std::uint8_t>& bits,
                        std::uint64_t seed) {
    const int bps = plan.bits_per_symbol();
    if (bits.size() % static_cast<std::size_t>(bps) != 0)
        throw PreconditionError("bit count " + std::to_string(bits.size()) +
                                " is not a multiple of log2(M) = " +
                                std::to_string(bps));
    Schedule sched;
    sched.seed = seed;
    const std::size_t n_symbols = bits.size() / static_cast<std::size_t>(bps);
    if (n_symbols == 0)
        return sched;

    const int l = plan.symbols_per_hop();
    const int n_hops = static_cast<int>((n_symbols + l - 1) / l);
    const std::vector<int> hops = hop_pattern(plan, n_hops, seed);

    sched.entries.reserve(n_symbols);
    for (std::size_t i = 0; i < n_symbols; ++i) {
        int value = 0;
        for (int b = 0; b < bps; ++b) {
            const std::uint8_t bit = bits[i * bps + b];
            if (bit > 1)
                throw PreconditionError("bit values must be 0 or 1");
            value = (value << 1) | bit; // MSB first
        }
        ScheduleEntry e;
        e.m = value + 1;
        e.k = hops[i / static_cast<std::size_t>(l)];
        e.start_s = static_cast<double>(i) * plan.symbol_period();
        sched.entries.push_back(e);
    }
    return sched;
}

} // namespace tmafh
