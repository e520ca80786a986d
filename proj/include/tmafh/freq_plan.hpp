// freq_plan.hpp - FH-MFSK frequency lattice and slow-hop scheduling.
//
// Tone layout: the M FSK tones inside hop slot k sit at the carrier offset
//   offset(m, k) = [m + (k - 1) * M] * delta_fsk,   m = 1..M, k = 1..K,
// so all M*K tones are distinct multiples of delta_fsk spanning (0, W] with
// W = K * M * delta_fsk. The hop spacing is tied to the tone spacing
// (delta_fh = M * delta_fsk) and slot 1 starts at 0 Hz. A hop lasts
// T_h = L * T_s, i.e. L symbols.

#pragma once

#include <cstdint>
#include <vector>

#include "tmafh/errors.hpp"

namespace tmafh {

class FrequencyPlan {
public:
    // f_c: carrier in Hz. delta_fsk: tone spacing in Hz. M: FSK order
    // (power of two >= 2). K: hop slot count. L: symbols per hop.
    // T_s: symbol period in seconds.
    FrequencyPlan(double f_c_hz, double delta_fsk_hz, int m_order, int k_slots,
                  int l_symbols_per_hop, double t_s_s);

    double f_c() const { return f_c_; }
    double delta_fsk() const { return delta_fsk_; }
    int fsk_order() const { return m_order_; }
    int hop_slots() const { return k_slots_; }
    int symbols_per_hop() const { return l_symbols_; }
    double symbol_period() const { return t_s_; }

    double delta_fh() const { return m_order_ * delta_fsk_; }
    double hop_period() const { return l_symbols_ * t_s_; }
    double fsk_bandwidth() const { return m_order_ * delta_fsk_; }
    double total_bandwidth() const { return k_slots_ * m_order_ * delta_fsk_; }
    int bits_per_symbol() const { return bits_per_symbol_; }

private:
    double f_c_;
    double delta_fsk_;
    int m_order_;
    int k_slots_;
    int l_symbols_;
    double t_s_;
    int bits_per_symbol_;
};

// Carrier-relative transmit offset of tone m in hop slot k (Hz).
double tx_offset(const FrequencyPlan& plan, int m, int k);

// Pseudo-random hop slot sequence, each entry uniform over 1..K. Driven by
// the pinned Lcg64 generator (see rng.hpp); one draw per hop. Golden test
// vectors freeze the exact sequence.
std::vector<int> hop_pattern(const FrequencyPlan& plan, int n_hops,
                             std::uint64_t seed);

struct ScheduleEntry {
    int m;          // FSK symbol index, 1..M
    int k;          // hop slot index, 1..K
    double start_s; // i * T_s
};

struct Schedule {
    std::vector<ScheduleEntry> entries;
    std::uint64_t seed = 0;
};

// Maps a bit stream onto per-symbol (m, k) assignments. Bits are grouped
// MSB-first into log2(M)-bit symbols (m = value + 1); hop slots come from
// hop_pattern with each hop covering L consecutive symbols, the final hop
// possibly partial. Bit count must be a multiple of log2(M); bits must be
// 0 or 1.
Schedule build_schedule(const FrequencyPlan& plan,
                        const std::vector<std::uint8_t>& bits,
                        std::uint64_t seed);

} // namespace tmafh
