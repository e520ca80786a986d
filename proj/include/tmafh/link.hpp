// link.hpp - end-to-end link evaluation.
//
// AWGN channel, noncoherent MFSK energy detection, the closed-form
// noncoherent orthogonal-MFSK error rate as reference, the transmit-chain
// insertion-loss budget of the switched-array scheme versus a conventional
// mixer/phase-shifter chain, and seeded Monte Carlo BER curves for both.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tmafh/angles.hpp"
#include "tmafh/array.hpp"
#include "tmafh/errors.hpp"
#include "tmafh/freq_plan.hpp"

namespace tmafh {

// Component insertion losses (dB) and the time-modulation efficiency that
// enter the two transmit-chain budgets.
struct LinkBudget {
    double mux_db = 0.7;
    double mixer_db = 4.5;
    double bpf_db = 2.0;
    double vps_db = 4.0;
    double spdt_db = 0.5;
    double tma_efficiency = 0.0; // eta in (0,1]; 0 selects the waveform value
};

struct BudgetResult {
    double eta_conv_db; // mux + mixer + bpf + vps
    double eta_tma_db;  // -10*log10(eta_tm) + 6 * spdt
    double delta_db;    // eta_tma - eta_conv (negative favors the array)
};

BudgetResult budget(const LinkBudget& b);

// Adds circularly symmetric complex Gaussian noise so that the average
// per-symbol signal energy over the noise PSD equals es_n0_db. A symbol is
// samples_per_symbol consecutive samples. Passing +infinity disables the
// noise. Deterministic per seed.
std::vector<std::complex<double>> awgn(
    const std::vector<std::complex<double>>& samples, double es_n0_db,
    int samples_per_symbol, std::uint64_t seed);

// Noncoherent energy detection of one symbol: correlates rx against the M
// tones of hop slot k and returns the index m (1..M) with the largest
// |correlation|^2, ties broken toward smaller m. rx must span exactly one
// symbol period at sample_rate_hz.
int demod_mfsk(const std::vector<std::complex<double>>& rx,
               const FrequencyPlan& plan, int k, double sample_rate_hz);

// Symbol error probability of noncoherent orthogonal M-FSK at the given
// linear Es/N0:
//   P_s = sum_{i=1}^{M-1} (-1)^{i+1} C(M-1,i)/(i+1) exp(-i*es_n0/(i+1)).
double theoretical_ser(int m_order, double es_n0_linear);

// Corresponding bit error probability at Eb/N0 given in dB:
// BER = P_s * (M/2)/(M-1) with Es/N0 = log2(M) * Eb/N0.
double theoretical_ber(int m_order, double eb_n0_db);

enum class Scheme {
    kConventional, // pure complex-exponential tones
    kTma,          // exact switched waveforms observed at theta0
};

struct BerPoint {
    Scheme scheme;
    double ebn0_db;     // received SNR per bit, conventional-chain reference
    double ber_mc;
    double ber_theory;  // closed form at the scheme's effective Eb/N0
    long long n_trials;
    double ci95_lo;
    double ci95_hi;
};

struct BerRunParams {
    std::vector<double> ebn0_grid_db;
    long long n_trials = 100000;        // per grid point, >= 1000
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::kConventional;
    int samples_per_symbol = 192;
    int n_threads = 1;
    // Diagnostic: synthesize only the exploited first harmonic for the
    // switched scheme (unwanted harmonics removed from the received
    // signal). Default keeps the exact waveforms.
    bool tma_first_harmonic_only = false;
};

// Monte Carlo BER over the Eb/N0 grid. The conventional scheme runs at the
// grid value; the switched scheme runs at grid - delta_db (the insertion
// loss advantage appears as reduced front-end loss at equal PA drive;
// the harmonic energy loss is inside eta_tma already, so symbols are
// calibrated on the exploited-harmonic detector statistic). Tone spacing
// must be orthogonal (delta_fsk * T_s integer). Noise is added at complex
// baseband after beam observation at theta0. Trials run in fixed 4096-
// trial blocks with seeds derived per (grid point, block), so results are
// bit-identical for any n_threads.
std::vector<BerPoint> ber_curve(const FrequencyPlan& plan,
                                const ArrayGeometry& geom, Angle theta0,
                                const LinkBudget& budget_in,
                                const BerRunParams& params);

} // namespace tmafh
