#include "tmafh/link.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "tmafh/rng.hpp"
#include "tmafh/waveform.hpp"

namespace tmafh {

namespace {

double checked_efficiency(const LinkBudget& b) {
    const double eta = b.tma_efficiency == 0.0 ? efficiency() : b.tma_efficiency;
    if (!(eta > 0.0) || eta > 1.0)
        throw PreconditionError("time-modulation efficiency must lie in (0, 1]");
    return eta;
}

} // namespace

BudgetResult budget(const LinkBudget& b) {
    for (const double loss :
         {b.mux_db, b.mixer_db, b.bpf_db, b.vps_db, b.spdt_db})
        if (!(loss >= 0.0) || !std::isfinite(loss))
            throw PreconditionError("component losses must be >= 0 dB");
    const double eta = checked_efficiency(b);
    BudgetResult r;
    r.eta_conv_db = b.mux_db + b.mixer_db + b.bpf_db + b.vps_db;
    r.eta_tma_db = -10.0 * std::log10(eta) + 6.0 * b.spdt_db;
    r.delta_db = r.eta_tma_db - r.eta_conv_db;
    return r;
}

std::vector<std::complex<double>> awgn(
    const std::vector<std::complex<double>>& samples, double es_n0_db,
    int samples_per_symbol, std::uint64_t seed) {
    if (samples.empty())
        throw PreconditionError("awgn input stream is empty");
    if (samples_per_symbol < 1)
        throw PreconditionError("samples per symbol must be >= 1");
    if (std::isinf(es_n0_db) && es_n0_db > 0.0)
        return samples; // noise disabled

    double energy = 0.0;
    for (const auto& s : samples)
        energy += std::norm(s);
    const double n_symbols =
        static_cast<double>(samples.size()) / samples_per_symbol;
    const double es = energy / n_symbols;
    const double sigma2 = es / std::pow(10.0, es_n0_db / 10.0);
    const double sigma = std::sqrt(sigma2);

    Lcg64 rng(seed);
    std::vector<std::complex<double>> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = samples[i] + sigma * rng.next_complex_gaussian();
    return out;
}

int demod_mfsk(const std::vector<std::complex<double>>& rx,
               const FrequencyPlan& plan, int k, double sample_rate_hz) {
    if (k < 1 || k > plan.hop_slots())
        throw PreconditionError("hop index k out of range 1..K");
    if (!(sample_rate_hz > 0.0))
        throw PreconditionError("sample rate must be positive");
    const auto expected = static_cast<std::size_t>(
        std::llround(plan.symbol_period() * sample_rate_hz));
    if (rx.size() != expected || rx.empty())
        throw PreconditionError("rx must span exactly one symbol period");

    int best_m = 1;
    double best_metric = -1.0;
    for (int m = 1; m <= plan.fsk_order(); ++m) {
        const double f = tx_offset(plan, m, k);
        const double step = -2.0 * kPi * f / sample_rate_hz;
        std::complex<double> corr{0.0, 0.0};
        for (std::size_t i = 0; i < rx.size(); ++i) {
            const double phase = step * static_cast<double>(i);
            corr += rx[i] * std::complex<double>{std::cos(phase), std::sin(phase)};
        }
        const double metric = std::norm(corr);
        if (metric > best_metric) {
            best_metric = metric;
            best_m = m;
        }
    }
    return best_m;
}

double theoretical_ser(int m_order, double es_n0_linear) {
    if (m_order < 2 || (m_order & (m_order - 1)) != 0)
        throw PreconditionError("FSK order M must be a power of two >= 2");
    if (!(es_n0_linear >= 0.0))
        throw PreconditionError("Es/N0 must be >= 0");
    double ser = 0.0;
    double binom = 1.0; // C(M-1, i), updated incrementally
    for (int i = 1; i <= m_order - 1; ++i) {
        binom *= static_cast<double>(m_order - i) / i;
        const double term = binom / (i + 1.0) *
                            std::exp(-static_cast<double>(i) * es_n0_linear /
                                     (i + 1.0));
        ser += (i % 2 == 1) ? term : -term;
    }
    return ser;
}

double theoretical_ber(int m_order, double eb_n0_db) {
    int bps = 0;
    for (int v = m_order; v > 1; v >>= 1)
        ++bps;
    const double es_n0 = bps * std::pow(10.0, eb_n0_db / 10.0);
    const double ser = theoretical_ser(m_order, es_n0);
    return ser * (m_order / 2.0) / (m_order - 1.0);
}

namespace {

struct BlockResult {
    long long bit_errors = 0;
    long long symbol_errors = 0;
};

constexpr long long kTrialsPerBlock = 4096;

// Everything fixed across trials of one curve: per-(m,k) noiseless symbol
// templates, detection tone tables, and template-tone correlations.
struct CurveContext {
    int m_order = 0;
    int k_slots = 0;
    int bps = 0;
    int n_samples = 0;
    // tone[(k-1)*M + m-1][i] = e^{+j 2 pi f_mk t_i}
    std::vector<std::vector<std::complex<double>>> tones;
    // template symbol per (m,k), unscaled
    std::vector<std::vector<std::complex<double>>> symbols;
    // |sum_i symbol_mk[i] * conj(tone_mk[i])|: detector signal magnitude
    std::vector<double> useful;
};

BlockResult run_block(const CurveContext& ctx, double alpha_scale,
                      std::uint64_t block_seed, long long n_trials) {
    BlockResult res;
    Lcg64 rng(block_seed);
    std::vector<std::complex<double>> rx(
        static_cast<std::size_t>(ctx.n_samples));
    for (long long trial = 0; trial < n_trials; ++trial) {
        const int m = 1 + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(ctx.m_order)));
        const int k = 1 + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(ctx.k_slots)));
        const std::size_t mk =
            static_cast<std::size_t>(k - 1) * ctx.m_order + (m - 1);
        const std::vector<std::complex<double>>& tpl = ctx.symbols[mk];
        const double alpha = alpha_scale / ctx.useful[mk];
        for (std::size_t i = 0; i < rx.size(); ++i)
            rx[i] = alpha * tpl[i] + rng.next_complex_gaussian();

        int best_m = 1;
        double best_metric = -1.0;
        for (int cand = 1; cand <= ctx.m_order; ++cand) {
            const std::vector<std::complex<double>>& tone =
                ctx.tones[static_cast<std::size_t>(k - 1) * ctx.m_order +
                          (cand - 1)];
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < rx.size(); ++i) {
                // rx[i] * conj(tone[i])
                re += rx[i].real() * tone[i].real() + rx[i].imag() * tone[i].imag();
                im += rx[i].imag() * tone[i].real() - rx[i].real() * tone[i].imag();
            }
            const double metric = re * re + im * im;
            if (metric > best_metric) {
                best_metric = metric;
                best_m = cand;
            }
        }
        if (best_m != m) {
            ++res.symbol_errors;
            res.bit_errors +=
                __builtin_popcount(static_cast<unsigned>((best_m - 1) ^ (m - 1)));
        }
    }
    return res;
}

} // namespace

std::vector<BerPoint> ber_curve(const FrequencyPlan& plan,
                                const ArrayGeometry& geom, Angle theta0,
                                const LinkBudget& budget_in,
                                const BerRunParams& params) {
    if (params.ebn0_grid_db.empty())
        throw PreconditionError("Eb/N0 grid is empty");
    for (const double x : params.ebn0_grid_db)
        if (!std::isfinite(x))
            throw PreconditionError("Eb/N0 grid values must be finite");
    if (params.n_trials < 1000)
        throw PreconditionError("Monte Carlo needs at least 1000 trials per point");

    // Closed-form reference assumes orthogonal signaling.
    const double cycles = plan.delta_fsk() * plan.symbol_period();
    if (std::abs(cycles - std::round(cycles)) > 1e-9 * std::max(1.0, cycles) ||
        std::round(cycles) < 1.0)
        throw PreconditionError(
            "tone spacing is not orthogonal: delta_fsk * T_s must be a "
            "positive integer");
    const double top_tone_cycles =
        cycles * plan.fsk_order() * plan.hop_slots();
    if (params.samples_per_symbol <= 2.0 * top_tone_cycles)
        throw PreconditionError("samples per symbol below Nyquist for the "
                                "highest tone");

    const double advantage_db =
        params.scheme == Scheme::kTma ? -budget(budget_in).delta_db : 0.0;

    CurveContext ctx;
    ctx.m_order = plan.fsk_order();
    ctx.k_slots = plan.hop_slots();
    ctx.bps = plan.bits_per_symbol();
    ctx.n_samples = params.samples_per_symbol;
    const std::size_t n_pairs =
        static_cast<std::size_t>(ctx.m_order) * ctx.k_slots;
    ctx.tones.resize(n_pairs);
    ctx.symbols.resize(n_pairs);
    ctx.useful.resize(n_pairs);

    const double t_s = plan.symbol_period();
    const bool exact_waveforms =
        params.scheme == Scheme::kTma && !params.tma_first_harmonic_only;
    const DelayTable delays(geom, plan, theta0);
    for (int k = 1; k <= ctx.k_slots; ++k) {
        for (int m = 1; m <= ctx.m_order; ++m) {
            const std::size_t mk =
                static_cast<std::size_t>(k - 1) * ctx.m_order + (m - 1);
            const double f = tx_offset(plan, m, k);
            std::vector<std::complex<double>>& tone = ctx.tones[mk];
            tone.resize(static_cast<std::size_t>(ctx.n_samples));
            for (int i = 0; i < ctx.n_samples; ++i) {
                const double phase =
                    2.0 * kPi * f * (static_cast<double>(i) * t_s / ctx.n_samples);
                tone[static_cast<std::size_t>(i)] = {std::cos(phase),
                                                     std::sin(phase)};
            }
            ctx.symbols[mk] =
                exact_waveforms
                    ? synthesize_symbol(geom, delays.at(m, k), theta0,
                                        ctx.n_samples, t_s)
                    : tone;
            std::complex<double> u{0.0, 0.0};
            for (int i = 0; i < ctx.n_samples; ++i)
                u += ctx.symbols[mk][static_cast<std::size_t>(i)] *
                     std::conj(tone[static_cast<std::size_t>(i)]);
            ctx.useful[mk] = std::abs(u);
            if (!(ctx.useful[mk] > 1e-9 * ctx.n_samples))
                throw PreconditionError(
                    "synthesized symbol has no energy on its own tone");
        }
    }

    const int n_threads = std::max(1, params.n_threads);
    const long long n_blocks =
        (params.n_trials + kTrialsPerBlock - 1) / kTrialsPerBlock;

    std::vector<BerPoint> out;
    out.reserve(params.ebn0_grid_db.size());
    for (std::size_t p = 0; p < params.ebn0_grid_db.size(); ++p) {
        const double ebn0 = params.ebn0_grid_db[p];
        const double eff_ebn0 = ebn0 + advantage_db;
        const double es_n0 = ctx.bps * std::pow(10.0, eff_ebn0 / 10.0);
        // Calibrate so the detector-statistic SNR equals es_n0: the signal
        // part of the matched correlator is alpha*|U| and its noise part
        // has variance n_samples (unit noise per sample).
        const double alpha_scale =
            std::sqrt(es_n0 * static_cast<double>(ctx.n_samples));

        std::vector<BlockResult> blocks(static_cast<std::size_t>(n_blocks));
        auto worker = [&](int tid) {
            for (long long b = tid; b < n_blocks; b += n_threads) {
                const long long first = b * kTrialsPerBlock;
                const long long count =
                    std::min(kTrialsPerBlock, params.n_trials - first);
                const std::uint64_t stream =
                    (static_cast<std::uint64_t>(p) << 32) |
                    static_cast<std::uint64_t>(b);
                blocks[static_cast<std::size_t>(b)] =
                    run_block(ctx, alpha_scale,
                              derive_seed(params.seed, stream), count);
            }
        };
        if (n_threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(n_threads));
            for (int t = 0; t < n_threads; ++t)
                pool.emplace_back(worker, t);
            for (auto& th : pool)
                th.join();
        }

        long long bit_errors = 0;
        for (const BlockResult& b : blocks)
            bit_errors += b.bit_errors;

        BerPoint pt;
        pt.scheme = params.scheme;
        pt.ebn0_db = ebn0;
        pt.n_trials = params.n_trials;
        const double n_bits =
            static_cast<double>(params.n_trials) * ctx.bps;
        pt.ber_mc = static_cast<double>(bit_errors) / n_bits;
        pt.ber_theory = theoretical_ber(ctx.m_order, eff_ebn0);
        const double half =
            1.959963984540054 *
            std::sqrt(std::max(pt.ber_mc * (1.0 - pt.ber_mc), 0.0) / n_bits);
        pt.ci95_lo = std::max(0.0, pt.ber_mc - half);
        pt.ci95_hi = std::min(1.0, pt.ber_mc + half);
        out.push_back(pt);
    }
    return out;
}

} // namespace tmafh
