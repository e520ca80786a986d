#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "support/oracles.hpp"
#include "tmafh/link.hpp"
#include "tmafh/rng.hpp"
#include "tmafh/waveform.hpp"

using tmafh::Angle;
using tmafh::ArrayGeometry;
using tmafh::FrequencyPlan;
using tmafh::LinkBudget;
using tmafh::PositionConvention;
using tmafh::Scheme;
using std::complex;

namespace {

// Orthogonal-by-construction simulation plan: delta_fsk * T_s = 1.
FrequencyPlan sim_plan(int m_order = 4, int k_slots = 6) {
    return FrequencyPlan(2.5e9, 50e3, m_order, k_slots, 4, 2e-5);
}

ArrayGeometry half_wave(int n) {
    return ArrayGeometry::uniform(n, 0.5, PositionConvention::kZeroBased);
}

} // namespace

TEST_CASE("budget reproduces the component arithmetic") {
    LinkBudget b; // defaults: 0.7, 4.5, 2, 4, 0.5; analytic efficiency
    const tmafh::BudgetResult r = tmafh::budget(b);
    CHECK(r.eta_conv_db == doctest::Approx(11.2).epsilon(1e-12));
    CHECK(r.eta_tma_db == doctest::Approx(3.4).epsilon(5e-4));
    CHECK(r.delta_db == doctest::Approx(-7.8).epsilon(5e-4));

    b.tma_efficiency = 0.912;
    const tmafh::BudgetResult rp = tmafh::budget(b);
    CHECK(rp.eta_tma_db ==
          doctest::Approx(-10.0 * std::log10(0.912) + 3.0).epsilon(1e-12));
    CHECK(rp.eta_tma_db == doctest::Approx(3.4).epsilon(5e-4));

    LinkBudget lossless;
    lossless.mux_db = lossless.mixer_db = lossless.bpf_db = 0.0;
    lossless.vps_db = lossless.spdt_db = 0.0;
    lossless.tma_efficiency = 1.0;
    const tmafh::BudgetResult rz = tmafh::budget(lossless);
    CHECK(rz.eta_conv_db == 0.0);
    CHECK(rz.eta_tma_db == 0.0);
    CHECK(rz.delta_db == 0.0);

    LinkBudget no_switch;
    no_switch.tma_efficiency = 0.912;
    no_switch.spdt_db = 0.0;
    CHECK(tmafh::budget(no_switch).eta_tma_db ==
          doctest::Approx(0.4).epsilon(2e-4));

    LinkBudget bad;
    bad.mixer_db = -0.1;
    CHECK_THROWS_AS(tmafh::budget(bad), tmafh::PreconditionError);
    bad = LinkBudget{};
    bad.tma_efficiency = 1.5;
    CHECK_THROWS_AS(tmafh::budget(bad), tmafh::PreconditionError);
}

TEST_CASE("awgn: calibration, determinism, noiseless bypass") {
    const std::vector<complex<double>> dc(1000000, complex<double>{1.0, 0.0});

    const std::vector<complex<double>> noisy = tmafh::awgn(dc, 10.0, 1, 333);
    double noise_power = 0.0;
    for (std::size_t i = 0; i < dc.size(); ++i)
        noise_power += std::norm(noisy[i] - dc[i]);
    noise_power /= static_cast<double>(dc.size());
    const double measured_snr_db = 10.0 * std::log10(1.0 / noise_power);
    CHECK(std::abs(measured_snr_db - 10.0) < 0.05);

    CHECK(tmafh::awgn(dc, 10.0, 1, 333) == noisy);

    const std::vector<complex<double>> clean = tmafh::awgn(
        dc, std::numeric_limits<double>::infinity(), 1, 333);
    CHECK(clean == dc);

    CHECK_THROWS_AS(tmafh::awgn({}, 10.0, 1, 0), tmafh::PreconditionError);
    CHECK_THROWS_AS(tmafh::awgn(dc, 10.0, 0, 0), tmafh::PreconditionError);
}

TEST_CASE("demodulator picks the transmitted tone, noiseless") {
    const FrequencyPlan plan = sim_plan();
    const int p_samples = 256;
    const double fs = p_samples / plan.symbol_period();

    for (int k = 1; k <= plan.hop_slots(); ++k) {
        for (int m = 1; m <= plan.fsk_order(); ++m) {
            std::vector<complex<double>> tone(p_samples);
            const double f = tmafh::tx_offset(plan, m, k);
            for (int i = 0; i < p_samples; ++i) {
                const double phase = 2.0 * oracle::kPi * f * i / fs;
                tone[static_cast<std::size_t>(i)] = {std::cos(phase),
                                                     std::sin(phase)};
            }
            CHECK(tmafh::demod_mfsk(tone, plan, k, fs) == m);
        }
    }

    std::vector<complex<double>> short_rx(p_samples - 1);
    CHECK_THROWS_AS(tmafh::demod_mfsk(short_rx, plan, 1, fs),
                    tmafh::PreconditionError);
    std::vector<complex<double>> rx(p_samples);
    CHECK_THROWS_AS(tmafh::demod_mfsk(rx, plan, 0, fs),
                    tmafh::PreconditionError);
    // All-zero input ties every correlator; the tie breaks low.
    CHECK(tmafh::demod_mfsk(rx, plan, 1, fs) == 1);
}

TEST_CASE("demodulator is exact on noiseless switched-array symbols") {
    const FrequencyPlan plan = sim_plan();
    const ArrayGeometry geom = half_wave(4);
    const Angle theta0 = Angle::from_degrees(30.0);
    const tmafh::DelayTable delays(geom, plan, theta0);
    const int p_samples = 256;
    const double fs = p_samples / plan.symbol_period();

    for (int k = 1; k <= plan.hop_slots(); ++k)
        for (int m = 1; m <= plan.fsk_order(); ++m) {
            const std::vector<complex<double>> rx = tmafh::synthesize_symbol(
                geom, delays.at(m, k), theta0, p_samples,
                plan.symbol_period());
            CHECK(tmafh::demod_mfsk(rx, plan, k, fs) == m);
        }
}

TEST_CASE("pure noise demodulates to a uniform symbol draw") {
    const FrequencyPlan plan = sim_plan(4, 1);
    const int p_samples = 64;
    const double fs = p_samples / plan.symbol_period();
    tmafh::Lcg64 rng(555);
    std::vector<long long> counts(4, 0);
    const int n = 100000;
    std::vector<complex<double>> rx(p_samples);
    for (int trial = 0; trial < n; ++trial) {
        for (auto& v : rx)
            v = rng.next_complex_gaussian();
        ++counts[static_cast<std::size_t>(tmafh::demod_mfsk(rx, plan, 1, fs) - 1)];
    }
    // Chi-square, dof 3, 0.999 quantile.
    CHECK(oracle::chi_square_uniform(counts, n) < 16.266);
}

TEST_CASE("closed-form error rates") {
    CHECK(tmafh::theoretical_ber(2, 10.0) ==
          doctest::Approx(0.5 * std::exp(-5.0)).epsilon(1e-14));
    for (const int m : {2, 4, 8, 16})
        CHECK(tmafh::theoretical_ser(m, 0.0) ==
              doctest::Approx((m - 1.0) / m).epsilon(1e-12));
    for (double db = 2.0; db <= 12.0; db += 0.5)
        CHECK(tmafh::theoretical_ber(4, db) < tmafh::theoretical_ber(2, db));
    CHECK_THROWS_AS(tmafh::theoretical_ser(3, 1.0), tmafh::PreconditionError);
    CHECK_THROWS_AS(tmafh::theoretical_ser(4, -0.5), tmafh::PreconditionError);
}

TEST_CASE("monte carlo matches the closed form, conventional scheme") {
    const FrequencyPlan plan = sim_plan(4, 1);
    tmafh::BerRunParams params;
    params.ebn0_grid_db = {5.0};
    params.n_trials = 20000;
    params.seed = 2024;
    params.samples_per_symbol = 64;
    const std::vector<tmafh::BerPoint> pts =
        tmafh::ber_curve(plan, half_wave(1), Angle::from_degrees(0.0),
                         LinkBudget{}, params);
    REQUIRE(pts.size() == 1);
    const double ser = tmafh::theoretical_ser(
        4, 2.0 * std::pow(10.0, 5.0 / 10.0));
    CHECK(std::abs(pts[0].ber_mc - pts[0].ber_theory) <
          3.0 * oracle::mfsk_ber_sigma(4, ser, params.n_trials));
    CHECK(pts[0].ci95_lo <= pts[0].ber_mc);
    CHECK(pts[0].ci95_hi >= pts[0].ber_mc);

    // Binary FSK at 10 dB: BER = 0.5 * exp(-5).
    const FrequencyPlan bfsk = sim_plan(2, 1);
    tmafh::BerRunParams p2;
    p2.ebn0_grid_db = {10.0};
    p2.n_trials = 20000;
    p2.seed = 2025;
    p2.samples_per_symbol = 64;
    const std::vector<tmafh::BerPoint> b2 =
        tmafh::ber_curve(bfsk, half_wave(1), Angle::from_degrees(0.0),
                         LinkBudget{}, p2);
    CHECK(b2[0].ber_theory ==
          doctest::Approx(0.5 * std::exp(-5.0)).epsilon(1e-14));
    CHECK(std::abs(b2[0].ber_mc - b2[0].ber_theory) <
          3.0 * oracle::mfsk_ber_sigma(2, b2[0].ber_theory, p2.n_trials));
}

TEST_CASE("ber curve is reproducible and thread-count independent") {
    const FrequencyPlan plan = sim_plan();
    const ArrayGeometry geom = half_wave(4);
    tmafh::BerRunParams params;
    params.ebn0_grid_db = {2.0, 6.0};
    params.n_trials = 6000; // spans two blocks
    params.seed = 7;
    params.samples_per_symbol = 96;
    params.scheme = Scheme::kTma;

    const auto run = [&](int threads) {
        tmafh::BerRunParams p = params;
        p.n_threads = threads;
        return tmafh::ber_curve(plan, geom, Angle::from_degrees(30.0),
                                LinkBudget{}, p);
    };
    const std::vector<tmafh::BerPoint> a = run(1);
    const std::vector<tmafh::BerPoint> b = run(3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].ber_mc == b[i].ber_mc);
        CHECK(a[i].ci95_lo == b[i].ci95_lo);
        CHECK(a[i].ci95_hi == b[i].ci95_hi);
    }
}

TEST_CASE("switched scheme sees the budget advantage") {
    const FrequencyPlan plan = sim_plan();
    const ArrayGeometry geom = half_wave(4);
    tmafh::BerRunParams params;
    params.ebn0_grid_db = {4.0};
    params.n_trials = 5000;
    params.seed = 99;
    params.samples_per_symbol = 96;

    params.scheme = Scheme::kConventional;
    const auto conv = tmafh::ber_curve(plan, geom, Angle::from_degrees(30.0),
                                       LinkBudget{}, params);
    params.scheme = Scheme::kTma;
    const auto tma = tmafh::ber_curve(plan, geom, Angle::from_degrees(30.0),
                                      LinkBudget{}, params);
    // Effective Eb/N0 shifts by -delta = 7.8 dB: the reference curve moves
    // accordingly and the measured BER drops sharply.
    const double delta = tmafh::budget(LinkBudget{}).delta_db;
    CHECK(tma[0].ber_theory ==
          doctest::Approx(tmafh::theoretical_ber(4, 4.0 - delta))
              .epsilon(1e-12));
    CHECK(tma[0].ber_mc < conv[0].ber_mc);
}

TEST_CASE("ber curve rejects broken setups") {
    const ArrayGeometry geom = half_wave(2);
    tmafh::BerRunParams params;
    params.ebn0_grid_db = {3.0};
    params.n_trials = 2000;
    params.samples_per_symbol = 96;

    tmafh::BerRunParams too_few = params;
    too_few.n_trials = 999;
    CHECK_THROWS_AS(tmafh::ber_curve(sim_plan(), geom,
                                     Angle::from_degrees(0.0), LinkBudget{},
                                     too_few),
                    tmafh::PreconditionError);

    // delta_fsk * T_s = 1.5: not orthogonal.
    const FrequencyPlan skewed(2.5e9, 50e3, 4, 6, 4, 3e-5);
    CHECK_THROWS_AS(tmafh::ber_curve(skewed, geom, Angle::from_degrees(0.0),
                                     LinkBudget{}, params),
                    tmafh::PreconditionError);

    tmafh::BerRunParams undersampled = params;
    undersampled.samples_per_symbol = 40; // top tone has 24 cycles
    CHECK_THROWS_AS(tmafh::ber_curve(sim_plan(), geom,
                                     Angle::from_degrees(0.0), LinkBudget{},
                                     undersampled),
                    tmafh::PreconditionError);

    tmafh::BerRunParams empty_grid = params;
    empty_grid.ebn0_grid_db = {};
    CHECK_THROWS_AS(tmafh::ber_curve(sim_plan(), geom,
                                     Angle::from_degrees(0.0), LinkBudget{},
                                     empty_grid),
                    tmafh::PreconditionError);
}
