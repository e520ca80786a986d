#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "support/oracles.hpp"
#include "tmafh/freq_plan.hpp"
#include "tmafh/rng.hpp"

using tmafh::FrequencyPlan;

namespace {

FrequencyPlan default_plan() {
    return FrequencyPlan(2.5e9, 50e3, 4, 6, 4, 1e-3);
}

} // namespace

TEST_CASE("plan derives the lattice constants") {
    const FrequencyPlan p = default_plan();
    CHECK(p.delta_fh() == 200e3);
    CHECK(p.fsk_bandwidth() == 200e3);
    CHECK(p.total_bandwidth() == 1.2e6);
    CHECK(p.hop_period() == doctest::Approx(4e-3).epsilon(1e-15));
    CHECK(p.bits_per_symbol() == 2);
}

TEST_CASE("plan rejects invalid parameters") {
    CHECK_THROWS_AS(FrequencyPlan(2.5e9, 50e3, 3, 6, 4, 1e-3),
                    tmafh::PreconditionError); // M not a power of two
    CHECK_THROWS_AS(FrequencyPlan(2.5e9, 50e3, 1, 6, 4, 1e-3),
                    tmafh::PreconditionError);
    CHECK_THROWS_AS(FrequencyPlan(2.5e9, 0.0, 4, 6, 4, 1e-3),
                    tmafh::PreconditionError);
    CHECK_THROWS_AS(FrequencyPlan(2.5e9, 50e3, 4, 0, 4, 1e-3),
                    tmafh::PreconditionError);
    CHECK_THROWS_AS(FrequencyPlan(2.5e9, 50e3, 4, 6, 0, 1e-3),
                    tmafh::PreconditionError);
    CHECK_THROWS_AS(FrequencyPlan(2.5e9, 50e3, 4, 6, 4, 0.0),
                    tmafh::PreconditionError);
}

TEST_CASE("tone offsets walk the lattice") {
    const FrequencyPlan p = default_plan();
    CHECK(tmafh::tx_offset(p, 1, 1) == 50e3);
    CHECK(tmafh::tx_offset(p, 2, 2) == 300e3);
    CHECK(tmafh::tx_offset(p, 4, 6) == 1.2e6);
    CHECK(std::llround(1e9 / tmafh::tx_offset(p, 4, 6)) == 833); // period ns

    CHECK_THROWS_AS(tmafh::tx_offset(p, 0, 1), tmafh::PreconditionError);
    CHECK_THROWS_AS(tmafh::tx_offset(p, 5, 1), tmafh::PreconditionError);
    CHECK_THROWS_AS(tmafh::tx_offset(p, 1, 0), tmafh::PreconditionError);
    CHECK_THROWS_AS(tmafh::tx_offset(p, 1, 7), tmafh::PreconditionError);
}

TEST_CASE("lattice covers (0, W] with distinct tones and no seams") {
    const FrequencyPlan p = default_plan();
    std::set<long long> multiples;
    for (int k = 1; k <= p.hop_slots(); ++k)
        for (int m = 1; m <= p.fsk_order(); ++m) {
            const double off = tmafh::tx_offset(p, m, k);
            CHECK(off > 0.0);
            CHECK(off <= p.total_bandwidth());
            multiples.insert(std::llround(off / p.delta_fsk()));
        }
    CHECK(multiples.size() ==
          static_cast<std::size_t>(p.fsk_order() * p.hop_slots()));
    CHECK(*multiples.begin() == 1);
    CHECK(*multiples.rbegin() == p.fsk_order() * p.hop_slots());

    for (int k = 1; k < p.hop_slots(); ++k)
        CHECK(tmafh::tx_offset(p, p.fsk_order(), k) + p.delta_fsk() ==
              tmafh::tx_offset(p, 1, k + 1));
}

TEST_CASE("hop pattern: pinned generator golden vector") {
    const FrequencyPlan p = default_plan();
    // Frozen output of the documented LCG for seed 42, K = 6, 8 hops.
    const std::vector<int> expected{4, 2, 3, 4, 5, 1, 1, 1};
    CHECK(tmafh::hop_pattern(p, 8, 42) == expected);
    CHECK(tmafh::hop_pattern(p, 8, 42) == tmafh::hop_pattern(p, 8, 42));

    const FrequencyPlan three(2.5e9, 50e3, 4, 3, 4, 1e-3);
    CHECK(tmafh::hop_pattern(three, 6, 1) == std::vector<int>{2, 2, 2, 2, 3, 2});
}

TEST_CASE("hop pattern: single slot and uniformity") {
    const FrequencyPlan single(2.5e9, 50e3, 4, 1, 4, 1e-3);
    for (const int k : tmafh::hop_pattern(single, 100, 987))
        CHECK(k == 1);

    const FrequencyPlan p = default_plan();
    const int n = 100000;
    std::vector<long long> counts(6, 0);
    for (const int k : tmafh::hop_pattern(p, n, 20240229))
        ++counts[static_cast<std::size_t>(k - 1)];
    // Per-slot three-sigma band around n/K.
    const double expect = n / 6.0;
    const double sigma = std::sqrt(n * (1.0 / 6.0) * (5.0 / 6.0));
    for (const long long c : counts)
        CHECK(std::abs(static_cast<double>(c) - expect) < 3.0 * sigma);
    // And the chi-square statistic below the 0.999 quantile (dof 5).
    CHECK(oracle::chi_square_uniform(counts, n) < 20.515);

    CHECK_THROWS_AS(tmafh::hop_pattern(p, 0, 1), tmafh::PreconditionError);
}

TEST_CASE("schedule groups bits MSB-first and hops every L symbols") {
    const FrequencyPlan flat(2.5e9, 50e3, 4, 1, 4, 1e-3);
    const std::vector<std::uint8_t> bits{0, 0, 0, 1, 1, 0, 1, 1};
    const tmafh::Schedule s = tmafh::build_schedule(flat, bits, 5);
    REQUIRE(s.entries.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(s.entries[static_cast<std::size_t>(i)].m == i + 1);
        CHECK(s.entries[static_cast<std::size_t>(i)].k == 1);
        CHECK(s.entries[static_cast<std::size_t>(i)].start_s ==
              static_cast<double>(i) * flat.symbol_period());
    }
}

TEST_CASE("schedule hop structure over several hops") {
    const FrequencyPlan p(2.5e9, 50e3, 4, 3, 4, 1e-3);
    std::vector<std::uint8_t> bits(32); // 16 symbols, 4 hops
    tmafh::Lcg64 rng(3);
    for (auto& b : bits)
        b = static_cast<std::uint8_t>(rng.next_below(2));
    const tmafh::Schedule s = tmafh::build_schedule(p, bits, 17);
    REQUIRE(s.entries.size() == 16);

    const std::vector<int> hops = tmafh::hop_pattern(p, 4, 17);
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        CHECK(s.entries[i].k == hops[i / 4]);
        CHECK(s.entries[i].m >= 1);
        CHECK(s.entries[i].m <= 4);
        CHECK(s.entries[i].start_s ==
              static_cast<double>(i) * p.symbol_period());
    }
    // Hop boundaries only at multiples of T_h = L * T_s.
    for (std::size_t i = 1; i < s.entries.size(); ++i)
        if (s.entries[i].k != s.entries[i - 1].k)
            CHECK(i % 4 == 0);
}

TEST_CASE("schedule edge cases") {
    const FrequencyPlan p = default_plan();
    CHECK(tmafh::build_schedule(p, {}, 9).entries.empty());
    CHECK_THROWS_AS(tmafh::build_schedule(p, {1, 0, 1}, 9),
                    tmafh::PreconditionError); // 3 bits, log2(M) = 2
    CHECK_THROWS_AS(tmafh::build_schedule(p, {0, 2}, 9),
                    tmafh::PreconditionError); // non-binary bit

    // Partial final hop: 5 symbols with L = 4 uses 2 hop draws.
    const std::vector<std::uint8_t> bits(10, 1);
    const tmafh::Schedule s = tmafh::build_schedule(p, bits, 77);
    REQUIRE(s.entries.size() == 5);
    const std::vector<int> hops = tmafh::hop_pattern(p, 2, 77);
    CHECK(s.entries[4].k == hops[1]);

    // Bit-identical reproduction for a fixed seed.
    const tmafh::Schedule again = tmafh::build_schedule(p, bits, 77);
    REQUIRE(again.entries.size() == s.entries.size());
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        CHECK(again.entries[i].m == s.entries[i].m);
        CHECK(again.entries[i].k == s.entries[i].k);
        CHECK(again.entries[i].start_s == s.entries[i].start_s);
    }
}
