// config.hpp - declarative run configuration.
//
// Runs are described by a flat text file of dotted keys:
//
//     # comment
//     plan.delta_fsk_hz = 50e3
//     geometry.convention = one_based
//
// Unknown keys and malformed values are rejected by name. Every key has a
// default, so the empty file is a valid configuration. serialize_config()
// emits all keys in canonical order with full precision; parse and
// serialize round-trip exactly.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmafh/array.hpp"
#include "tmafh/errors.hpp"
#include "tmafh/freq_plan.hpp"
#include "tmafh/link.hpp"

namespace tmafh {

struct RunConfig {
    // plan.*
    double plan_f_c_hz = 2.5e9;
    double plan_delta_fsk_hz = 50e3;
    int plan_m = 4;
    int plan_k_slots = 6;
    int plan_l = 4;
    double plan_t_s_s = 1e-3;

    // geometry.*
    int geometry_n = 4;
    double geometry_spacing_wl = 0.5;
    std::string geometry_convention = "zero_based"; // zero_based|one_based|custom
    std::vector<double> geometry_positions_wl;      // custom convention only

    // steering.*
    double steering_theta0_deg = 30.0;
    int steering_hop_k = 2; // hop slot used by the delays command

    // pattern.*
    double pattern_theta_min_deg = -90.0;
    double pattern_theta_max_deg = 90.0;
    double pattern_step_deg = 0.05;

    // sim.*
    std::uint64_t sim_seed = 42;
    int sim_samples_per_period = 96; // multiple of 6
    int sim_q_max = 97;
    double sim_ebn0_start_db = 0.0;
    double sim_ebn0_stop_db = 12.0;
    double sim_ebn0_step_db = 1.0;
    long long sim_n_trials = 100000;
    int sim_samples_per_symbol = 192;
    int sim_n_threads = 2;
    bool sim_tma_first_harmonic_only = false;

    // budget.*
    double budget_mux_db = 0.7;
    double budget_mixer_db = 4.5;
    double budget_bpf_db = 2.0;
    double budget_vps_db = 4.0;
    double budget_spdt_db = 0.5;
    double budget_tma_efficiency = 0.0; // 0 selects the waveform value

    // schedule.*
    std::string schedule_bits; // explicit "0101..." payload; empty = random
    int schedule_n_symbols = 16;

    // timeline.*
    int timeline_m = 1;
    int timeline_k = 1;
    double timeline_window_s = 0.0; // 0 = one period of the (m, k) waveform
};

// Parses configuration text. Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& text);

// Loads and parses a configuration file.
RunConfig load_config_file(const std::string& path);

// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

// Cross-field validation (also run by parse_config). Throws ConfigError.
void validate_config(const RunConfig& c);

// Typed views of the configuration.
FrequencyPlan make_plan(const RunConfig& c);
ArrayGeometry make_geometry(const RunConfig& c);
LinkBudget make_budget(const RunConfig& c);
std::vector<double> make_ebn0_grid(const RunConfig& c);

} // namespace tmafh
