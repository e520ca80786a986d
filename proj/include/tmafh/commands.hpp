// commands.hpp - subcommand implementations shared by the CLI and tests.
//
// Each command loads its inputs from a RunConfig, writes one artifact file
// into the output directory and returns the path written. All outputs are
// deterministic functions of (config, seed).

#pragma once

#include <optional>
#include <string>

#include "tmafh/config.hpp"
#include "tmafh/link.hpp"

namespace tmafh {

struct CommandOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_override; // replaces sim.seed
    Scheme scheme = Scheme::kConventional;      // ber command only
};

// spectrum.csv: q,re,im,mag,rel_db,is_null (rel_db empty on null rows).
std::string cmd_spectrum(const RunConfig& cfg, const CommandOptions& opt);

// delays.csv: m,k,n,delay_ns for all tones of hop slot steering.hop_k.
std::string cmd_delays(const RunConfig& cfg, const CommandOptions& opt);

// pattern.csv: theta_deg,power_db of the steered first-harmonic beam.
std::string cmd_pattern(const RunConfig& cfg, const CommandOptions& opt);

// ber.csv: scheme,ebn0_db,ber_mc,ber_theory,n_trials,ci95_lo,ci95_hi.
std::string cmd_ber(const RunConfig& cfg, const CommandOptions& opt);

// timeline.txt: element,t_start_ps,t_end_ps,phase_state,phase_deg for the
// (timeline.m, timeline.k) waveform across all elements.
std::string cmd_timeline(const RunConfig& cfg, const CommandOptions& opt);

// budget.txt: per-scheme oscillator count, SPDT switch count and insertion
// loss, plus the delta.
std::string cmd_budget(const RunConfig& cfg, const CommandOptions& opt);

// schedule.csv: index,m,k,start_s,offset_hz for the configured payload.
std::string cmd_schedule(const RunConfig& cfg, const CommandOptions& opt);

} // namespace tmafh
