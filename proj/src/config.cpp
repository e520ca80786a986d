#include "tmafh/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tmafh {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size() || !std::isfinite(v))
            bad_value(key, value);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        bad_value(key, value);
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size())
            bad_value(key, value);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        bad_value(key, value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size() || value.find('-') != std::string::npos)
            bad_value(key, value);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        bad_value(key, value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    bad_value(key, value);
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
    std::vector<double> out;
    if (trim(value).empty())
        return out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(key, trim(item)));
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "plan.f_c_hz") c.plan_f_c_hz = parse_double(key, value);
        else if (key == "plan.delta_fsk_hz") c.plan_delta_fsk_hz = parse_double(key, value);
        else if (key == "plan.m") c.plan_m = static_cast<int>(parse_int(key, value));
        else if (key == "plan.k_slots") c.plan_k_slots = static_cast<int>(parse_int(key, value));
        else if (key == "plan.l") c.plan_l = static_cast<int>(parse_int(key, value));
        else if (key == "plan.t_s_s") c.plan_t_s_s = parse_double(key, value);
        else if (key == "geometry.n") c.geometry_n = static_cast<int>(parse_int(key, value));
        else if (key == "geometry.spacing_wl") c.geometry_spacing_wl = parse_double(key, value);
        else if (key == "geometry.convention") c.geometry_convention = value;
        else if (key == "geometry.positions_wl") c.geometry_positions_wl = parse_double_list(key, value);
        else if (key == "steering.theta0_deg") c.steering_theta0_deg = parse_double(key, value);
        else if (key == "steering.hop_k") c.steering_hop_k = static_cast<int>(parse_int(key, value));
        else if (key == "pattern.theta_min_deg") c.pattern_theta_min_deg = parse_double(key, value);
        else if (key == "pattern.theta_max_deg") c.pattern_theta_max_deg = parse_double(key, value);
        else if (key == "pattern.step_deg") c.pattern_step_deg = parse_double(key, value);
        else if (key == "sim.seed") c.sim_seed = parse_u64(key, value);
        else if (key == "sim.samples_per_period") c.sim_samples_per_period = static_cast<int>(parse_int(key, value));
        else if (key == "sim.q_max") c.sim_q_max = static_cast<int>(parse_int(key, value));
        else if (key == "sim.ebn0_start_db") c.sim_ebn0_start_db = parse_double(key, value);
        else if (key == "sim.ebn0_stop_db") c.sim_ebn0_stop_db = parse_double(key, value);
        else if (key == "sim.ebn0_step_db") c.sim_ebn0_step_db = parse_double(key, value);
        else if (key == "sim.n_trials") c.sim_n_trials = parse_int(key, value);
        else if (key == "sim.samples_per_symbol") c.sim_samples_per_symbol = static_cast<int>(parse_int(key, value));
        else if (key == "sim.n_threads") c.sim_n_threads = static_cast<int>(parse_int(key, value));
        else if (key == "sim.tma_first_harmonic_only") c.sim_tma_first_harmonic_only = parse_bool(key, value);
        else if (key == "budget.mux_db") c.budget_mux_db = parse_double(key, value);
        else if (key == "budget.mixer_db") c.budget_mixer_db = parse_double(key, value);
        else if (key == "budget.bpf_db") c.budget_bpf_db = parse_double(key, value);
        else if (key == "budget.vps_db") c.budget_vps_db = parse_double(key, value);
        else if (key == "budget.spdt_db") c.budget_spdt_db = parse_double(key, value);
        else if (key == "budget.tma_efficiency") c.budget_tma_efficiency = parse_double(key, value);
        else if (key == "schedule.bits") c.schedule_bits = value;
        else if (key == "schedule.n_symbols") c.schedule_n_symbols = static_cast<int>(parse_int(key, value));
        else if (key == "timeline.m") c.timeline_m = static_cast<int>(parse_int(key, value));
        else if (key == "timeline.k") c.timeline_k = static_cast<int>(parse_int(key, value));
        else if (key == "timeline.window_s") c.timeline_window_s = parse_double(key, value);
        else
            throw ConfigError("unknown configuration key '" + key + "'");
    }
    validate_config(c);
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "plan.f_c_hz = " << fmt_double(c.plan_f_c_hz) << "\n";
    out << "plan.delta_fsk_hz = " << fmt_double(c.plan_delta_fsk_hz) << "\n";
    out << "plan.m = " << c.plan_m << "\n";
    out << "plan.k_slots = " << c.plan_k_slots << "\n";
    out << "plan.l = " << c.plan_l << "\n";
    out << "plan.t_s_s = " << fmt_double(c.plan_t_s_s) << "\n";
    out << "geometry.n = " << c.geometry_n << "\n";
    out << "geometry.spacing_wl = " << fmt_double(c.geometry_spacing_wl) << "\n";
    out << "geometry.convention = " << c.geometry_convention << "\n";
    out << "geometry.positions_wl = ";
    for (std::size_t i = 0; i < c.geometry_positions_wl.size(); ++i)
        out << (i ? "," : "") << fmt_double(c.geometry_positions_wl[i]);
    out << "\n";
    out << "steering.theta0_deg = " << fmt_double(c.steering_theta0_deg) << "\n";
    out << "steering.hop_k = " << c.steering_hop_k << "\n";
    out << "pattern.theta_min_deg = " << fmt_double(c.pattern_theta_min_deg) << "\n";
    out << "pattern.theta_max_deg = " << fmt_double(c.pattern_theta_max_deg) << "\n";
    out << "pattern.step_deg = " << fmt_double(c.pattern_step_deg) << "\n";
    out << "sim.seed = " << c.sim_seed << "\n";
    out << "sim.samples_per_period = " << c.sim_samples_per_period << "\n";
    out << "sim.q_max = " << c.sim_q_max << "\n";
    out << "sim.ebn0_start_db = " << fmt_double(c.sim_ebn0_start_db) << "\n";
    out << "sim.ebn0_stop_db = " << fmt_double(c.sim_ebn0_stop_db) << "\n";
    out << "sim.ebn0_step_db = " << fmt_double(c.sim_ebn0_step_db) << "\n";
    out << "sim.n_trials = " << c.sim_n_trials << "\n";
    out << "sim.samples_per_symbol = " << c.sim_samples_per_symbol << "\n";
    out << "sim.n_threads = " << c.sim_n_threads << "\n";
    out << "sim.tma_first_harmonic_only = "
        << (c.sim_tma_first_harmonic_only ? "true" : "false") << "\n";
    out << "budget.mux_db = " << fmt_double(c.budget_mux_db) << "\n";
    out << "budget.mixer_db = " << fmt_double(c.budget_mixer_db) << "\n";
    out << "budget.bpf_db = " << fmt_double(c.budget_bpf_db) << "\n";
    out << "budget.vps_db = " << fmt_double(c.budget_vps_db) << "\n";
    out << "budget.spdt_db = " << fmt_double(c.budget_spdt_db) << "\n";
    out << "budget.tma_efficiency = " << fmt_double(c.budget_tma_efficiency) << "\n";
    out << "schedule.bits = " << c.schedule_bits << "\n";
    out << "schedule.n_symbols = " << c.schedule_n_symbols << "\n";
    out << "timeline.m = " << c.timeline_m << "\n";
    out << "timeline.k = " << c.timeline_k << "\n";
    out << "timeline.window_s = " << fmt_double(c.timeline_window_s) << "\n";
    return out.str();
}

void validate_config(const RunConfig& c) {
    const auto fail = [](const std::string& key, const std::string& why) {
        throw ConfigError("key '" + key + "': " + why);
    };

    try {
        make_plan(c);
    } catch (const PreconditionError& e) {
        fail("plan.*", e.what());
    }
    try {
        make_geometry(c);
    } catch (const PreconditionError& e) {
        fail("geometry.*", e.what());
    }
    if (c.geometry_convention != "custom" && !c.geometry_positions_wl.empty())
        fail("geometry.positions_wl", "requires geometry.convention = custom");

    if (std::abs(c.steering_theta0_deg) > 90.0)
        fail("steering.theta0_deg", "must lie in [-90, 90]");
    if (c.steering_hop_k < 1 || c.steering_hop_k > c.plan_k_slots)
        fail("steering.hop_k", "must lie in 1..K");

    if (!(c.pattern_step_deg > 0.0))
        fail("pattern.step_deg", "must be > 0");
    if (!(c.pattern_theta_min_deg < c.pattern_theta_max_deg))
        fail("pattern.theta_min_deg", "range must be nonempty");

    if (c.sim_samples_per_period < 6 || c.sim_samples_per_period % 6 != 0)
        fail("sim.samples_per_period", "must be a positive multiple of 6");
    if (c.sim_q_max < 1)
        fail("sim.q_max", "must be >= 1");
    if (!(c.sim_ebn0_step_db > 0.0))
        fail("sim.ebn0_step_db", "must be > 0");
    if (c.sim_ebn0_stop_db < c.sim_ebn0_start_db)
        fail("sim.ebn0_stop_db", "must be >= sim.ebn0_start_db");
    if (c.sim_n_trials < 1000)
        fail("sim.n_trials", "must be >= 1000");
    if (c.sim_samples_per_symbol < 2)
        fail("sim.samples_per_symbol", "must be >= 2");
    if (c.sim_n_threads < 1)
        fail("sim.n_threads", "must be >= 1");

    try {
        budget(make_budget(c));
    } catch (const PreconditionError& e) {
        fail("budget.*", e.what());
    }

    for (const char ch : c.schedule_bits)
        if (ch != '0' && ch != '1')
            fail("schedule.bits", "must contain only '0' and '1'");
    if (c.schedule_n_symbols < 0)
        fail("schedule.n_symbols", "must be >= 0");

    if (c.timeline_m < 1 || c.timeline_m > c.plan_m)
        fail("timeline.m", "must lie in 1..M");
    if (c.timeline_k < 1 || c.timeline_k > c.plan_k_slots)
        fail("timeline.k", "must lie in 1..K");
    if (c.timeline_window_s < 0.0)
        fail("timeline.window_s", "must be >= 0 (0 = one period)");
}

FrequencyPlan make_plan(const RunConfig& c) {
    return FrequencyPlan(c.plan_f_c_hz, c.plan_delta_fsk_hz, c.plan_m,
                         c.plan_k_slots, c.plan_l, c.plan_t_s_s);
}

ArrayGeometry make_geometry(const RunConfig& c) {
    if (c.geometry_convention == "zero_based")
        return ArrayGeometry::uniform(c.geometry_n, c.geometry_spacing_wl,
                                      PositionConvention::kZeroBased);
    if (c.geometry_convention == "one_based")
        return ArrayGeometry::uniform(c.geometry_n, c.geometry_spacing_wl,
                                      PositionConvention::kOneBased);
    if (c.geometry_convention == "custom") {
        if (c.geometry_positions_wl.empty())
            throw PreconditionError(
                "custom convention needs geometry.positions_wl");
        return ArrayGeometry::custom(c.geometry_positions_wl);
    }
    throw PreconditionError("geometry.convention must be zero_based, "
                            "one_based or custom");
}

LinkBudget make_budget(const RunConfig& c) {
    LinkBudget b;
    b.mux_db = c.budget_mux_db;
    b.mixer_db = c.budget_mixer_db;
    b.bpf_db = c.budget_bpf_db;
    b.vps_db = c.budget_vps_db;
    b.spdt_db = c.budget_spdt_db;
    b.tma_efficiency = c.budget_tma_efficiency;
    return b;
}

std::vector<double> make_ebn0_grid(const RunConfig& c) {
    std::vector<double> grid;
    const int n = static_cast<int>(std::floor(
        (c.sim_ebn0_stop_db - c.sim_ebn0_start_db) / c.sim_ebn0_step_db +
        1e-9));
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        grid.push_back(c.sim_ebn0_start_db + i * c.sim_ebn0_step_db);
    return grid;
}

} // namespace tmafh
