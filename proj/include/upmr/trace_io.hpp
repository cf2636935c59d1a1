#pragma once

// File ingestion and generation: workload trace CSV, tariff CSV, flat
// key=value scenario configs, and a seeded diurnal trace generator.
//
// Formats:
//   trace   header `slot,class,requests`; one row per (slot, class); counts
//           are non-negative integers; every class covers slot 1..tau
//   tariff  header `slot,alpha_usd_per_kwh`; one price row per slot, plus
//           optional `window,<beta>,<from>-<to>[,...]` demand-charge lines
//   config  `key = value` lines, `#` comments; the key set is closed

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "upmr/model.hpp"

namespace upmr::io {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& where, std::size_t line, const std::string& what)
        : std::runtime_error(where + (line ? ":" + std::to_string(line) : "") + ": " + what) {}
};

namespace detail {

inline std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    return s.substr(b);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

inline bool parse_ll(const std::string& s, long long& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

// ---- Workload traces ---------------------------------------------------

// Reads a trace covering exactly the expected classes; the horizon is the
// largest slot index present and every (class, slot) cell must appear once.
inline WorkloadTrace load_trace(std::istream& in, const std::vector<TenantClass>& expected,
                                double slot_hours, const std::string& where = "trace") {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || detail::trim(line) != "slot,class,requests")
        throw parse_error(where, lineno, "expected header 'slot,class,requests'");

    std::map<int, std::size_t> class_index;
    for (std::size_t i = 0; i < expected.size(); ++i) class_index[expected[i].id] = i;
    if (class_index.size() != expected.size())
        throw std::invalid_argument("expected class list repeats an id");
    if (expected.empty()) throw std::invalid_argument("expected class list is empty");

    // cells[(class, slot)] in file order, slots discovered as we go
    std::map<std::pair<std::size_t, long long>, double> cells;
    long long max_slot = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        auto fields = detail::split_csv(t);
        if (fields.size() != 3)
            throw parse_error(where, lineno, "expected 3 fields, got " +
                                                 std::to_string(fields.size()));
        long long slot, cls, count;
        if (!detail::parse_ll(fields[0], slot) || slot < 1)
            throw parse_error(where, lineno, "bad slot '" + fields[0] + "'");
        if (!detail::parse_ll(fields[1], cls))
            throw parse_error(where, lineno, "bad class id '" + fields[1] + "'");
        if (!detail::parse_ll(fields[2], count) || count < 0)
            throw parse_error(where, lineno,
                              "request count '" + fields[2] + "' must be a non-negative integer");
        auto it = class_index.find(static_cast<int>(cls));
        if (it == class_index.end())
            throw parse_error(where, lineno, "class " + fields[1] + " is not in the scenario");
        auto key = std::make_pair(it->second, slot);
        if (!cells.emplace(key, static_cast<double>(count)).second)
            throw parse_error(where, lineno, "duplicate cell for class " + fields[1] + " slot " +
                                                 fields[0]);
        max_slot = std::max(max_slot, slot);
    }
    if (max_slot == 0) throw parse_error(where, lineno, "no data rows");

    WorkloadTrace trace;
    trace.tau = static_cast<std::size_t>(max_slot);
    trace.slot_hours = slot_hours;
    trace.classes = expected;
    trace.requests.assign(expected.size(), std::vector<double>(trace.tau, -1.0));
    for (const auto& [key, count] : cells)
        trace.requests[key.first][static_cast<std::size_t>(key.second - 1)] = count;
    for (std::size_t i = 0; i < expected.size(); ++i)
        for (std::size_t t = 0; t < trace.tau; ++t)
            if (trace.requests[i][t] < 0.0)
                throw parse_error(where, 0,
                                  "missing cell for class " + std::to_string(expected[i].id) +
                                      " slot " + std::to_string(t + 1));
    trace.validate();
    return trace;
}

inline void write_trace(std::ostream& os, const WorkloadTrace& trace) {
    os << "slot,class,requests\n";
    for (std::size_t t = 0; t < trace.tau; ++t)
        for (std::size_t i = 0; i < trace.class_count(); ++i)
            os << (t + 1) << ',' << trace.classes[i].id << ','
               << static_cast<long long>(std::llround(trace.requests[i][t])) << '\n';
}

// ---- Tariffs -------------------------------------------------------------

// Energy prices must cover slot 1..tau exactly once. `window` lines add one
// demand charge each; ranges are 1-based inclusive and union within a line.
// Negative prices are rejected unless clamping to zero is requested.
inline PricingSchedule load_tariff(std::istream& in, std::size_t tau,
                                   bool clamp_negative_prices = false,
                                   const std::string& where = "tariff") {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || detail::trim(line) != "slot,alpha_usd_per_kwh")
        throw parse_error(where, lineno, "expected header 'slot,alpha_usd_per_kwh'");

    PricingSchedule out;
    out.energy_usd_per_kwh.assign(tau, std::nan(""));
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        auto fields = detail::split_csv(t);

        if (fields[0] == "window") {
            if (fields.size() < 3)
                throw parse_error(where, lineno, "window needs a rate and at least one range");
            DemandChargeWindow w;
            if (!detail::parse_double(fields[1], w.rate_usd_per_kw) || w.rate_usd_per_kw < 0.0)
                throw parse_error(where, lineno, "bad demand charge rate '" + fields[1] + "'");
            std::set<std::size_t> slots;
            for (std::size_t k = 2; k < fields.size(); ++k) {
                std::size_t dash = fields[k].find('-');
                if (dash == std::string::npos)
                    throw parse_error(where, lineno, "range '" + fields[k] + "' needs from-to");
                long long from, to;
                if (!detail::parse_ll(fields[k].substr(0, dash), from) ||
                    !detail::parse_ll(fields[k].substr(dash + 1), to) || from < 1 || to < from)
                    throw parse_error(where, lineno, "bad range '" + fields[k] + "'");
                if (static_cast<std::size_t>(to) > tau)
                    throw parse_error(where, lineno, "range '" + fields[k] +
                                                         "' runs past the cycle");
                for (long long s = from; s <= to; ++s)
                    slots.insert(static_cast<std::size_t>(s - 1));
            }
            w.slots.assign(slots.begin(), slots.end());
            out.demand_charges.push_back(std::move(w));
            continue;
        }

        if (fields.size() != 2)
            throw parse_error(where, lineno, "expected 2 fields, got " +
                                                 std::to_string(fields.size()));
        long long slot;
        double alpha;
        if (!detail::parse_ll(fields[0], slot) || slot < 1 ||
            static_cast<std::size_t>(slot) > tau)
            throw parse_error(where, lineno, "bad slot '" + fields[0] + "'");
        if (!detail::parse_double(fields[1], alpha))
            throw parse_error(where, lineno, "bad price '" + fields[1] + "'");
        if (alpha < 0.0) {
            if (!clamp_negative_prices)
                throw parse_error(where, lineno, "negative price " + fields[1] +
                                                     " (pass the clamp option to floor at 0)");
            alpha = 0.0;
        }
        double& cell = out.energy_usd_per_kwh[static_cast<std::size_t>(slot - 1)];
        if (!std::isnan(cell))
            throw parse_error(where, lineno, "duplicate price for slot " + fields[0]);
        cell = alpha;
    }
    for (std::size_t t = 0; t < tau; ++t)
        if (std::isnan(out.energy_usd_per_kwh[t]))
            throw parse_error(where, 0, "missing price for slot " + std::to_string(t + 1));
    out.validate(tau);
    return out;
}

inline void write_tariff(std::ostream& os, const PricingSchedule& pricing) {
    os << "slot,alpha_usd_per_kwh\n";
    for (std::size_t t = 0; t < pricing.energy_usd_per_kwh.size(); ++t)
        os << (t + 1) << ',' << detail::format_g(pricing.energy_usd_per_kwh[t]) << '\n';
    for (const auto& w : pricing.demand_charges) {
        os << "window," << detail::format_g(w.rate_usd_per_kw);
        // re-pack sorted slots into maximal runs
        std::size_t k = 0;
        while (k < w.slots.size()) {
            std::size_t run = k;
            while (run + 1 < w.slots.size() && w.slots[run + 1] == w.slots[run] + 1) ++run;
            os << ',' << (w.slots[k] + 1) << '-' << (w.slots[run] + 1);
            k = run + 1;
        }
        os << '\n';
    }
}

// ---- Synthetic diurnal traces -------------------------------------------

struct SynthClassSpec {
    double base = 0.0;       // mean arrivals per slot
    double amplitude = 0.0;  // daily swing around the mean
    double phase = 0.0;      // radians, shifts the daily peak
};

struct SynthSpec {
    std::uint64_t seed = 0;
    std::size_t tau = 0;
    std::vector<SynthClassSpec> classes;
    double noise = 0.0;  // multiplicative, relative

    void validate() const {
        if (tau == 0) throw std::invalid_argument("horizon must be at least one slot");
        if (classes.empty()) throw std::invalid_argument("need at least one class");
        if (!std::isfinite(noise) || noise < 0.0)
            throw std::invalid_argument("noise level must be >= 0");
        for (const auto& c : classes) {
            if (!std::isfinite(c.base) || c.base < 0.0)
                throw std::invalid_argument("base rate must be >= 0");
            if (!std::isfinite(c.amplitude) || c.amplitude < 0.0 || c.amplitude > c.base)
                throw std::invalid_argument("amplitude must be in [0, base]");
            if (!std::isfinite(c.phase)) throw std::invalid_argument("phase must be finite");
        }
    }
};

// Sinusoid with a 24-slot day plus multiplicative noise. The generator draws
// through the raw engine so output is identical across platforms.
inline WorkloadTrace synth_diurnal(const SynthSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    WorkloadTrace trace;
    trace.tau = spec.tau;
    trace.slot_hours = 1.0;
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (std::size_t i = 0; i < spec.classes.size(); ++i) {
        trace.classes.push_back({static_cast<int>(i + 1), LossFactor::per_slot(1.0)});
        std::vector<double> row(spec.tau);
        for (std::size_t t = 0; t < spec.tau; ++t) {
            const auto& c = spec.classes[i];
            double mean = c.base + c.amplitude * std::sin(kTwoPi * static_cast<double>(t) / 24.0 +
                                                          c.phase);
            double wobble = 1.0 + spec.noise * (2.0 * unit() - 1.0);
            row[t] = static_cast<double>(std::llround(std::max(0.0, mean * wobble)));
        }
        trace.requests.push_back(std::move(row));
    }
    trace.validate();
    return trace;
}

// ---- Scenario configuration ----------------------------------------------

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::up;
    std::size_t tau = 0;
    double slot_hours = 1.0;
    std::vector<TenantClass> classes;  // sorted by id
    DataCenterParams machines;
    StorageParams storage;
    RewardPolicy policy;  // reward_factor left 0; the planner picks it
    std::string trace_file;
    std::string tariff_file;
};

inline ScenarioConfig parse_config(std::istream& in, const std::string& where = "config") {
    static const std::set<std::string> scalar_keys = {
        "scenario",  "tau",       "slot_hours", "psi",       "delta",
        "d_max",     "n_per_machine", "e_pue",  "p_idle_kw", "p_peak_kw",
        "o_on_kwh",  "o_of_kwh",  "w_on_usd",   "w_of_usd",  "m0",
        "c_s_kwh",   "l_in_kw",   "l_out_kw",   "zeta_usd_per_kwh", "s0_kwh",
        "trace_file", "tariff_file"};

    std::map<std::string, std::pair<std::string, std::size_t>> seen;  // key -> (value, line)
    std::map<int, std::pair<std::string, std::size_t>> kappas;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error(where, lineno, "expected key = value");
        std::string key = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));
        if (value.empty()) throw parse_error(where, lineno, "empty value for " + key);

        if (key.rfind("kappa.", 0) == 0) {
            long long id;
            if (!detail::parse_ll(key.substr(6), id))
                throw parse_error(where, lineno, "bad class id in '" + key + "'");
            if (!kappas.emplace(static_cast<int>(id), std::make_pair(value, lineno)).second)
                throw parse_error(where, lineno, "duplicate key " + key);
            continue;
        }
        if (!scalar_keys.count(key))
            throw parse_error(where, lineno, "unknown key '" + key + "'");
        if (!seen.emplace(key, std::make_pair(value, lineno)).second)
            throw parse_error(where, lineno, "duplicate key " + key);
    }

    for (const auto& key : scalar_keys)
        if (!seen.count(key)) throw parse_error(where, 0, "missing key '" + key + "'");
    if (kappas.empty()) throw parse_error(where, 0, "missing keys 'kappa.<id>'");

    auto raw = [&seen](const std::string& key) -> const std::pair<std::string, std::size_t>& {
        return seen.at(key);
    };
    auto number = [&raw, &where](const std::string& key) {
        const auto& [value, at] = raw(key);
        double v;
        if (!detail::parse_double(value, v))
            throw parse_error(where, at, "bad number '" + value + "' for " + key);
        return v;
    };
    auto integer = [&raw, &where](const std::string& key) {
        const auto& [value, at] = raw(key);
        long long v;
        if (!detail::parse_ll(value, v))
            throw parse_error(where, at, "bad integer '" + value + "' for " + key);
        return v;
    };

    ScenarioConfig cfg;
    {
        const auto& [value, at] = raw("scenario");
        if (value == "UP") cfg.kind = ScenarioKind::up;
        else if (value == "UPS") cfg.kind = ScenarioKind::ups;
        else if (value == "UPMR") cfg.kind = ScenarioKind::upmr;
        else if (value == "UPMRS") cfg.kind = ScenarioKind::upmrs;
        else throw parse_error(where, at, "unknown scenario '" + value + "'");
    }

    long long tau = integer("tau");
    if (tau < 1) throw parse_error(where, raw("tau").second, "tau must be >= 1");
    cfg.tau = static_cast<std::size_t>(tau);
    cfg.slot_hours = number("slot_hours");

    for (const auto& [id, entry] : kappas) {
        const auto& [value, at] = entry;
        if (value == "inf") {
            cfg.classes.push_back({id, LossFactor::inelastic()});
        } else {
            double kappa;
            if (!detail::parse_double(value, kappa) || kappa <= 0.0)
                throw parse_error(where, at,
                                  "kappa must be a positive number or 'inf', got '" + value + "'");
            cfg.classes.push_back({id, LossFactor::per_slot(kappa)});
        }
    }

    cfg.machines.requests_per_machine = number("n_per_machine");
    cfg.machines.pue = number("e_pue");
    cfg.machines.idle_power_kw = number("p_idle_kw");
    cfg.machines.peak_power_kw = number("p_peak_kw");
    cfg.machines.poweron_overhead_kwh = number("o_on_kwh");
    cfg.machines.poweroff_overhead_kwh = number("o_of_kwh");
    cfg.machines.poweron_wear_usd = number("w_on_usd");
    cfg.machines.poweroff_wear_usd = number("w_of_usd");
    cfg.machines.initial_machines = number("m0");

    cfg.storage.capacity_kwh = number("c_s_kwh");
    cfg.storage.max_charge_kw = number("l_in_kw");
    cfg.storage.max_discharge_kw = number("l_out_kw");
    cfg.storage.wear_usd_per_kwh = number("zeta_usd_per_kwh");
    cfg.storage.initial_charge_kwh = number("s0_kwh");

    cfg.policy.usage_price_usd = number("delta");
    cfg.policy.unit_requests = number("psi");
    long long d_max = integer("d_max");
    if (d_max < 0) throw parse_error(where, raw("d_max").second, "d_max must be >= 0");
    cfg.policy.max_deferment_slots = static_cast<int>(d_max);
    cfg.policy.reward_factor = 0.0;

    cfg.trace_file = raw("trace_file").first;
    cfg.tariff_file = raw("tariff_file").first;

    if (!(cfg.slot_hours > 0.0))
        throw parse_error(where, raw("slot_hours").second, "slot_hours must be > 0");
    try {
        cfg.machines.validate();
        cfg.storage.validate();
        cfg.policy.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(where, 0, e.what());
    }

    // scenario/storage consistency
    if (scenario_stores(cfg.kind)) {
        if (!(cfg.storage.capacity_kwh > 0.0))
            throw parse_error(where, 0, std::string(scenario_name(cfg.kind)) +
                                            " needs storage capacity > 0");
    } else if (cfg.storage.capacity_kwh != 0.0 || cfg.storage.max_charge_kw != 0.0 ||
               cfg.storage.max_discharge_kw != 0.0 || cfg.storage.initial_charge_kwh != 0.0) {
        throw parse_error(where, 0, std::string(scenario_name(cfg.kind)) +
                                        " must keep all storage parameters at 0");
    }
    return cfg;
}

// A scenario with its referenced inputs resolved and cross-checked.
struct LoadedScenario {
    ScenarioConfig config;
    WorkloadTrace trace;
    PricingSchedule pricing;
};

inline LoadedScenario load_scenario(const std::filesystem::path& config_path,
                                    bool clamp_negative_prices = false) {
    std::ifstream cfg_in(config_path);
    if (!cfg_in) throw parse_error(config_path.string(), 0, "cannot open config");
    LoadedScenario out;
    out.config = parse_config(cfg_in, config_path.string());

    auto resolve = [&config_path](const std::string& rel) {
        std::filesystem::path p(rel);
        return p.is_absolute() ? p : config_path.parent_path() / p;
    };

    auto trace_path = resolve(out.config.trace_file);
    std::ifstream trace_in(trace_path);
    if (!trace_in) throw parse_error(trace_path.string(), 0, "cannot open trace");
    out.trace = load_trace(trace_in, out.config.classes, out.config.slot_hours,
                           trace_path.string());
    if (out.trace.tau != out.config.tau)
        throw parse_error(trace_path.string(), 0,
                          "trace covers " + std::to_string(out.trace.tau) + " slots but config says " +
                              std::to_string(out.config.tau));

    auto tariff_path = resolve(out.config.tariff_file);
    std::ifstream tariff_in(tariff_path);
    if (!tariff_in) throw parse_error(tariff_path.string(), 0, "cannot open tariff");
    out.pricing = load_tariff(tariff_in, out.config.tau, clamp_negative_prices,
                              tariff_path.string());
    return out;
}

}  // namespace upmr::io
