#pragma once

// Shared helpers for the test suites: a portable uniform generator (raw
// mt19937_64 draws mapped to doubles, so sequences do not depend on the
// standard library's distribution implementations) and small instance
// builders used across module tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "upmr/model.hpp"

namespace testsupport {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Trace with explicit request rows; class ids are 1-based in order.
inline upmr::WorkloadTrace make_trace(std::vector<upmr::LossFactor> losses,
                                      std::vector<std::vector<double>> requests,
                                      double slot_hours = 1.0) {
    upmr::WorkloadTrace trace;
    trace.tau = requests.empty() ? 0 : requests.front().size();
    trace.slot_hours = slot_hours;
    for (std::size_t i = 0; i < losses.size(); ++i)
        trace.classes.push_back({static_cast<int>(i + 1), losses[i]});
    trace.requests = std::move(requests);
    return trace;
}

inline upmr::PricingSchedule flat_tariff(std::size_t tau, double alpha) {
    upmr::PricingSchedule p;
    p.energy_usd_per_kwh.assign(tau, alpha);
    return p;
}

inline upmr::PricingSchedule flat_tariff_with_peak(std::size_t tau, double alpha, double beta) {
    upmr::PricingSchedule p = flat_tariff(tau, alpha);
    upmr::DemandChargeWindow w;
    w.rate_usd_per_kw = beta;
    for (std::size_t t = 0; t < tau; ++t) w.slots.push_back(t);
    p.demand_charges.push_back(w);
    return p;
}

// Random plan that is feasible by construction for the given reward factor.
inline upmr::SchedulePlan random_feasible_plan(std::mt19937_64& rng,
                                               const upmr::WorkloadTrace& trace,
                                               const upmr::DataCenterParams& machines,
                                               const upmr::StorageParams& storage,
                                               const upmr::RewardPolicy& policy, double rho) {
    const std::size_t tau = trace.tau;
    const std::size_t n = trace.class_count();
    auto plan = upmr::SchedulePlan::zeros(n, tau);
    plan.reward_factor = rho;

    for (std::size_t i = 0; i < n; ++i) {
        int cap = upmr::floored_deferment(trace.classes[i].loss, rho, policy.max_deferment_slots);
        if (cap < 1) continue;
        for (std::size_t t = 0; t + 1 < tau; ++t) {
            double take = std::floor(trace.requests[i][t] * uniform_in(rng, 0.0, 0.9));
            if (take <= 0.0) continue;
            std::size_t latest = std::min(t + static_cast<std::size_t>(cap), tau - 1);
            std::size_t serve_at = t + 1 + rng() % (latest - t);
            plan.deferred[i][t] += take;
            plan.served_backlog[i][serve_at] += take;
        }
    }

    // Machines track the scheduled load exactly, with occasional headroom.
    double prev = machines.initial_machines;
    for (std::size_t t = 0; t < tau; ++t) {
        double load = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            load += trace.requests[i][t] - plan.deferred[i][t] + plan.served_backlog[i][t];
        double need = std::ceil(load / machines.requests_per_machine);
        if (uniform01(rng) < 0.3) need += 1.0;
        double delta = need - prev;
        if (delta >= 0.0)
            plan.machines_on[t] = delta;
        else
            plan.machines_off[t] = -delta;
        prev = need;
    }

    if (storage.enabled()) {
        double level = storage.initial_charge_kwh;
        for (std::size_t t = 0; t < tau; ++t) {
            double lo = std::max(-storage.max_discharge_kw * trace.slot_hours, -level);
            double hi = std::min(storage.max_charge_kw * trace.slot_hours,
                                 storage.capacity_kwh - level);
            double flow = uniform_in(rng, lo, hi);
            plan.storage_flow_kwh[t] = flow;
            level += flow;
        }
    }
    return plan;
}

}  // namespace testsupport
