#pragma once

// Cycle planner. The reward factor axis splits into half-open subdomains on
// which every class's floored deferment response is constant; within one
// subdomain the reward outlay is increasing in the factor while the operating
// cost floor is fixed, so only the left endpoint can win. Each subdomain
// therefore yields one linear program over machine switching, per-class
// deferment, and storage flows; the planner solves them all and keeps the
// most profitable plan, re-priced through the accounting model rather than
// trusting solver objectives.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "upmr/lp.hpp"
#include "upmr/model.hpp"

namespace upmr::planner {

// ---- Reward-factor subdomains ---------------------------------------------

struct Subdomain {
    double lower = 0.0;
    double upper = kInfinity;           // half-open [lower, upper)
    std::vector<int> deferment_floors;  // aligned with the class list
};

// Walks the reward axis left to right. A class stops moving the frontier once
// its response plateaus at the deferment ceiling; each step ends at the next
// point where some floored response increments.
inline std::vector<Subdomain> enumerate_subdomains(const std::vector<TenantClass>& classes,
                                                   int max_deferment) {
    if (classes.empty()) throw std::invalid_argument("need at least one class");
    if (max_deferment < 0) throw std::invalid_argument("deferment ceiling must be >= 0");

    std::vector<Subdomain> out;
    double lb = 0.0;
    const std::size_t limit = classes.size() * static_cast<std::size_t>(max_deferment + 1) + 2;
    while (true) {
        if (out.size() > limit) throw std::logic_error("subdomain walk failed to terminate");
        Subdomain sub;
        sub.lower = lb;
        sub.deferment_floors.reserve(classes.size());
        double ub = kInfinity;
        for (const auto& c : classes) {
            int floors = floored_deferment(c.loss, lb, max_deferment);
            sub.deferment_floors.push_back(floors);
            if (c.loss.is_inelastic()) continue;
            double kappa = c.loss.per_slot_usd();
            if (lb < (max_deferment + 1) * kappa)  // still short of the plateau
                ub = std::min(ub, (floors + 2) * kappa);
        }
        sub.upper = ub;
        out.push_back(std::move(sub));
        if (!std::isfinite(ub)) return out;
        if (!(ub > lb)) throw std::logic_error("subdomain bounds failed to advance");
        lb = ub;
    }
}

// ---- Subproblem construction ------------------------------------------------

struct VariableLayout {
    std::size_t tau = 0;
    std::size_t class_count = 0;
    std::vector<std::size_t> turn_on, turn_off;          // [t]
    std::vector<std::vector<std::size_t>> defer, serve;  // [i][t]; empty when class is pinned
    std::vector<std::size_t> charge, discharge;          // [t]; empty without storage
    std::vector<std::size_t> grid;                       // [t]; empty when folded into costs
    std::vector<std::size_t> peak;                       // one epigraph var per charged window
    std::vector<std::size_t> peak_window;                // its index into pricing.demand_charges
};

struct Subproblem {
    lp::LinearProgram program;
    VariableLayout layout;
    double objective_constant = 0.0;  // folded-away part of -(wear + bill)
};

// Builds the operating-cost LP for one subdomain: maximize -(wear + bill)
// subject to machine sufficiency, backlog/deadline bookkeeping per deferring
// class, and storage limits. Without storage the grid draw is provably
// non-negative, so its cost folds straight into the column objectives instead
// of carrying per-slot epigraph variables.
inline Subproblem build_subproblem(const WorkloadTrace& trace, const PricingSchedule& pricing,
                                   const DataCenterParams& machines, const StorageParams& storage,
                                   const Subdomain& sub, bool with_storage) {
    const std::size_t tau = trace.tau;
    const std::size_t n_classes = trace.class_count();
    if (sub.deferment_floors.size() != n_classes)
        throw std::invalid_argument("subdomain floors do not match the class list");

    const double T = trace.slot_hours;
    const double N = machines.requests_per_machine;
    const double idle_e = machines.pue * T * machines.idle_power_kw;  // kwh per machine-slot
    const double util_e =
        machines.pue * T * (machines.peak_power_kw - machines.idle_power_kw) / N;
    const double on_e = machines.pue * machines.poweron_overhead_kwh;
    const double off_e = machines.pue * machines.poweroff_overhead_kwh;
    const double m0 = machines.initial_machines;
    const bool fold = !with_storage;

    std::vector<double> slot_total(tau);
    for (std::size_t t = 0; t < tau; ++t) slot_total[t] = trace.slot_total(t);
    double total_requests = 0.0;
    for (std::size_t t = 0; t < tau; ++t) total_requests += slot_total[t];

    const auto& alpha = pricing.energy_usd_per_kwh;
    std::vector<double> tail_alpha(tau + 1, 0.0);
    for (std::size_t t = tau; t-- > 0;) tail_alpha[t] = tail_alpha[t + 1] + alpha[t];

    Subproblem out;
    auto& prog = out.program;
    auto& lay = out.layout;
    lay.tau = tau;
    lay.class_count = n_classes;

    // machine switching; the cap keeps on/off wash pairs bounded and makes a
    // cost-favorable start possible when grid costs are folded in
    const double switch_cap = m0 + total_requests / N + 1.0;
    lay.turn_on.resize(tau);
    lay.turn_off.resize(tau);
    for (std::size_t t = 0; t < tau; ++t) {
        double c_on = -machines.poweron_wear_usd;
        double c_of = -machines.poweroff_wear_usd;
        if (fold) {
            c_on -= on_e * alpha[t] + idle_e * tail_alpha[t];
            c_of -= off_e * alpha[t] - idle_e * tail_alpha[t];
        }
        lay.turn_on[t] = prog.add_variable("on" + std::to_string(t), 0.0, switch_cap, c_on);
        lay.turn_off[t] = prog.add_variable("of" + std::to_string(t), 0.0, switch_cap, c_of);
    }

    lay.defer.assign(n_classes, {});
    lay.serve.assign(n_classes, {});
    for (std::size_t i = 0; i < n_classes; ++i) {
        if (sub.deferment_floors[i] < 1) continue;  // response pinned at zero
        const std::string id = std::to_string(trace.classes[i].id);
        lay.defer[i].resize(tau);
        lay.serve[i].resize(tau);
        for (std::size_t t = 0; t < tau; ++t) {
            double swing = fold ? util_e * alpha[t] : 0.0;
            lay.defer[i][t] = prog.add_variable("df" + id + "_" + std::to_string(t), 0.0,
                                                trace.requests[i][t], swing);
            lay.serve[i][t] = prog.add_variable("sv" + id + "_" + std::to_string(t), 0.0,
                                                lp::kUnbounded, -swing);
        }
    }

    if (with_storage) {
        lay.charge.resize(tau);
        lay.discharge.resize(tau);
        for (std::size_t t = 0; t < tau; ++t) {
            lay.charge[t] = prog.add_variable("ci" + std::to_string(t), 0.0,
                                              storage.max_charge_kw * T, 0.0);
            lay.discharge[t] = prog.add_variable("co" + std::to_string(t), 0.0,
                                                 storage.max_discharge_kw * T,
                                                 -storage.wear_usd_per_kwh);
        }
        lay.grid.resize(tau);
        for (std::size_t t = 0; t < tau; ++t)
            lay.grid[t] =
                prog.add_variable("g" + std::to_string(t), 0.0, lp::kUnbounded, -alpha[t]);
    }

    for (std::size_t j = 0; j < pricing.demand_charges.size(); ++j) {
        if (pricing.demand_charges[j].rate_usd_per_kw <= 0.0) continue;
        lay.peak.push_back(prog.add_variable("q" + std::to_string(j), 0.0, lp::kUnbounded,
                                             -pricing.demand_charges[j].rate_usd_per_kw / T));
        lay.peak_window.push_back(j);
    }

    if (fold) {
        long double c = 0.0;
        for (std::size_t t = 0; t < tau; ++t)
            c += alpha[t] * (idle_e * m0 + util_e * slot_total[t]);
        out.objective_constant = -static_cast<double>(c);
    }

    // machine sufficiency: per-slot served load cannot outrun capacity
    for (std::size_t t = 0; t < tau; ++t) {
        std::vector<lp::Term> terms;
        terms.reserve(2 * (t + 1) + 2 * n_classes);
        for (std::size_t s = 0; s <= t; ++s) {
            terms.push_back({lay.turn_on[s], -1.0});
            terms.push_back({lay.turn_off[s], 1.0});
        }
        for (std::size_t i = 0; i < n_classes; ++i) {
            if (lay.defer[i].empty()) continue;
            terms.push_back({lay.defer[i][t], -1.0 / N});
            terms.push_back({lay.serve[i][t], 1.0 / N});
        }
        prog.add_constraint("cap" + std::to_string(t), lp::RowSense::less_equal,
                            m0 - slot_total[t] / N, std::move(terms));
    }

    // backlog never below zero; deferred work lands by its deadline
    for (std::size_t i = 0; i < n_classes; ++i) {
        if (lay.defer[i].empty()) continue;
        const std::string id = std::to_string(trace.classes[i].id);
        const auto& arrivals = trace.requests[i];
        std::vector<double> cum(tau);
        {
            long double acc = 0.0;
            for (std::size_t t = 0; t < tau; ++t) {
                acc += arrivals[t];
                cum[t] = static_cast<double>(acc);
            }
        }
        for (std::size_t t = 0; t < tau; ++t) {
            std::vector<lp::Term> terms;
            terms.reserve(2 * (t + 1));
            for (std::size_t s = 0; s <= t; ++s) {
                terms.push_back({lay.serve[i][s], 1.0});
                terms.push_back({lay.defer[i][s], -1.0});
            }
            prog.add_constraint("bkg" + id + "_" + std::to_string(t),
                                lp::RowSense::less_equal, 0.0, std::move(terms));
        }
        const std::size_t horizon = static_cast<std::size_t>(sub.deferment_floors[i]);
        for (std::size_t t = 0; t + horizon + 1 < tau; ++t) {
            if (cum[t] <= 0.0) continue;  // nothing has arrived, row is implied
            const std::size_t due = t + horizon;
            std::vector<lp::Term> terms;
            terms.reserve(2 * (due + 1));
            for (std::size_t s = 0; s <= due; ++s) {
                terms.push_back({lay.defer[i][s], 1.0});
                terms.push_back({lay.serve[i][s], -1.0});
            }
            prog.add_constraint("ddl" + id + "_" + std::to_string(t),
                                lp::RowSense::less_equal, cum[due] - cum[t], std::move(terms));
        }
        {
            // everything accepted in the cycle is served in the cycle
            std::vector<lp::Term> terms;
            terms.reserve(2 * tau);
            for (std::size_t s = 0; s < tau; ++s) {
                terms.push_back({lay.defer[i][s], 1.0});
                terms.push_back({lay.serve[i][s], -1.0});
            }
            prog.add_constraint("fin" + id, lp::RowSense::less_equal, 0.0, std::move(terms));
        }
    }

    if (with_storage) {
        for (std::size_t t = 0; t < tau; ++t) {
            std::vector<lp::Term> up, down;
            up.reserve(2 * (t + 1));
            down.reserve(2 * (t + 1));
            for (std::size_t s = 0; s <= t; ++s) {
                up.push_back({lay.charge[s], 1.0});
                up.push_back({lay.discharge[s], -1.0});
                down.push_back({lay.charge[s], -1.0});
                down.push_back({lay.discharge[s], 1.0});
            }
            prog.add_constraint("socu" + std::to_string(t), lp::RowSense::less_equal,
                                storage.capacity_kwh - storage.initial_charge_kwh,
                                std::move(up));
            prog.add_constraint("socl" + std::to_string(t), lp::RowSense::less_equal,
                                storage.initial_charge_kwh, std::move(down));
        }
    }

    // grid draw expression for slot t, minus any epigraph/peak variable
    auto draw_row = [&](std::size_t t, std::size_t subtract_var, const std::string& name) {
        std::vector<lp::Term> terms;
        terms.reserve(2 * (t + 1) + 2 * n_classes + 3);
        for (std::size_t s = 0; s <= t; ++s) {
            terms.push_back({lay.turn_on[s], idle_e});
            terms.push_back({lay.turn_off[s], -idle_e});
        }
        if (on_e != 0.0) terms.push_back({lay.turn_on[t], on_e});
        if (off_e != 0.0) terms.push_back({lay.turn_off[t], off_e});
        for (std::size_t i = 0; i < n_classes; ++i) {
            if (lay.defer[i].empty()) continue;
            terms.push_back({lay.defer[i][t], -util_e});
            terms.push_back({lay.serve[i][t], util_e});
        }
        if (with_storage) {
            terms.push_back({lay.charge[t], 1.0});
            terms.push_back({lay.discharge[t], -1.0});
        }
        terms.push_back({subtract_var, -1.0});
        prog.add_constraint(name, lp::RowSense::less_equal,
                            -idle_e * m0 - util_e * slot_total[t], std::move(terms));
    };

    if (with_storage)
        for (std::size_t t = 0; t < tau; ++t)
            draw_row(t, lay.grid[t], "pwr" + std::to_string(t));

    for (std::size_t k = 0; k < lay.peak.size(); ++k) {
        const auto& window = pricing.demand_charges[lay.peak_window[k]];
        for (std::size_t t : window.slots) {
            const std::string name = "pk" + std::to_string(lay.peak_window[k]) + "_" +
                                     std::to_string(t);
            if (with_storage) {
                prog.add_constraint(name, lp::RowSense::less_equal, 0.0,
                                    {{lay.grid[t], 1.0}, {lay.peak[k], -1.0}});
            } else {
                draw_row(t, lay.peak[k], name);
            }
        }
    }

    return out;
}

// Reads the decision columns back into a plan; values inside the clip window
// collapse to zero so reports stay free of solver dust.
inline SchedulePlan extract_plan(const Subproblem& sub, const lp::LpSolution& sol,
                                 double reward_factor) {
    const auto& lay = sub.layout;
    auto plan = SchedulePlan::zeros(lay.class_count, lay.tau);
    plan.reward_factor = reward_factor;
    auto clip = [](double v) { return std::abs(v) < kValueClip ? 0.0 : v; };
    for (std::size_t t = 0; t < lay.tau; ++t) {
        plan.machines_on[t] = clip(sol.values[lay.turn_on[t]]);
        plan.machines_off[t] = clip(sol.values[lay.turn_off[t]]);
        if (!lay.charge.empty())
            plan.storage_flow_kwh[t] =
                clip(sol.values[lay.charge[t]] - sol.values[lay.discharge[t]]);
    }
    for (std::size_t i = 0; i < lay.class_count; ++i) {
        if (lay.defer[i].empty()) continue;
        for (std::size_t t = 0; t < lay.tau; ++t) {
            plan.deferred[i][t] = clip(sol.values[lay.defer[i][t]]);
            plan.served_backlog[i][t] = clip(sol.values[lay.serve[i][t]]);
        }
    }
    return plan;
}

// ---- Scenario driver ---------------------------------------------------------

struct SubdomainReport {
    Subdomain domain;
    lp::SolveStatus status = lp::SolveStatus::infeasible;
    double profit = std::numeric_limits<double>::quiet_NaN();
    long iterations = 0;
};

struct SolvedScenario {
    ScenarioKind kind = ScenarioKind::up;
    double reward_factor = 0.0;
    SchedulePlan plan;
    CostBreakdown costs;
    PowerSeries power;
    std::vector<SubdomainReport> subdomains;
    std::size_t winner = 0;
    // the winning subproblem and its raw solution, kept for deep verification
    Subproblem winner_subproblem;
    lp::LpSolution winner_solution;
};

struct PlanOptions {
    unsigned threads = 1;
    lp::SolveOptions lp;
};

inline SolvedScenario solve_scenario(const WorkloadTrace& trace, const PricingSchedule& pricing,
                                     const DataCenterParams& machines,
                                     const StorageParams& storage, const RewardPolicy& policy,
                                     ScenarioKind kind, const PlanOptions& options = {}) {
    trace.validate();
    pricing.validate(trace.tau);
    machines.validate();
    storage.validate();
    policy.validate();
    if (!scenario_stores(kind) && storage.enabled())
        throw std::invalid_argument(std::string(scenario_name(kind)) +
                                    " cannot carry storage parameters");

    std::vector<Subdomain> domains;
    if (scenario_defers(kind)) {
        domains = enumerate_subdomains(trace.classes, policy.max_deferment_slots);
    } else {
        domains.push_back({0.0, kInfinity, std::vector<int>(trace.class_count(), 0)});
    }
    const bool with_storage = scenario_stores(kind);

    struct Outcome {
        lp::SolveStatus status = lp::SolveStatus::infeasible;
        long iterations = 0;
        double profit = std::numeric_limits<double>::quiet_NaN();
        SchedulePlan plan;
        CostBreakdown costs;
        Subproblem subproblem;
        lp::LpSolution solution;
        bool usable = false;
    };
    std::vector<Outcome> outcomes(domains.size());

    auto solve_one = [&](std::size_t k) {
        Outcome& res = outcomes[k];
        Subproblem sub =
            build_subproblem(trace, pricing, machines, storage, domains[k], with_storage);
        lp::LpSolution sol = lp::solve_lp(sub.program, options.lp);
        res.status = sol.status;
        res.iterations = sol.iterations;
        if (sol.status != lp::SolveStatus::optimal) return;
        res.plan = extract_plan(sub, sol, domains[k].lower);
        res.costs = evaluate_plan(trace, pricing, machines, storage, policy, res.plan);
        res.profit = res.costs.profit;
        res.subproblem = std::move(sub);
        res.solution = std::move(sol);
        res.usable = true;
    };

    const unsigned workers =
        std::max(1u, std::min<unsigned>(options.threads,
                                        static_cast<unsigned>(domains.size())));
    if (workers == 1) {
        for (std::size_t k = 0; k < domains.size(); ++k) solve_one(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t k = next.fetch_add(1);
                    if (k >= domains.size()) return;
                    try {
                        solve_one(k);
                    } catch (...) {
                        std::lock_guard<std::mutex> hold(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    SolvedScenario out;
    out.kind = kind;
    out.subdomains.reserve(domains.size());
    bool have_winner = false;
    std::size_t best = 0;
    for (std::size_t k = 0; k < domains.size(); ++k) {
        out.subdomains.push_back(
            {domains[k], outcomes[k].status, outcomes[k].profit, outcomes[k].iterations});
        if (!outcomes[k].usable) continue;
        if (!have_winner || outcomes[k].profit > outcomes[best].profit) {
            best = k;
            have_winner = true;
        }
    }
    if (!have_winner)
        throw std::runtime_error("no reward subdomain produced a solvable program");

    out.winner = best;
    out.reward_factor = domains[best].lower;
    out.plan = std::move(outcomes[best].plan);
    out.costs = outcomes[best].costs;
    out.power = derive_power_series(trace, machines, storage, out.plan);
    out.winner_subproblem = std::move(outcomes[best].subproblem);
    out.winner_solution = std::move(outcomes[best].solution);
    return out;
}

// Integralizes the machine trajectory by rounding the on-count up each slot
// and re-deriving the switch sequence; never loses feasibility since capacity
// only grows. Reported separately from the relaxed optimum.
inline SchedulePlan round_up_machines(const SchedulePlan& plan, const DataCenterParams& machines) {
    SchedulePlan fixed = plan;
    const std::size_t tau = plan.machines_on.size();
    long double level = machines.initial_machines;
    double previous = machines.initial_machines;
    for (std::size_t t = 0; t < tau; ++t) {
        level += plan.machines_on[t] - plan.machines_off[t];
        double target = std::ceil(static_cast<double>(level) - kFeasTol);
        double diff = target - previous;
        fixed.machines_on[t] = std::max(diff, 0.0);
        fixed.machines_off[t] = std::max(-diff, 0.0);
        previous = target;
    }
    return fixed;
}

}  // namespace upmr::planner
