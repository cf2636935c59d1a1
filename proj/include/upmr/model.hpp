#pragma once

// Core domain model for usage-priced cloud capacity planning with deferment
// rewards and on-site storage.
//
// The model covers one billing cycle of `tau` slots, each `slot_hours` long.
// Tenant classes submit per-slot request counts. The operator may defer part
// of the arriving work within a class-specific deadline, buy and release
// machines, and shift energy through a battery. Money flows:
//
//   revenue  flat usage price per billing unit of requests
//   reward   paid to tenants for accepted deferment deadlines
//   wear     battery discharge wear plus machine switching wear
//   bill     per-slot energy charges plus per-window peak demand charges
//
// INVARIANTS
//   - all request counts, prices, capacities are finite and non-negative
//   - plan feasibility is always checked against the raw decision series;
//     derived power series are recomputed from decisions, never cached
//   - tolerance for feasibility residuals is absolute (kFeasTol)

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace upmr {

// Absolute tolerance for feasibility residuals and equality checks.
inline constexpr double kFeasTol = 1e-7;

// Boundary slack when flooring a deferment deadline. Keeps floor(x) stable
// when x sits a few ulp below an integer subdomain boundary.
inline constexpr double kFloorSlack = 1e-9;

// Decision values with magnitude below this are clipped to zero on extraction.
inline constexpr double kValueClip = 1e-9;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ---- Tenant classes --------------------------------------------------------

// Per-slot revenue loss factor of a tenant class, in $ per deferment slot.
// Inelastic tenants never accept deferment; that case is an explicit state,
// not a large float, so call sites must branch before doing arithmetic.
class LossFactor {
public:
    LossFactor() = default;

    static LossFactor inelastic() noexcept {
        LossFactor f;
        f.value_ = kInfinity;
        return f;
    }

    static LossFactor per_slot(double kappa) {
        if (!std::isfinite(kappa) || kappa <= 0.0)
            throw std::invalid_argument("loss factor must be finite and > 0");
        LossFactor f;
        f.value_ = kappa;
        return f;
    }

    bool is_inelastic() const noexcept { return std::isinf(value_); }

    // Finite loss rate in $ per slot. Only valid for elastic classes.
    double per_slot_usd() const {
        if (is_inelastic())
            throw std::logic_error("inelastic class has no finite loss factor");
        return value_;
    }

    bool operator==(const LossFactor& other) const noexcept = default;

private:
    double value_ = 1.0;
};

struct TenantClass {
    int id = 0;
    LossFactor loss = LossFactor::inelastic();
};

// ---- Workload --------------------------------------------------------------

// Request arrivals for one billing cycle: `requests[i][t]` counts the jobs
// class i submits in slot t. Counts are whole numbers kept as doubles.
struct WorkloadTrace {
    std::size_t tau = 0;
    double slot_hours = 1.0;
    std::vector<TenantClass> classes;
    std::vector<std::vector<double>> requests;  // [class][slot]

    std::size_t class_count() const noexcept { return classes.size(); }

    double slot_total(std::size_t t) const {
        double sum = 0.0;
        for (const auto& row : requests) sum += row.at(t);
        return sum;
    }

    void validate() const {
        if (tau == 0) throw std::invalid_argument("trace needs at least one slot");
        if (!(slot_hours > 0.0) || !std::isfinite(slot_hours))
            throw std::invalid_argument("slot length must be positive and finite");
        if (classes.empty()) throw std::invalid_argument("trace needs at least one class");
        if (requests.size() != classes.size())
            throw std::invalid_argument("request matrix does not match class list");
        for (std::size_t i = 0; i < classes.size(); ++i) {
            for (std::size_t j = i + 1; j < classes.size(); ++j)
                if (classes[i].id == classes[j].id)
                    throw std::invalid_argument("duplicate class id " + std::to_string(classes[i].id));
            if (requests[i].size() != tau)
                throw std::invalid_argument("class " + std::to_string(classes[i].id) +
                                            " does not cover every slot");
            for (std::size_t t = 0; t < tau; ++t) {
                double v = requests[i][t];
                if (!std::isfinite(v) || v < 0.0 || v != std::floor(v))
                    throw std::invalid_argument("request count for class " +
                                                std::to_string(classes[i].id) + " slot " +
                                                std::to_string(t + 1) +
                                                " must be a non-negative integer");
            }
        }
    }
};

// ---- Tariff ----------------------------------------------------------------

// One peak demand charge: billed on the maximum grid draw over `slots`.
struct DemandChargeWindow {
    double rate_usd_per_kw = 0.0;
    std::vector<std::size_t> slots;  // 0-based, sorted, unique

    void validate(std::size_t tau) const {
        if (!std::isfinite(rate_usd_per_kw) || rate_usd_per_kw < 0.0)
            throw std::invalid_argument("demand charge rate must be >= 0");
        if (slots.empty())
            throw std::invalid_argument("demand charge window is empty");
        for (std::size_t k = 0; k < slots.size(); ++k) {
            if (slots[k] >= tau)
                throw std::invalid_argument("demand charge window slot out of range");
            if (k > 0 && slots[k] <= slots[k - 1])
                throw std::invalid_argument("demand charge window slots must be strictly increasing");
        }
    }
};

// Per-slot energy prices plus any number of peak demand charges.
struct PricingSchedule {
    std::vector<double> energy_usd_per_kwh;       // [slot]
    std::vector<DemandChargeWindow> demand_charges;

    void validate(std::size_t tau) const {
        if (energy_usd_per_kwh.size() != tau)
            throw std::invalid_argument("energy price series does not cover every slot");
        for (std::size_t t = 0; t < tau; ++t) {
            double a = energy_usd_per_kwh[t];
            if (!std::isfinite(a) || a < 0.0)
                throw std::invalid_argument("energy price in slot " + std::to_string(t + 1) +
                                            " must be >= 0");
        }
        for (const auto& w : demand_charges) w.validate(tau);
    }
};

// ---- Facility parameters ---------------------------------------------------

struct DataCenterParams {
    double requests_per_machine = 1.0;   // rated jobs one machine serves per slot
    double pue = 1.0;                    // total-vs-IT power overhead factor
    double idle_power_kw = 0.0;          // per machine at zero utilization
    double peak_power_kw = 0.0;          // per machine at full utilization
    double poweron_overhead_kwh = 0.0;   // energy to bring one machine up
    double poweroff_overhead_kwh = 0.0;  // energy to park one machine
    double poweron_wear_usd = 0.0;       // component wear per power-on
    double poweroff_wear_usd = 0.0;      // component wear per power-off
    double initial_machines = 0.0;       // machines already on entering slot 1

    void validate() const {
        auto nonneg = [](double v, const char* what) {
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument(std::string(what) + " must be >= 0");
        };
        if (!std::isfinite(requests_per_machine) || requests_per_machine <= 0.0)
            throw std::invalid_argument("requests per machine must be > 0");
        if (!std::isfinite(pue) || pue < 1.0)
            throw std::invalid_argument("power usage effectiveness must be >= 1");
        nonneg(idle_power_kw, "idle power");
        nonneg(peak_power_kw, "peak power");
        if (peak_power_kw < idle_power_kw)
            throw std::invalid_argument("peak power must be >= idle power");
        nonneg(poweron_overhead_kwh, "power-on overhead");
        nonneg(poweroff_overhead_kwh, "power-off overhead");
        nonneg(poweron_wear_usd, "power-on wear");
        nonneg(poweroff_wear_usd, "power-off wear");
        nonneg(initial_machines, "initial machine count");
    }
};

struct StorageParams {
    double capacity_kwh = 0.0;
    double max_charge_kw = 0.0;
    double max_discharge_kw = 0.0;
    double wear_usd_per_kwh = 0.0;   // charged on every discharged KWh
    double initial_charge_kwh = 0.0;

    bool enabled() const noexcept { return capacity_kwh > 0.0; }

    void validate() const {
        auto nonneg = [](double v, const char* what) {
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument(std::string(what) + " must be >= 0");
        };
        nonneg(capacity_kwh, "storage capacity");
        nonneg(max_charge_kw, "charge rate limit");
        nonneg(max_discharge_kw, "discharge rate limit");
        nonneg(wear_usd_per_kwh, "storage wear rate");
        nonneg(initial_charge_kwh, "initial storage charge");
        if (initial_charge_kwh > capacity_kwh)
            throw std::invalid_argument("initial storage charge exceeds capacity");
    }
};

// Usage price and deferment reward contract offered to tenants.
struct RewardPolicy {
    double usage_price_usd = 0.0;      // $ per billing unit of requests
    double unit_requests = 1.0;        // requests per billing unit
    int max_deferment_slots = 0;       // longest deadline tenants may accept
    double reward_factor = 0.0;        // scales the log reward; planner output

    void validate() const {
        if (!std::isfinite(usage_price_usd) || usage_price_usd < 0.0)
            throw std::invalid_argument("usage price must be >= 0");
        if (!std::isfinite(unit_requests) || unit_requests <= 0.0)
            throw std::invalid_argument("billing unit must be > 0 requests");
        if (max_deferment_slots < 0)
            throw std::invalid_argument("max deferment must be >= 0 slots");
        if (!std::isfinite(reward_factor) || reward_factor < 0.0)
            throw std::invalid_argument("reward factor must be >= 0");
    }
};

// ---- Scenario kinds --------------------------------------------------------

// UP    flat usage price only
// UPS   usage price plus storage
// UPMR  usage price plus deferment rewards
// UPMRS usage price plus deferment rewards plus storage
enum class ScenarioKind { up, ups, upmr, upmrs };

inline bool scenario_defers(ScenarioKind k) noexcept {
    return k == ScenarioKind::upmr || k == ScenarioKind::upmrs;
}
inline bool scenario_stores(ScenarioKind k) noexcept {
    return k == ScenarioKind::ups || k == ScenarioKind::upmrs;
}
inline const char* scenario_name(ScenarioKind k) noexcept {
    switch (k) {
        case ScenarioKind::up: return "UP";
        case ScenarioKind::ups: return "UPS";
        case ScenarioKind::upmr: return "UPMR";
        case ScenarioKind::upmrs: return "UPMRS";
    }
    return "?";
}

// ---- Plans and derived series ----------------------------------------------

// Raw operator decisions for one cycle. Everything else is derived from these.
struct SchedulePlan {
    double reward_factor = 0.0;                 // offered to tenants this cycle
    std::vector<double> machines_on;            // [slot] machines switched on
    std::vector<double> machines_off;           // [slot] machines switched off
    std::vector<double> storage_flow_kwh;       // [slot] battery flow, + charge / - discharge
    std::vector<std::vector<double>> deferred;  // [class][slot] arrivals pushed past their slot
    std::vector<std::vector<double>> served_backlog;  // [class][slot] backlog drained in slot

    static SchedulePlan zeros(std::size_t classes, std::size_t tau) {
        SchedulePlan p;
        p.machines_on.assign(tau, 0.0);
        p.machines_off.assign(tau, 0.0);
        p.storage_flow_kwh.assign(tau, 0.0);
        p.deferred.assign(classes, std::vector<double>(tau, 0.0));
        p.served_backlog.assign(classes, std::vector<double>(tau, 0.0));
        return p;
    }

    void validate_shape(std::size_t classes, std::size_t tau) const {
        if (machines_on.size() != tau || machines_off.size() != tau ||
            storage_flow_kwh.size() != tau)
            throw std::invalid_argument("plan slot series do not cover every slot");
        if (deferred.size() != classes || served_backlog.size() != classes)
            throw std::invalid_argument("plan class series do not cover every class");
        for (std::size_t i = 0; i < classes; ++i)
            if (deferred[i].size() != tau || served_backlog[i].size() != tau)
                throw std::invalid_argument("plan class series do not cover every slot");
        if (!std::isfinite(reward_factor) || reward_factor < 0.0)
            throw std::invalid_argument("plan reward factor must be >= 0");
    }
};

// Power history implied by a plan.
struct PowerSeries {
    std::vector<double> machines;             // m[t], machines on during slot t
    std::vector<double> utilization;          // share of rated capacity in use
    std::vector<double> server_power_kw;      // IT power draw
    std::vector<double> switching_energy_kwh; // power-on/off overhead energy
    std::vector<double> state_of_charge_kwh;  // battery level at end of slot
    std::vector<double> grid_energy_kwh;      // energy drawn from the grid
};

struct CostBreakdown {
    double revenue = 0.0;
    double reward = 0.0;
    double wear = 0.0;
    double energy_charge = 0.0;
    double demand_charge = 0.0;
    double bill = 0.0;    // energy_charge + demand_charge
    double profit = 0.0;  // revenue - reward - wear - bill
};

// ---- Feasibility reporting --------------------------------------------------

struct Violation {
    std::string constraint;
    int class_id = -1;   // -1 when not class specific
    long slot = -1;      // 1-based, -1 when not slot specific
    double residual = 0.0;

    std::string describe() const {
        char buf[160];
        if (class_id >= 0 && slot >= 0)
            std::snprintf(buf, sizeof buf, "%s (class %d, slot %ld, residual %.3e)",
                          constraint.c_str(), class_id, slot, residual);
        else if (slot >= 0)
            std::snprintf(buf, sizeof buf, "%s (slot %ld, residual %.3e)",
                          constraint.c_str(), slot, residual);
        else if (class_id >= 0)
            std::snprintf(buf, sizeof buf, "%s (class %d, residual %.3e)",
                          constraint.c_str(), class_id, residual);
        else
            std::snprintf(buf, sizeof buf, "%s (residual %.3e)", constraint.c_str(), residual);
        return buf;
    }
};

class infeasible_plan_error : public std::runtime_error {
public:
    explicit infeasible_plan_error(std::vector<Violation> violations)
        : std::runtime_error(compose(violations)), violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    static std::string compose(const std::vector<Violation>& vs) {
        std::string msg = "plan violates " + std::to_string(vs.size()) + " constraint(s)";
        for (std::size_t k = 0; k < vs.size() && k < 4; ++k) msg += "; " + vs[k].describe();
        if (vs.size() > 4) msg += "; ...";
        return msg;
    }

    std::vector<Violation> violations_;
};

// ---- Tenant side ------------------------------------------------------------

// Deadline a rational tenant accepts under reward factor `rho`: the log reward
// rho*log(1+D) grows at rate rho/(1+D) while revenue loss grows at the flat
// rate kappa, so utility peaks at rho/kappa - 1, clamped to [0, d_max].
inline double tenant_best_response(const LossFactor& loss, double rho, int d_max) {
    if (!std::isfinite(rho) || rho < 0.0)
        throw std::invalid_argument("reward factor must be >= 0");
    if (d_max < 0) throw std::invalid_argument("max deferment must be >= 0");
    if (loss.is_inelastic()) return 0.0;
    double unclamped = rho / loss.per_slot_usd() - 1.0;
    return std::max(std::min(unclamped, static_cast<double>(d_max)), 0.0);
}

// Whole-slot deadline used by scheduling constraints. The slack keeps the
// floor stable when the best response lands a few ulp under an integer.
inline int floored_deferment(const LossFactor& loss, double rho, int d_max) {
    double d = tenant_best_response(loss, rho, d_max);
    return static_cast<int>(std::floor(d + kFloorSlack));
}

// Reward per billing unit the operator pays a class under factor `rho`.
inline double reward_rate(const LossFactor& loss, double rho, int d_max) {
    double d = tenant_best_response(loss, rho, d_max);
    return rho * std::log1p(d);
}

// Revenue a tenant with finite loss factor gives up by accepting deadline `d`.
inline double revenue_loss(const LossFactor& loss, double d) {
    if (loss.is_inelastic())
        throw std::invalid_argument("inelastic class never accepts deferment");
    if (!std::isfinite(d) || d < 0.0)
        throw std::invalid_argument("deferment deadline must be >= 0");
    return loss.per_slot_usd() * d;
}

// ---- Derived power series ----------------------------------------------------

namespace detail {

// Scheduled work per slot: arrivals minus newly deferred plus drained backlog.
inline double scheduled_load(const WorkloadTrace& trace, const SchedulePlan& plan,
                             std::size_t i, std::size_t t) {
    return trace.requests[i][t] - plan.deferred[i][t] + plan.served_backlog[i][t];
}

}  // namespace detail

// Recomputes machine counts, utilization, battery level, and grid draw from
// raw decisions. Throws infeasible_plan_error when the machine count goes
// negative or work is scheduled onto zero machines; all other feasibility
// questions belong to check_feasibility.
inline PowerSeries derive_power_series(const WorkloadTrace& trace,
                                       const DataCenterParams& machines,
                                       const StorageParams& storage,
                                       const SchedulePlan& plan) {
    trace.validate();
    machines.validate();
    storage.validate();
    plan.validate_shape(trace.class_count(), trace.tau);

    const std::size_t tau = trace.tau;
    const double t_hours = trace.slot_hours;

    PowerSeries s;
    s.machines.resize(tau);
    s.utilization.resize(tau);
    s.server_power_kw.resize(tau);
    s.switching_energy_kwh.resize(tau);
    s.state_of_charge_kwh.resize(tau);
    s.grid_energy_kwh.resize(tau);

    std::vector<Violation> bad;
    long double on_count = machines.initial_machines;
    long double charge = storage.initial_charge_kwh;
    for (std::size_t t = 0; t < tau; ++t) {
        on_count += plan.machines_on[t];
        on_count -= plan.machines_off[t];
        double m = static_cast<double>(on_count);
        if (m < -kFeasTol) {
            bad.push_back({"machine_count_nonnegative", -1, static_cast<long>(t + 1), -m});
            break;
        }
        m = std::max(m, 0.0);

        long double load_acc = 0.0;
        for (std::size_t i = 0; i < trace.class_count(); ++i)
            load_acc += detail::scheduled_load(trace, plan, i, t);
        double load = static_cast<double>(load_acc);

        double util;
        if (m * machines.requests_per_machine <= kFeasTol) {
            if (load > kFeasTol) {
                bad.push_back({"work_scheduled_without_machines", -1,
                               static_cast<long>(t + 1), load});
                break;
            }
            util = 0.0;
            m = 0.0;
        } else {
            util = load / (machines.requests_per_machine * m);
        }

        s.machines[t] = m;
        s.utilization[t] = util;
        s.server_power_kw[t] =
            m * (machines.idle_power_kw + (machines.peak_power_kw - machines.idle_power_kw) * util);
        s.switching_energy_kwh[t] = machines.poweron_overhead_kwh * plan.machines_on[t] +
                                    machines.poweroff_overhead_kwh * plan.machines_off[t];
        charge += plan.storage_flow_kwh[t];
        s.state_of_charge_kwh[t] = static_cast<double>(charge);
        double draw = machines.pue * (s.server_power_kw[t] * t_hours + s.switching_energy_kwh[t]) +
                      plan.storage_flow_kwh[t];
        s.grid_energy_kwh[t] = std::max(draw, 0.0);
    }
    if (!bad.empty()) throw infeasible_plan_error(std::move(bad));
    return s;
}

// ---- Feasibility ------------------------------------------------------------

// Checks every scheduling constraint and returns the violated ones. `caps`
// holds the deferment deadline each class accepted (slots, one per class,
// floored internally); an empty list means every class gets deadline zero.
inline std::vector<Violation> check_feasibility(const WorkloadTrace& trace,
                                                const DataCenterParams& machines,
                                                const StorageParams& storage,
                                                const RewardPolicy& policy,
                                                const std::vector<double>& caps,
                                                const SchedulePlan& plan,
                                                double tol = kFeasTol) {
    trace.validate();
    machines.validate();
    storage.validate();
    policy.validate();
    plan.validate_shape(trace.class_count(), trace.tau);
    if (!caps.empty() && caps.size() != trace.class_count())
        throw std::invalid_argument("deferment cap list does not match class list");

    const std::size_t tau = trace.tau;
    const std::size_t n_classes = trace.class_count();
    const double t_hours = trace.slot_hours;
    std::vector<Violation> out;
    auto flag = [&out](const char* name, int cls, long slot, double residual) {
        out.push_back({name, cls, slot, residual});
    };

    // Elementwise decision bounds.
    for (std::size_t t = 0; t < tau; ++t) {
        if (plan.machines_on[t] < -tol)
            flag("poweron_nonnegative", -1, long(t + 1), -plan.machines_on[t]);
        if (plan.machines_off[t] < -tol)
            flag("poweroff_nonnegative", -1, long(t + 1), -plan.machines_off[t]);
    }
    for (std::size_t i = 0; i < n_classes; ++i) {
        int cid = trace.classes[i].id;
        for (std::size_t t = 0; t < tau; ++t) {
            double phi = plan.deferred[i][t];
            double eta = plan.served_backlog[i][t];
            if (phi < -tol) flag("deferral_nonnegative", cid, long(t + 1), -phi);
            if (phi > trace.requests[i][t] + tol)
                flag("deferral_within_arrivals", cid, long(t + 1), phi - trace.requests[i][t]);
            if (eta < -tol) flag("backlog_service_nonnegative", cid, long(t + 1), -eta);
        }
    }

    // Machine count stays non-negative and covers the scheduled load.
    {
        long double on_count = machines.initial_machines;
        for (std::size_t t = 0; t < tau; ++t) {
            on_count += plan.machines_on[t] - plan.machines_off[t];
            double m = static_cast<double>(on_count);
            if (m < -tol) flag("machine_count_nonnegative", -1, long(t + 1), -m);
            long double load = 0.0;
            for (std::size_t i = 0; i < n_classes; ++i)
                load += detail::scheduled_load(trace, plan, i, t);
            double deficit =
                static_cast<double>(load) / machines.requests_per_machine - std::max(m, 0.0);
            if (deficit > tol) flag("machine_capacity", -1, long(t + 1), deficit);
        }
    }

    // Battery rate and level limits.
    {
        long double charge = storage.initial_charge_kwh;
        for (std::size_t t = 0; t < tau; ++t) {
            double flow = plan.storage_flow_kwh[t];
            if (flow > storage.max_charge_kw * t_hours + tol)
                flag("charge_rate_limit", -1, long(t + 1), flow - storage.max_charge_kw * t_hours);
            if (-flow > storage.max_discharge_kw * t_hours + tol)
                flag("discharge_rate_limit", -1, long(t + 1),
                     -flow - storage.max_discharge_kw * t_hours);
            charge += flow;
            double level = static_cast<double>(charge);
            if (level < -tol) flag("storage_level_nonnegative", -1, long(t + 1), -level);
            if (level > storage.capacity_kwh + tol)
                flag("storage_level_capacity", -1, long(t + 1), level - storage.capacity_kwh);
        }
    }

    // Deferred work is served within its deadline and never served early.
    for (std::size_t i = 0; i < n_classes; ++i) {
        int cid = trace.classes[i].id;
        double cap = caps.empty() ? 0.0 : caps[i];
        if (!std::isfinite(cap) || cap < 0.0)
            throw std::invalid_argument("deferment cap must be >= 0");
        auto horizon = static_cast<std::size_t>(std::floor(cap + kFloorSlack));

        // backlog[t] = cumulative deferred - cumulative served, must stay >= 0
        std::vector<double> backlog(tau);
        long double acc = 0.0;
        for (std::size_t t = 0; t < tau; ++t) {
            acc += plan.deferred[i][t] - plan.served_backlog[i][t];
            backlog[t] = static_cast<double>(acc);
            if (backlog[t] < -tol) flag("backlog_nonnegative", cid, long(t + 1), -backlog[t]);
        }

        // Deadline: everything arriving by t is served by t + horizon, with the
        // horizon clamped to the end of the cycle.
        for (std::size_t t = 0; t < tau; ++t) {
            std::size_t due = std::min(t + horizon, tau - 1);
            long double window = 0.0;  // arrivals in (t, due]
            for (std::size_t u = t + 1; u <= due; ++u) window += trace.requests[i][u];
            double slack = static_cast<double>(window) - backlog[due];
            if (slack < -tol) flag("deferral_deadline", cid, long(t + 1), -slack);
        }

        // Cycle closes with no outstanding backlog.
        if (std::abs(backlog[tau - 1]) > tol)
            flag("cycle_completion", cid, long(tau), std::abs(backlog[tau - 1]));
    }

    return out;
}

// ---- Money ------------------------------------------------------------------

// Full cost breakdown of a feasible plan. Deferment caps are the tenants'
// best responses to the plan's reward factor; an infeasible plan throws
// infeasible_plan_error with the violation list attached.
inline CostBreakdown evaluate_plan(const WorkloadTrace& trace, const PricingSchedule& pricing,
                                   const DataCenterParams& machines, const StorageParams& storage,
                                   const RewardPolicy& policy, const SchedulePlan& plan) {
    pricing.validate(trace.tau);
    policy.validate();

    std::vector<double> caps(trace.class_count());
    for (std::size_t i = 0; i < trace.class_count(); ++i)
        caps[i] = tenant_best_response(trace.classes[i].loss, plan.reward_factor,
                                       policy.max_deferment_slots);

    auto violations = check_feasibility(trace, machines, storage, policy, caps, plan);
    if (!violations.empty()) throw infeasible_plan_error(std::move(violations));

    PowerSeries series = derive_power_series(trace, machines, storage, plan);
    const std::size_t tau = trace.tau;

    CostBreakdown cost;
    long double revenue = 0.0, reward = 0.0;
    for (std::size_t i = 0; i < trace.class_count(); ++i) {
        long double units = 0.0;
        for (std::size_t t = 0; t < tau; ++t) units += trace.requests[i][t];
        units /= policy.unit_requests;
        revenue += policy.usage_price_usd * units;
        reward += reward_rate(trace.classes[i].loss, plan.reward_factor,
                              policy.max_deferment_slots) *
                  units;
    }
    cost.revenue = static_cast<double>(revenue);
    cost.reward = static_cast<double>(reward);

    long double wear = 0.0;
    for (std::size_t t = 0; t < tau; ++t) {
        wear += storage.wear_usd_per_kwh * std::max(-plan.storage_flow_kwh[t], 0.0);
        wear += machines.poweron_wear_usd * plan.machines_on[t];
        wear += machines.poweroff_wear_usd * plan.machines_off[t];
    }
    cost.wear = static_cast<double>(wear);

    long double energy = 0.0;
    for (std::size_t t = 0; t < tau; ++t)
        energy += pricing.energy_usd_per_kwh[t] * series.grid_energy_kwh[t];
    cost.energy_charge = static_cast<double>(energy);

    long double demand = 0.0;
    for (const auto& w : pricing.demand_charges) {
        double peak = 0.0;
        for (std::size_t t : w.slots) peak = std::max(peak, series.grid_energy_kwh[t]);
        demand += w.rate_usd_per_kw * peak / trace.slot_hours;
    }
    cost.demand_charge = static_cast<double>(demand);

    cost.bill = cost.energy_charge + cost.demand_charge;
    cost.profit = cost.revenue - cost.reward - cost.wear - cost.bill;
    return cost;
}

}  // namespace upmr
