#pragma once

// Self-contained dense linear programming kernel.
//
// Programs are stated as: maximize c'x subject to row constraints with
// senses <=, >=, =, and per-variable bounds [lower, upper]. Lower bounds
// must be finite; upper bounds may be +infinity. The solver is a bounded
// variable simplex on a dense tableau:
//
//   - every row carries one logical column (slack for inequalities, a
//     variable fixed at zero for equalities), so the logical set is always
//     a valid starting basis
//   - when the starting point is dual feasible (after placing nonbasic
//     columns at their cost-favorable finite bound) a dual simplex runs to
//     optimality; this covers every cost-minimizing scheduling program here
//   - otherwise a zero-cost dual pass restores primal feasibility, then a
//     primal pass with the true costs finishes; no artificial columns
//   - Dantzig pricing with a Bland lowest-index fallback after degenerate
//     streaks guarantees termination
//
// The returned point is re-verified against the original rows and bounds;
// if tableau drift exceeds tolerance the basic values are recomputed from
// the original data through an LU solve before reporting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace upmr::lp {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

enum class RowSense { less_equal, greater_equal, equal };
enum class SolveStatus { optimal, infeasible, unbounded };

inline const char* status_name(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
    }
    return "?";
}

struct Term {
    std::size_t var;
    double value;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    RowSense sense = RowSense::less_equal;
    double rhs = 0.0;
};

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kUnbounded;
    double objective = 0.0;
};

class LinearProgram {
public:
    std::size_t add_variable(std::string name, double lower, double upper, double objective) {
        vars_.push_back({std::move(name), lower, upper, objective});
        return vars_.size() - 1;
    }

    void add_constraint(std::string name, RowSense sense, double rhs, std::vector<Term> terms) {
        rows_.push_back({std::move(name), std::move(terms), sense, rhs});
    }

    std::size_t variable_count() const noexcept { return vars_.size(); }
    std::size_t constraint_count() const noexcept { return rows_.size(); }
    const std::vector<Variable>& variables() const noexcept { return vars_; }
    const std::vector<Constraint>& constraints() const noexcept { return rows_; }

    void validate() const {
        if (vars_.empty()) throw std::invalid_argument("program has no variables");
        for (const auto& v : vars_) {
            if (!std::isfinite(v.lower))
                throw std::invalid_argument("variable " + v.name + " needs a finite lower bound");
            if (std::isnan(v.upper) || v.upper < v.lower)
                throw std::invalid_argument("variable " + v.name + " has upper < lower");
            if (!std::isfinite(v.objective))
                throw std::invalid_argument("variable " + v.name + " has a non-finite objective");
        }
        for (const auto& r : rows_) {
            if (!std::isfinite(r.rhs))
                throw std::invalid_argument("constraint " + r.name + " has a non-finite rhs");
            for (const auto& t : r.terms) {
                if (t.var >= vars_.size())
                    throw std::invalid_argument("constraint " + r.name + " names a missing variable");
                if (!std::isfinite(t.value))
                    throw std::invalid_argument("constraint " + r.name + " has a non-finite term");
            }
        }
    }

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
};

struct SolveOptions {
    double feasibility_tol = 1e-7;  // absolute residual allowed on rows and bounds
    double pivot_tol = 1e-9;        // smallest usable pivot magnitude
    double optimality_tol = 1e-6;   // relative reduced-cost threshold
    long max_iterations = 0;        // 0 picks a size-based ceiling
};

struct LpSolution {
    SolveStatus status = SolveStatus::infeasible;
    double objective = 0.0;
    std::vector<double> values;  // one per variable when optimal
    long iterations = 0;
};

class iteration_limit_error : public std::runtime_error {
public:
    explicit iteration_limit_error(long limit)
        : std::runtime_error("simplex iteration limit " + std::to_string(limit) +
                             " exceeded before convergence") {}
};

// Row and bound residuals of a candidate point, for independent verification.
inline std::vector<std::string> solution_violations(const LinearProgram& lp,
                                                    const std::vector<double>& x, double tol) {
    std::vector<std::string> out;
    if (x.size() != lp.variable_count()) {
        out.push_back("point dimension does not match the program");
        return out;
    }
    char buf[160];
    for (std::size_t j = 0; j < lp.variable_count(); ++j) {
        const auto& v = lp.variables()[j];
        if (x[j] < v.lower - tol || x[j] > v.upper + tol) {
            std::snprintf(buf, sizeof buf, "variable %s = %.12g outside [%.12g, %.12g]",
                          v.name.c_str(), x[j], v.lower, v.upper);
            out.push_back(buf);
        }
    }
    for (const auto& r : lp.constraints()) {
        long double acc = 0.0;
        for (const auto& t : r.terms) acc += static_cast<long double>(t.value) * x[t.var];
        double lhs = static_cast<double>(acc);
        bool bad = (r.sense == RowSense::less_equal && lhs > r.rhs + tol) ||
                   (r.sense == RowSense::greater_equal && lhs < r.rhs - tol) ||
                   (r.sense == RowSense::equal && std::abs(lhs - r.rhs) > tol);
        if (bad) {
            std::snprintf(buf, sizeof buf, "constraint %s: lhs %.12g vs rhs %.12g",
                          r.name.c_str(), lhs, r.rhs);
            out.push_back(buf);
        }
    }
    return out;
}

namespace detail {

class SimplexTableau {
public:
    SimplexTableau(const LinearProgram& lp, const SolveOptions& opt) : lp_(lp), opt_(opt) {
        n_ = lp.variable_count();
        m_ = lp.constraint_count();
        ncols_ = n_ + m_;
        limit_ = opt.max_iterations > 0
                     ? opt.max_iterations
                     : static_cast<long>(50000 + 40 * (m_ + n_));

        // Shift structural columns to [0, width]; fold >= rows into <= rows.
        width_.assign(ncols_, kUnbounded);
        cost_.assign(ncols_, 0.0);
        flipped_.assign(ncols_, false);
        for (std::size_t j = 0; j < n_; ++j) {
            width_[j] = lp.variables()[j].upper - lp.variables()[j].lower;
            cost_[j] = -lp.variables()[j].objective;  // minimize internally
        }

        matrix_.assign(m_ * ncols_, 0.0);
        rhs_.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = lp.constraints()[i];
            double sign = row.sense == RowSense::greater_equal ? -1.0 : 1.0;
            double* dst = &matrix_[i * ncols_];
            for (const auto& t : row.terms) dst[t.var] += sign * t.value;
            long double shift = 0.0;
            for (const auto& t : row.terms)
                shift += static_cast<long double>(sign * t.value) * lp.variables()[t.var].lower;
            rhs_[i] = sign * row.rhs - static_cast<double>(shift);
            dst[n_ + i] = 1.0;
            width_[n_ + i] = row.sense == RowSense::equal ? 0.0 : kUnbounded;
        }
        original_matrix_ = matrix_;
        original_rhs_ = rhs_;

        basis_.resize(m_);
        in_basis_.assign(ncols_, false);
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            in_basis_[n_ + i] = true;
        }
        beta_ = rhs_;
        reduced_ = cost_;
    }

    LpSolution run() {
        // Anti-degeneracy: a deterministic hair of extra cost on every column
        // keeps reduced costs generically nonzero, so ratio ties cannot stall
        // either method into its safeguard rule. Exact costs return before the
        // closing polish.
        perturb_.assign(ncols_, 0.0);
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::size_t j = 0; j < ncols_; ++j) {
            h = (h ^ (j + 0x9e3779b97f4a7c15ull)) * 0xbf58476d1ce4e5b9ull;
            double u = 0.5 + 0.5 * static_cast<double>(h >> 11) * 0x1.0p-53;
            perturb_[j] = 1e-10 * u * (1.0 + std::abs(cost_[j]));
            cost_[j] += perturb_[j];
        }
        reduced_ = cost_;

        // Place nonbasic columns at their cost-favorable bound where that is
        // required for dual feasibility and possible.
        bool dual_ready = true;
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (in_basis_[j] || !(cost_[j] < 0.0)) continue;
            if (std::isfinite(width_[j])) {
                if (width_[j] > 0.0) flip_nonbasic(j);
            } else {
                dual_ready = false;
            }
        }

        if (dual_ready) {
            if (!dual_simplex(true)) return finish(SolveStatus::infeasible);
        } else {
            if (!primal_feasible()) {
                // Dual pass with a zeroed cost row: every basis is trivially
                // dual feasible, so this only restores primal feasibility.
                // cost_ stays live so that flips keep its orientation correct.
                std::fill(reduced_.begin(), reduced_.end(), 0.0);
                if (!dual_simplex(false)) return finish(SolveStatus::infeasible);
                recompute_reduced_costs();
            }
            if (!primal_simplex()) return finish(SolveStatus::unbounded);
        }

        // Exact costs back; the polish pass settles both the perturbation and
        // any pricing drift, and at a generic optimum it exits immediately.
        for (std::size_t j = 0; j < ncols_; ++j)
            cost_[j] += flipped_[j] ? perturb_[j] : -perturb_[j];
        recompute_reduced_costs();
        if (!primal_simplex()) return finish(SolveStatus::unbounded);
        return finish(SolveStatus::optimal);
    }

private:
    // ---- state ----
    const LinearProgram& lp_;
    SolveOptions opt_;
    std::size_t n_ = 0, m_ = 0, ncols_ = 0;
    long limit_ = 0;
    long iterations_ = 0;
    std::vector<double> matrix_;           // m x ncols tableau
    std::vector<double> rhs_;              // working rhs (mutated by flips only)
    std::vector<double> original_matrix_;  // ingestion-time copy for the LU repair
    std::vector<double> original_rhs_;
    std::vector<double> beta_;     // basic values per row
    std::vector<double> width_;    // bound width per column (inf allowed)
    std::vector<double> cost_;     // working minimization costs
    std::vector<double> perturb_;  // anti-degeneracy additions, same orientation
    std::vector<double> reduced_;  // reduced costs per column
    std::vector<bool> flipped_;    // column currently measured from its upper bound
    std::vector<std::size_t> basis_;
    std::vector<bool> in_basis_;

    double* row(std::size_t i) { return &matrix_[i * ncols_]; }
    const double* row(std::size_t i) const { return &matrix_[i * ncols_]; }

    void count_iteration() {
        if (++iterations_ > limit_) throw iteration_limit_error(limit_);
    }

    // ---- elementary operations ----

    void flip_nonbasic(std::size_t j) {
        double w = width_[j];
        for (std::size_t i = 0; i < m_; ++i) {
            double& a = matrix_[i * ncols_ + j];
            if (a != 0.0) {
                beta_[i] -= a * w;
                a = -a;
            }
        }
        cost_[j] = -cost_[j];
        reduced_[j] = -reduced_[j];
        flipped_[j] = !flipped_[j];
    }

    void flip_basic(std::size_t l) {
        std::size_t b = basis_[l];
        double* rl = row(l);
        for (std::size_t k = 0; k < ncols_; ++k)
            if (k != b) rl[k] = -rl[k];
        beta_[l] = width_[b] - beta_[l];
        cost_[b] = -cost_[b];
        flipped_[b] = !flipped_[b];
    }

    void pivot(std::size_t l, std::size_t j) {
        double* rl = row(l);
        const double pv = rl[j];
        const double inv = 1.0 / pv;
        for (std::size_t k = 0; k < ncols_; ++k) rl[k] *= inv;
        rl[j] = 1.0;
        beta_[l] *= inv;

        for (std::size_t i = 0; i < m_; ++i) {
            if (i == l) continue;
            double f = matrix_[i * ncols_ + j];
            if (f == 0.0) continue;
            double* __restrict ri = row(i);
            const double* __restrict rp = rl;
            for (std::size_t k = 0; k < ncols_; ++k) ri[k] -= f * rp[k];
            ri[j] = 0.0;
            beta_[i] -= f * beta_[l];
        }
        {
            double f = reduced_[j];
            if (f != 0.0) {
                double* __restrict rd = reduced_.data();
                const double* __restrict rp = rl;
                for (std::size_t k = 0; k < ncols_; ++k) rd[k] -= f * rp[k];
            }
            reduced_[j] = 0.0;
        }
        in_basis_[basis_[l]] = false;
        in_basis_[j] = true;
        basis_[l] = j;
    }

    void recompute_reduced_costs() {
        reduced_ = cost_;
        for (std::size_t i = 0; i < m_; ++i) {
            double f = cost_[basis_[i]];
            if (f == 0.0) continue;
            const double* __restrict rp = row(i);
            double* __restrict rd = reduced_.data();
            for (std::size_t k = 0; k < ncols_; ++k) rd[k] -= f * rp[k];
        }
        for (std::size_t i = 0; i < m_; ++i) reduced_[basis_[i]] = 0.0;
    }

    bool primal_feasible() const {
        for (std::size_t i = 0; i < m_; ++i) {
            if (beta_[i] < -opt_.feasibility_tol) return false;
            double w = width_[basis_[i]];
            if (std::isfinite(w) && beta_[i] > w + opt_.feasibility_tol) return false;
        }
        return true;
    }

    bool entering_eligible(std::size_t j) const {
        return !in_basis_[j] && width_[j] > opt_.pivot_tol;
    }

    // ---- dual simplex ----
    // Returns false when some row is shown unsatisfiable.

    bool dual_simplex(bool dantzig) {
        int stall = 0;
        bool bland = !dantzig;
        while (true) {
            // leaving row: a basic value outside its bounds
            std::size_t leave = m_;
            double worst = opt_.feasibility_tol;
            for (std::size_t i = 0; i < m_; ++i) {
                double below = -beta_[i];
                double w = width_[basis_[i]];
                double above = std::isfinite(w) ? beta_[i] - w : -1.0;
                double v = std::max(below, above);
                if (v > worst) {
                    if (bland) {
                        leave = i;
                        break;
                    }
                    worst = v;
                    leave = i;
                }
            }
            if (leave == m_) return true;  // primal feasible

            count_iteration();
            {
                double w = width_[basis_[leave]];
                if (std::isfinite(w) && beta_[leave] > w + opt_.feasibility_tol) flip_basic(leave);
            }

            // entering column: keeps reduced costs non-negative
            const double* rl = row(leave);
            std::size_t enter = ncols_;
            double best_ratio = 0.0, best_mag = 0.0;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (!entering_eligible(j)) continue;
                double a = rl[j];
                if (a >= -opt_.pivot_tol) continue;
                double ratio = reduced_[j] / (-a);
                if (enter == ncols_) {
                    enter = j;
                    best_ratio = ratio;
                    best_mag = -a;
                    continue;
                }
                // Bland mode still needs min ratio (dual feasibility) but keeps
                // the first minimal index instead of the largest pivot.
                double slack = bland ? 0.0 : 1e-9 * (1.0 + std::abs(best_ratio));
                if (ratio < best_ratio - slack ||
                    (!bland && ratio <= best_ratio + slack && -a > best_mag)) {
                    enter = j;
                    best_ratio = std::min(best_ratio, ratio);
                    best_mag = -a;
                }
            }
            if (enter == ncols_) return false;  // row unsatisfiable

            if (best_ratio <= 1e-12) {
                if (++stall > 64) bland = true;
            } else if (dantzig) {
                stall = 0;
                bland = false;
            }
            pivot(leave, enter);
        }
    }

    // ---- primal simplex ----
    // Returns false when the objective is unbounded.

    bool primal_simplex() {
        int stall = 0;
        bool bland = false;
        while (true) {
            // entering column: negative reduced cost
            std::size_t enter = ncols_;
            double best = 0.0;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (!entering_eligible(j)) continue;
                double d = reduced_[j];
                double thresh = -(opt_.pivot_tol + opt_.optimality_tol * std::abs(cost_[j]));
                if (d >= thresh) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                if (d < best) {
                    best = d;
                    enter = j;
                }
            }
            if (enter == ncols_) return true;  // optimal

            count_iteration();

            // ratio test: first basic variable to hit one of its bounds, or the
            // entering column reaching its own width
            double step = width_[enter];
            std::size_t leave = m_;
            bool leave_at_upper = false;
            double best_mag = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                double a = matrix_[i * ncols_ + enter];
                double cand;
                bool at_upper;
                if (a > opt_.pivot_tol) {
                    cand = std::max(beta_[i], 0.0) / a;
                    at_upper = false;
                } else if (a < -opt_.pivot_tol && std::isfinite(width_[basis_[i]])) {
                    cand = (beta_[i] - width_[basis_[i]]) / a;
                    cand = std::max(cand, 0.0);
                    at_upper = true;
                } else {
                    continue;
                }
                double slack = bland ? 0.0 : 1e-9 * (1.0 + std::abs(cand));
                if (cand < step - slack ||
                    (leave != m_ && cand <= step + slack && std::abs(a) > best_mag && !bland)) {
                    step = cand;
                    leave = i;
                    leave_at_upper = at_upper;
                    best_mag = std::abs(a);
                } else if (bland && cand <= step) {
                    // lowest variable index among ties keeps Bland's guarantee
                    if (cand < step || leave == m_ || basis_[i] < basis_[leave]) {
                        step = cand;
                        leave = i;
                        leave_at_upper = at_upper;
                    }
                }
            }

            if (leave == m_) {
                if (!std::isfinite(step)) {
                    // An unblocked direction is only believable when its payoff
                    // is material; a noise-level reduced cost gets parked.
                    if (reduced_[enter] < -1e-6 * (1.0 + std::abs(cost_[enter])))
                        return false;  // unbounded direction
                    reduced_[enter] = 0.0;
                    continue;
                }
                flip_nonbasic(enter);  // entering hits its own width
                continue;
            }

            if (step <= 1e-12) {
                if (++stall > 64) bland = true;
            } else {
                stall = 0;
                bland = false;
            }
            if (leave_at_upper) flip_basic(leave);
            pivot(leave, enter);
        }
    }

    // ---- reporting ----

    std::vector<double> extract_point() const {
        std::vector<double> shifted(ncols_, 0.0);
        for (std::size_t j = 0; j < ncols_; ++j)
            if (!in_basis_[j] && flipped_[j]) shifted[j] = width_[j];
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t b = basis_[i];
            shifted[b] = flipped_[b] ? width_[b] - beta_[i] : beta_[i];
        }
        std::vector<double> x(n_);
        for (std::size_t j = 0; j < n_; ++j) x[j] = lp_.variables()[j].lower + shifted[j];
        return x;
    }

    // Rebuilds the basic values from ingestion-time data: solves B y = r - N z
    // for the basic block. Non-singularity is a simplex invariant.
    bool lu_repair(std::vector<double>& x) const {
        std::vector<double> b(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            long double acc = original_rhs_[i];
            const double* orig = &original_matrix_[i * ncols_];
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (in_basis_[j]) continue;
                double v = flipped_[j] && std::isfinite(width_[j]) ? width_[j] : 0.0;
                if (v != 0.0) acc -= static_cast<long double>(orig[j]) * v;
            }
            b[i] = static_cast<double>(acc);
        }

        std::vector<double> lu(m_ * m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t k = 0; k < m_; ++k)
                lu[i * m_ + k] = original_matrix_[i * ncols_ + basis_[k]];

        std::vector<std::size_t> perm(m_);
        for (std::size_t i = 0; i < m_; ++i) perm[i] = i;
        for (std::size_t col = 0; col < m_; ++col) {
            std::size_t piv = col;
            double mag = std::abs(lu[perm[col] * m_ + col]);
            for (std::size_t i = col + 1; i < m_; ++i) {
                double v = std::abs(lu[perm[i] * m_ + col]);
                if (v > mag) {
                    mag = v;
                    piv = i;
                }
            }
            if (mag < 1e-13) return false;
            std::swap(perm[col], perm[piv]);
            double inv = 1.0 / lu[perm[col] * m_ + col];
            for (std::size_t i = col + 1; i < m_; ++i) {
                double f = lu[perm[i] * m_ + col] * inv;
                lu[perm[i] * m_ + col] = f;
                if (f == 0.0) continue;
                double* __restrict ri = &lu[perm[i] * m_];
                const double* __restrict rc = &lu[perm[col] * m_];
                for (std::size_t k = col + 1; k < m_; ++k) ri[k] -= f * rc[k];
            }
        }
        auto lu_solve = [&](const std::vector<double>& rhs) {
            std::vector<double> s(m_);
            for (std::size_t i = 0; i < m_; ++i) {
                long double acc = rhs[perm[i]];
                const double* ri = &lu[perm[i] * m_];
                for (std::size_t k = 0; k < i; ++k) acc -= static_cast<long double>(ri[k]) * s[k];
                s[i] = static_cast<double>(acc);
            }
            for (std::size_t i = m_; i-- > 0;) {
                long double acc = s[i];
                const double* ri = &lu[perm[i] * m_];
                for (std::size_t k = i + 1; k < m_; ++k)
                    acc -= static_cast<long double>(ri[k]) * s[k];
                s[i] = static_cast<double>(acc / ri[i]);
            }
            return s;
        };

        std::vector<double> y = lu_solve(b);
        // two rounds of iterative refinement keep binding rows exact even when
        // right-hand sides carry large cumulative sums
        for (int round = 0; round < 2; ++round) {
            std::vector<double> resid(m_);
            for (std::size_t i = 0; i < m_; ++i) {
                long double acc = b[i];
                const double* orig = &original_matrix_[i * ncols_];
                for (std::size_t k = 0; k < m_; ++k)
                    acc -= static_cast<long double>(orig[basis_[k]]) * y[k];
                resid[i] = static_cast<double>(acc);
            }
            std::vector<double> delta = lu_solve(resid);
            for (std::size_t i = 0; i < m_; ++i) y[i] += delta[i];
        }

        std::vector<double> shifted(ncols_, 0.0);
        for (std::size_t j = 0; j < ncols_; ++j)
            if (!in_basis_[j] && flipped_[j]) shifted[j] = width_[j];
        for (std::size_t k = 0; k < m_; ++k) shifted[basis_[k]] = y[k];
        for (std::size_t j = 0; j < n_; ++j) x[j] = lp_.variables()[j].lower + shifted[j];
        return true;
    }

    LpSolution finish(SolveStatus status) {
        LpSolution sol;
        sol.status = status;
        sol.iterations = iterations_;
        if (status != SolveStatus::optimal) return sol;

        sol.values = extract_point();
        if (!solution_violations(lp_, sol.values, opt_.feasibility_tol).empty()) {
            std::vector<double> repaired = sol.values;
            if (lu_repair(repaired) &&
                solution_violations(lp_, repaired, opt_.feasibility_tol).empty())
                sol.values = std::move(repaired);
            else if (!solution_violations(lp_, sol.values, 1e2 * opt_.feasibility_tol).empty())
                throw std::runtime_error("simplex returned an inconsistent point");
        }

        long double obj = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            obj += static_cast<long double>(lp_.variables()[j].objective) * sol.values[j];
        sol.objective = static_cast<double>(obj);
        return sol;
    }
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp, const SolveOptions& options = {}) {
    lp.validate();
    detail::SimplexTableau tableau(lp, options);
    return tableau.run();
}

// Fixed-column MPS rendering with systematic short names, for cross-checking
// against external solvers. Column j maps to C<j+1>, row i to R<i+1>.
inline void write_mps(const LinearProgram& lp, std::ostream& os, const std::string& name = "LP") {
    lp.validate();
    char buf[256];
    auto field = [](const char* tag, std::size_t idx) {
        char s[16];
        std::snprintf(s, sizeof s, "%s%zu", tag, idx + 1);
        return std::string(s);
    };

    os << "NAME          " << name << "\n";
    os << "ROWS\n N  COST\n";
    for (std::size_t i = 0; i < lp.constraint_count(); ++i) {
        char sense = 'L';
        if (lp.constraints()[i].sense == RowSense::greater_equal) sense = 'G';
        if (lp.constraints()[i].sense == RowSense::equal) sense = 'E';
        std::snprintf(buf, sizeof buf, " %c  %s\n", sense, field("R", i).c_str());
        os << buf;
    }

    // column-major walk so each column's entries stay together
    os << "COLUMNS\n";
    for (std::size_t j = 0; j < lp.variable_count(); ++j) {
        std::string col = field("C", j);
        if (lp.variables()[j].objective != 0.0) {
            std::snprintf(buf, sizeof buf, "    %-8s  %-8s  %.12g\n", col.c_str(), "COST",
                          lp.variables()[j].objective);
            os << buf;
        }
        for (std::size_t i = 0; i < lp.constraint_count(); ++i)
            for (const auto& t : lp.constraints()[i].terms)
                if (t.var == j && t.value != 0.0) {
                    std::snprintf(buf, sizeof buf, "    %-8s  %-8s  %.12g\n", col.c_str(),
                                  field("R", i).c_str(), t.value);
                    os << buf;
                }
    }

    os << "RHS\n";
    for (std::size_t i = 0; i < lp.constraint_count(); ++i)
        if (lp.constraints()[i].rhs != 0.0) {
            std::snprintf(buf, sizeof buf, "    %-8s  %-8s  %.12g\n", "RHS",
                          field("R", i).c_str(), lp.constraints()[i].rhs);
            os << buf;
        }

    os << "BOUNDS\n";
    for (std::size_t j = 0; j < lp.variable_count(); ++j) {
        const auto& v = lp.variables()[j];
        std::string col = field("C", j);
        if (std::isfinite(v.upper) && v.upper == v.lower) {
            std::snprintf(buf, sizeof buf, " FX %-8s  %-8s  %.12g\n", "BND", col.c_str(), v.lower);
            os << buf;
            continue;
        }
        if (v.lower != 0.0) {
            std::snprintf(buf, sizeof buf, " LO %-8s  %-8s  %.12g\n", "BND", col.c_str(), v.lower);
            os << buf;
        }
        if (std::isfinite(v.upper)) {
            std::snprintf(buf, sizeof buf, " UP %-8s  %-8s  %.12g\n", "BND", col.c_str(), v.upper);
            os << buf;
        }
    }
    os << "ENDATA\n";
}

}  // namespace upmr::lp
