#include "switchsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace switchsched::lp {

namespace {

constexpr double kPriceTol = 1e-9;
constexpr double kPivotTol = 1e-7;
constexpr double kZeroTol = 1e-11;
constexpr int kRefactorEvery = 2048;

enum class PhaseResult { Optimal, Unbounded, Fail };

class Simplex {
  public:
    explicit Simplex(const LpModel& model) : model_(model) { build(); }

    BasicSolution run() {
        BasicSolution out;
        if (failed_) {
            out.status = Status::Stalled;
            out.note = fail_note_;
            return out;
        }
        if (have_artificials_) {
            double obj1 = 0.0;
            PhaseResult r = run_phase(1, obj1);
            if (r == PhaseResult::Fail) return stalled(out);
            if (r == PhaseResult::Unbounded) {
                fail_note_ = "phase-1 reported unbounded";
                return stalled(out);
            }
            if (obj1 > infeasibility_tol_) {
                out.status = Status::Infeasible;
                out.pivots = pivots_;
                return out;
            }
        }
        double obj2 = 0.0;
        PhaseResult r = run_phase(2, obj2);
        if (r == PhaseResult::Fail) return stalled(out);
        if (r == PhaseResult::Unbounded) {
            out.status = Status::Unbounded;
            out.pivots = pivots_;
            return out;
        }
        if (!refactor()) return stalled(out);
        extract(out);
        if (!verify(out)) {
            out.status = Status::Stalled;
            out.note = fail_note_.empty() ? "re-substitution failed" : fail_note_;
        }
        return out;
    }

  private:
    struct RowMeta {
        Relation rel = Relation::LessEq;  // after rhs normalization
        int artificial = -1;
    };

    const LpModel& model_;
    int n_ = 0;
    int m_ = 0;
    std::vector<int> col_start_, col_row_;
    std::vector<double> col_val_;
    std::vector<double> rhs_;
    std::vector<RowMeta> row_;
    std::vector<int> art_row_;
    int total_cols_ = 0;
    std::vector<char> in_basis_;
    std::vector<int> basis_;
    std::vector<double> binv_, xb_, d_, alpha_, reduced_, weight_;
    int pivots_ = 0;
    int pivot_cap_ = 0;
    bool bland_ = false;
    int degenerate_run_ = 0;
    bool have_artificials_ = false;
    bool failed_ = false;
    double infeasibility_tol_ = 1e-7;
    std::string fail_note_;

    BasicSolution stalled(BasicSolution& out) {
        out.status = Status::Stalled;
        out.note = fail_note_.empty() ? "numerical stall" : fail_note_;
        out.pivots = pivots_;
        return out;
    }

    void build() {
        n_ = model_.num_vars();
        std::vector<LpModel::Row> rows = model_.rows;
        for (int j = 0; j < n_; ++j) {
            if (model_.upper[j] < kInf) {
                LpModel::Row r;
                r.rel = Relation::LessEq;
                r.rhs = model_.upper[j];
                r.terms.emplace_back(j, 1.0);
                rows.push_back(std::move(r));
            }
        }
        m_ = static_cast<int>(rows.size());
        rhs_.resize(m_);
        row_.resize(m_);
        double rhs_norm = 0.0;
        for (int i = 0; i < m_; ++i) {
            double sign = 1.0;
            Relation rel = rows[i].rel;
            if (rows[i].rhs < 0.0) {
                sign = -1.0;
                if (rel == Relation::LessEq)
                    rel = Relation::GreaterEq;
                else if (rel == Relation::GreaterEq)
                    rel = Relation::LessEq;
            }
            rhs_[i] = sign * rows[i].rhs;
            rhs_norm += rhs_[i];
            row_[i].rel = rel;
            if (sign < 0)
                for (auto& t : rows[i].terms) t.second = -t.second;
        }
        infeasibility_tol_ = 1e-7 * (1.0 + rhs_norm);

        std::vector<int> count(n_ + 1, 0);
        for (const auto& r : rows)
            for (const auto& [v, c] : r.terms) {
                if (v < 0 || v >= n_) {
                    failed_ = true;
                    fail_note_ = "coefficient references undeclared variable";
                    return;
                }
                ++count[v + 1];
            }
        col_start_.assign(n_ + 1, 0);
        for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + count[j + 1];
        col_row_.resize(col_start_[n_]);
        col_val_.resize(col_start_[n_]);
        std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
        for (int i = 0; i < m_; ++i)
            for (const auto& [v, c] : rows[i].terms) {
                col_row_[fill[v]] = i;
                col_val_[fill[v]] = c;
                ++fill[v];
            }

        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            if (row_[i].rel == Relation::LessEq) {
                basis_[i] = n_ + i;
            } else {
                row_[i].artificial = n_ + m_ + static_cast<int>(art_row_.size());
                basis_[i] = row_[i].artificial;
                art_row_.push_back(i);
                have_artificials_ = true;
            }
        }
        total_cols_ = n_ + m_ + static_cast<int>(art_row_.size());
        in_basis_.assign(total_cols_, 0);
        for (int i = 0; i < m_; ++i) in_basis_[basis_[i]] = 1;
        binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i) * m_ + i] = 1.0;
        xb_ = rhs_;
        d_.resize(m_);
        alpha_.resize(total_cols_);
        reduced_.resize(total_cols_);
        weight_.resize(total_cols_);
        pivot_cap_ = 20000 + 50 * (m_ + n_);
    }

    bool column_valid(int j) const {
        if (j < n_) return true;
        if (j < n_ + m_) return row_[j - n_].rel != Relation::Equal;
        return true;
    }
    bool is_artificial_col(int j) const { return j >= n_ + m_; }

    double cost_of(int j, int phase) const {
        if (phase == 1) return is_artificial_col(j) ? 1.0 : 0.0;
        return j < n_ ? model_.cost[j] : 0.0;
    }

    template <class F>
    void for_col(int j, F&& f) const {
        if (j < n_) {
            for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) f(col_row_[k], col_val_[k]);
        } else if (j < n_ + m_) {
            int i = j - n_;
            f(i, row_[i].rel == Relation::GreaterEq ? -1.0 : 1.0);
        } else {
            f(art_row_[j - n_ - m_], 1.0);
        }
    }

    bool refactor() {
        std::vector<double> b(static_cast<size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i)
            for_col(basis_[i], [&](int r, double a) { b[static_cast<size_t>(r) * m_ + i] += a; });
        std::vector<double> inv(static_cast<size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) inv[static_cast<size_t>(i) * m_ + i] = 1.0;
        for (int c = 0; c < m_; ++c) {
            int p = -1;
            double best = 1e-11;
            for (int r = c; r < m_; ++r) {
                double v = std::fabs(b[static_cast<size_t>(r) * m_ + c]);
                if (v > best) {
                    best = v;
                    p = r;
                }
            }
            if (p < 0) {
                fail_note_ = "singular basis during refactorization";
                return false;
            }
            if (p != c) {
                for (int k = 0; k < m_; ++k) {
                    std::swap(b[static_cast<size_t>(p) * m_ + k], b[static_cast<size_t>(c) * m_ + k]);
                    std::swap(inv[static_cast<size_t>(p) * m_ + k],
                              inv[static_cast<size_t>(c) * m_ + k]);
                }
            }
            double piv = b[static_cast<size_t>(c) * m_ + c];
            for (int k = 0; k < m_; ++k) {
                b[static_cast<size_t>(c) * m_ + k] /= piv;
                inv[static_cast<size_t>(c) * m_ + k] /= piv;
            }
            for (int r = 0; r < m_; ++r) {
                if (r == c) continue;
                double f = b[static_cast<size_t>(r) * m_ + c];
                if (std::fabs(f) < kZeroTol) continue;
                for (int k = 0; k < m_; ++k) {
                    b[static_cast<size_t>(r) * m_ + k] -= f * b[static_cast<size_t>(c) * m_ + k];
                    inv[static_cast<size_t>(r) * m_ + k] -= f * inv[static_cast<size_t>(c) * m_ + k];
                }
            }
        }
        binv_.swap(inv);
        for (int i = 0; i < m_; ++i) {
            double s = 0.0;
            const double* rowp = &binv_[static_cast<size_t>(i) * m_];
            for (int k = 0; k < m_; ++k) s += rowp[k] * rhs_[k];
            xb_[i] = s < 0.0 && s > -1e-9 ? 0.0 : s;
        }
        return true;
    }

    // reduced costs from scratch: rc = c - (c_B B^-1) A
    void recompute_reduced(int phase) {
        std::vector<double> y(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            double cb = cost_of(basis_[i], phase);
            if (cb == 0.0) continue;
            const double* rowp = &binv_[static_cast<size_t>(i) * m_];
            for (int k = 0; k < m_; ++k) y[k] += cb * rowp[k];
        }
        for (int j = 0; j < total_cols_; ++j) {
            double rc = cost_of(j, phase);
            for_col(j, [&](int i, double a) { rc -= y[i] * a; });
            reduced_[j] = rc;
        }
    }

    int pick_entering(int phase) const {
        int entering = -1;
        double best_score = 0.0;
        for (int j = 0; j < total_cols_; ++j) {
            if (in_basis_[j] || !column_valid(j)) continue;
            if (phase == 2 && is_artificial_col(j)) continue;
            double rc = reduced_[j];
            if (rc >= -kPriceTol) continue;
            if (bland_) return j;
            double score = rc * rc / weight_[j];
            if (score > best_score) {
                best_score = score;
                entering = j;
            }
        }
        return entering;
    }

    PhaseResult run_phase(int phase, double& obj_out) {
        recompute_reduced(phase);
        std::fill(weight_.begin(), weight_.end(), 1.0);
        for (;;) {
            if (pivots_ > pivot_cap_) {
                fail_note_ = "pivot limit exceeded";
                return PhaseResult::Fail;
            }
            if (pivots_ > 0 && pivots_ % kRefactorEvery == 0) {
                if (!refactor()) return PhaseResult::Fail;
                recompute_reduced(phase);
            }

            int entering = pick_entering(phase);
            if (entering < 0) {
                // certify optimality against exact reduced costs
                recompute_reduced(phase);
                entering = pick_entering(phase);
                if (entering < 0) {
                    double obj = 0.0;
                    for (int i = 0; i < m_; ++i) obj += cost_of(basis_[i], phase) * xb_[i];
                    obj_out = obj;
                    return PhaseResult::Optimal;
                }
            }

            std::fill(d_.begin(), d_.end(), 0.0);
            for_col(entering, [&](int i, double a) {
                for (int k = 0; k < m_; ++k) d_[k] += a * binv_[static_cast<size_t>(k) * m_ + i];
            });
            // exact reduced cost of the candidate; drift can fake a negative
            {
                double rc = cost_of(entering, phase);
                for (int i = 0; i < m_; ++i) {
                    double cb = cost_of(basis_[i], phase);
                    if (cb != 0.0) rc -= cb * d_[i];
                }
                if (rc >= -kPriceTol) {
                    reduced_[entering] = rc;
                    continue;  // stale entry; price again
                }
                reduced_[entering] = rc;
            }

            int leave = -1;
            double best_ratio = kInf;
            bool leave_is_kick = false;
            for (int i = 0; i < m_; ++i) {
                bool kick = phase == 2 && is_artificial_col(basis_[i]) && std::fabs(d_[i]) > kPivotTol;
                double ratio;
                if (kick) {
                    ratio = 0.0;
                } else if (d_[i] > kPivotTol) {
                    ratio = xb_[i] / d_[i];
                    if (ratio < 0.0) ratio = 0.0;
                } else {
                    continue;
                }
                bool take;
                if (leave < 0) {
                    take = true;
                } else if (ratio < best_ratio - 1e-12) {
                    take = true;
                } else if (ratio <= best_ratio + 1e-12) {
                    if (kick != leave_is_kick)
                        take = kick;
                    else
                        take = basis_[i] < basis_[leave];
                } else {
                    take = false;
                }
                if (take) {
                    leave = i;
                    best_ratio = ratio;
                    leave_is_kick = kick;
                }
            }
            if (leave < 0) {
                if (phase == 1) {
                    fail_note_ = "phase-1 ray (numerical)";
                    return PhaseResult::Fail;
                }
                return PhaseResult::Unbounded;
            }

            double theta = xb_[leave] / d_[leave];
            if (theta < 0.0) theta = 0.0;
            if (theta <= 1e-12) {
                if (++degenerate_run_ > 200) {
                    if (!bland_) {
                        bland_ = true;
                        if (!refactor()) return PhaseResult::Fail;
                        recompute_reduced(phase);
                    }
                }
            } else {
                degenerate_run_ = 0;
            }

            // pivot row over all columns (uses the pre-update inverse)
            const double* br = &binv_[static_cast<size_t>(leave) * m_];
            for (int j = 0; j < total_cols_; ++j) {
                if (j < n_) {
                    double s = 0.0;
                    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
                        s += br[col_row_[k]] * col_val_[k];
                    alpha_[j] = s;
                } else if (j < n_ + m_) {
                    int i = j - n_;
                    alpha_[j] = br[i] * (row_[i].rel == Relation::GreaterEq ? -1.0 : 1.0);
                } else {
                    alpha_[j] = br[art_row_[j - n_ - m_]];
                }
            }

            double pivot = d_[leave];
            double rc_step = reduced_[entering] / pivot;
            double w_enter = weight_[entering];
            for (int j = 0; j < total_cols_; ++j) {
                double a = alpha_[j];
                if (a == 0.0) continue;
                reduced_[j] -= rc_step * a;
                double cand = (a / pivot) * (a / pivot) * w_enter;
                if (cand > weight_[j]) weight_[j] = cand;
            }
            reduced_[entering] = 0.0;
            int leaving_col = basis_[leave];
            reduced_[leaving_col] = -rc_step;
            weight_[leaving_col] = std::max(w_enter / (pivot * pivot), 1.0);
            if (weight_[entering] > 1e10) std::fill(weight_.begin(), weight_.end(), 1.0);

            for (int i = 0; i < m_; ++i) {
                xb_[i] -= theta * d_[i];
                if (xb_[i] < 0.0 && xb_[i] > -1e-9) xb_[i] = 0.0;
            }
            xb_[leave] = theta;

            double* rl = &binv_[static_cast<size_t>(leave) * m_];
            for (int k = 0; k < m_; ++k) rl[k] /= pivot;
            for (int i = 0; i < m_; ++i) {
                if (i == leave || std::fabs(d_[i]) < kZeroTol) continue;
                double f = d_[i];
                double* ri = &binv_[static_cast<size_t>(i) * m_];
                for (int k = 0; k < m_; ++k) ri[k] -= f * rl[k];
            }
            in_basis_[leaving_col] = 0;
            in_basis_[entering] = 1;
            basis_[leave] = entering;
            ++pivots_;
        }
    }

    void extract(BasicSolution& out) {
        out.x.assign(n_, 0.0);
        out.basis.clear();
        for (int i = 0; i < m_; ++i) {
            int j = basis_[i];
            double v = xb_[i];
            if (v < 0.0) v = 0.0;
            if (j < n_) {
                out.x[j] = v;
                out.basis.push_back(j);
            } else if (j < n_ + m_) {
                out.basis.push_back(n_ + (j - n_));
            } else {
                out.basis.push_back(n_ + art_row_[j - n_ - m_]);
            }
        }
        std::sort(out.basis.begin(), out.basis.end());
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += model_.cost[j] * out.x[j];
        out.objective = obj;
        out.pivots = pivots_;
        out.status = Status::Optimal;
    }

    bool verify(const BasicSolution& out) {
        for (int j = 0; j < n_; ++j) {
            if (out.x[j] < -1e-9) {
                fail_note_ = "negative variable after solve";
                return false;
            }
            if (model_.upper[j] < kInf &&
                out.x[j] > model_.upper[j] + 1e-9 * (1.0 + std::fabs(model_.upper[j]))) {
                fail_note_ = "upper bound violated after solve";
                return false;
            }
        }
        for (const auto& r : model_.rows) {
            double lhs = 0.0, scale = 1.0 + std::fabs(r.rhs);
            for (const auto& [v, c] : r.terms) {
                lhs += c * out.x[v];
                scale += std::fabs(c * out.x[v]);
            }
            double tol = 1e-9 * scale;
            bool ok = true;
            switch (r.rel) {
                case Relation::LessEq: ok = lhs <= r.rhs + tol; break;
                case Relation::Equal: ok = std::fabs(lhs - r.rhs) <= tol; break;
                case Relation::GreaterEq: ok = lhs >= r.rhs - tol; break;
            }
            if (!ok) {
                fail_note_ = "row re-substitution outside tolerance";
                return false;
            }
        }
        return true;
    }
};

}  // namespace

BasicSolution solve_min(const LpModel& model) {
    Simplex s(model);
    return s.run();
}

BasicSolution solve_min_lazy(const LpModel& model, int eager_rows) {
    return solve_min_lazy(model, eager_rows, {});
}

BasicSolution solve_min_lazy(const LpModel& model, int eager_rows,
                             const std::vector<int>& seed_rows) {
    if (eager_rows < 0 || eager_rows > model.num_rows())
        throw std::invalid_argument("bad eager row count");

    LpModel sub;
    sub.cost = model.cost;
    sub.upper = model.upper;
    std::vector<int> sub_to_full;
    std::vector<char> included(model.num_rows(), 0);
    for (int i = 0; i < eager_rows; ++i) {
        sub.rows.push_back(model.rows[i]);
        sub_to_full.push_back(i);
        included[i] = 1;
    }
    for (int i : seed_rows) {
        if (i < eager_rows || i >= model.num_rows() || included[i]) continue;
        sub.rows.push_back(model.rows[i]);
        sub_to_full.push_back(i);
        included[i] = 1;
    }

    BasicSolution sol;
    for (int round = 0; round < 200; ++round) {
        sol = solve_min(sub);
        if (std::getenv("SWITCHSCHED_LP_DEBUG"))
            std::fprintf(stderr, "[lp] round %d rows=%d pivots=%d status=%d\n", round,
                         sub.num_rows(), sol.pivots, static_cast<int>(sol.status));
        if (sol.status == Status::Infeasible) return sol;  // subset infeasible => model infeasible
        if (sol.status == Status::Stalled) return sol;
        if (sol.status == Status::Unbounded) {
            // The cut pool bounds the ray; fall back to the full model.
            for (int i = 0; i < model.num_rows(); ++i)
                if (!included[i]) {
                    sub.rows.push_back(model.rows[i]);
                    sub_to_full.push_back(i);
                    included[i] = 1;
                }
            continue;
        }
        int added = 0;
        for (int i = eager_rows; i < model.num_rows(); ++i) {
            if (included[i]) continue;
            const auto& r = model.rows[i];
            double lhs = 0.0, scale = 1.0 + std::fabs(r.rhs);
            for (const auto& [v, c] : r.terms) {
                lhs += c * sol.x[v];
                scale += std::fabs(c * sol.x[v]);
            }
            double tol = 1e-9 * scale;
            bool violated = false;
            switch (r.rel) {
                case Relation::LessEq: violated = lhs > r.rhs + tol; break;
                case Relation::Equal: violated = std::fabs(lhs - r.rhs) > tol; break;
                case Relation::GreaterEq: violated = lhs < r.rhs - tol; break;
            }
            if (violated) {
                sub.rows.push_back(r);
                sub_to_full.push_back(i);
                included[i] = 1;
                ++added;
            }
        }
        if (added == 0) {
            int n = model.num_vars();
            for (auto& b : sol.basis)
                if (b >= n) b = n + sub_to_full[b - n];
            std::sort(sol.basis.begin(), sol.basis.end());
            return sol;
        }
    }
    sol.status = Status::Stalled;
    sol.note = "row generation did not converge";
    return sol;
}

void write_lp_format(const LpModel& model, std::ostream& os) {
    os << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < model.num_vars(); ++j) {
        if (model.cost[j] == 0.0) continue;
        os << (first ? " " : " + ") << model.cost[j] << " x" << j;
        first = false;
    }
    if (first) os << " 0 x0";
    os << "\nSubject To\n";
    for (int i = 0; i < model.num_rows(); ++i) {
        const auto& r = model.rows[i];
        os << " c" << i << ":";
        if (r.terms.empty()) os << " 0 x0";
        for (const auto& [v, c] : r.terms) os << " + " << c << " x" << v;
        switch (r.rel) {
            case Relation::LessEq: os << " <= "; break;
            case Relation::Equal: os << " = "; break;
            case Relation::GreaterEq: os << " >= "; break;
        }
        os << r.rhs << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < model.num_vars(); ++j) {
        if (model.upper[j] < kInf)
            os << " 0 <= x" << j << " <= " << model.upper[j] << "\n";
        else
            os << " 0 <= x" << j << "\n";
    }
    os << "End\n";
}

}  // namespace switchsched::lp
