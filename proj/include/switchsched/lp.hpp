#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace switchsched::lp {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Status { Optimal, Infeasible, Unbounded, Stalled };

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimization LP. Variables have lower bound 0 and an optional upper bound
// (realized internally as an extra row). Coefficients are doubles; the models
// built here carry small integer data.
struct LpModel {
    struct Row {
        Relation rel = Relation::LessEq;
        double rhs = 0.0;
        std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
    };

    std::vector<double> cost;
    std::vector<double> upper;
    std::vector<Row> rows;

    int add_variable(double objective_coeff, double upper_bound = kInf) {
        cost.push_back(objective_coeff);
        upper.push_back(upper_bound);
        return static_cast<int>(cost.size()) - 1;
    }
    int add_row(Relation rel, double rhs) {
        rows.push_back(Row{rel, rhs, {}});
        return static_cast<int>(rows.size()) - 1;
    }
    void add_term(int row, int var, double coeff) { rows[row].terms.emplace_back(var, coeff); }
    int num_vars() const { return static_cast<int>(cost.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }
};

// Vertex-optimal solution: nonbasic variables sit at a bound, so the number
// of variables strictly between bounds never exceeds the number of rows.
// Basis entries below num_vars() are structural; num_vars() + i is the slack
// (or artificial remnant) of row i.
struct BasicSolution {
    Status status = Status::Stalled;
    std::vector<double> x;
    double objective = 0.0;
    std::vector<int> basis;
    int pivots = 0;
    std::string note;  // short diagnostic for non-optimal statuses
};

// Two-phase revised simplex, Dantzig pricing with a permanent switch to
// Bland's rule after a degenerate stall; fixed rules make output a pure
// function of the model bytes. Returned solutions are re-substituted into
// every row and rejected (Status::Stalled) beyond a 1e-9 relative residual.
BasicSolution solve_min(const LpModel& model);

// Row generation: rows [0, eager_rows) are always present, the rest are added
// only when violated. The result is feasible for (and a vertex of) the full
// model with the same optimal value; only the basis bookkeeping is restricted
// to generated rows. seed_rows (full-model indices) join the first solve,
// which saves separation rounds when the caller can guess the binding rows.
BasicSolution solve_min_lazy(const LpModel& model, int eager_rows);
BasicSolution solve_min_lazy(const LpModel& model, int eager_rows,
                             const std::vector<int>& seed_rows);

inline bool is_integral(double v, double tol = 1e-7) {
    return std::fabs(v - std::llround(v)) <= tol;
}

void write_lp_format(const LpModel& model, std::ostream& os);

}  // namespace switchsched::lp
