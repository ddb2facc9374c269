#pragma once

#include <utility>
#include <vector>

#include "schedlab/rational.hpp"

namespace schedlab {

enum class Relation { LessEq, Equal, GreaterEq };

/// A feasibility-form linear program over nonnegative variables:
/// rows a.x {<=,=,>=} b.  No objective; solving minimizes total artificial
/// slack (phase 1) and reports a feasible point or a correct Infeasible
/// verdict, both exact.
class LinearProgram {
public:
    struct Row {
        std::vector<std::pair<int, Rational>> coeffs;
        Relation rel;
        Rational rhs;
    };

    explicit LinearProgram(int num_vars) : num_vars_(num_vars) {}

    int variables() const { return num_vars_; }
    const std::vector<Row>& rows() const { return rows_; }

    /// Coefficients may repeat a variable; they are accumulated.
    void add_row(std::vector<std::pair<int, Rational>> coeffs, Relation rel, Rational rhs) {
        rows_.push_back({std::move(coeffs), rel, std::move(rhs)});
    }

private:
    int num_vars_;
    std::vector<Row> rows_;
};

struct SimplexResult {
    enum class Status { Feasible, Infeasible };
    Status status = Status::Infeasible;

    /// Feasible point (structural variables) when status == Feasible.
    VectorXq point;

    /// Phase-1 optimum: 0 iff feasible.
    Rational infeasibility;

    /// Simplex multipliers per input row at the final basis, in the row
    /// order of the LinearProgram (signs relative to the rows as written).
    VectorXq row_duals;
};

/// Exact phase-1 simplex with Bland's rule; deterministic.
SimplexResult solve_feasibility(const LinearProgram& lp);

} // namespace schedlab
