#include "schedlab/simplex.hpp"

#include <map>
#include <stdexcept>

namespace schedlab {

namespace {

struct NormalizedRow {
    std::vector<Rational> coeffs; // dense over structural variables
    Relation rel;
    Rational rhs;     // >= 0
    int source = -1;  // original row index
    bool flipped = false;
};

} // namespace

SimplexResult solve_feasibility(const LinearProgram& lp) {
    const int n = lp.variables();
    SimplexResult result;
    result.row_duals = VectorXq::Zero(static_cast<int>(lp.rows().size()));

    // Normalize: dense rows, accumulated coefficients, rhs >= 0.
    std::vector<NormalizedRow> rows;
    for (size_t r = 0; r < lp.rows().size(); ++r) {
        const auto& row = lp.rows()[r];
        NormalizedRow nr;
        nr.coeffs.assign(n, Rational(0));
        nr.rel = row.rel;
        nr.rhs = row.rhs;
        nr.source = static_cast<int>(r);
        for (const auto& [var, c] : row.coeffs) {
            if (var < 0 || var >= n) throw std::invalid_argument("row references unknown variable");
            nr.coeffs[var] += c;
        }
        if (nr.rhs < 0) {
            for (auto& c : nr.coeffs) c = -c;
            nr.rhs = -nr.rhs;
            nr.flipped = true;
            if (nr.rel == Relation::LessEq) nr.rel = Relation::GreaterEq;
            else if (nr.rel == Relation::GreaterEq) nr.rel = Relation::LessEq;
        }
        bool all_zero = true;
        for (const auto& c : nr.coeffs)
            if (c != 0) { all_zero = false; break; }
        if (all_zero) {
            // 0 {rel} rhs with rhs >= 0 decides immediately.
            const bool ok = (nr.rel == Relation::LessEq)    ? true
                            : (nr.rel == Relation::Equal)   ? nr.rhs == 0
                                                            : nr.rhs == 0;
            if (!ok) {
                result.status = SimplexResult::Status::Infeasible;
                result.infeasibility = nr.rhs;
                return result;
            }
            continue;
        }
        rows.push_back(std::move(nr));
    }

    const int m = static_cast<int>(rows.size());

    // Column layout: structural | one auxiliary per row (slack or surplus) |
    // artificials for = and >= rows.  The initial basis is the identity made
    // of slacks (<= rows) and artificials (others).
    int cols = n;
    std::vector<int> aux_col(m, -1), art_col(m, -1);
    for (int r = 0; r < m; ++r)
        if (rows[r].rel != Relation::Equal) aux_col[r] = cols++;
    for (int r = 0; r < m; ++r)
        if (rows[r].rel != Relation::LessEq) art_col[r] = cols++;
    const int first_artificial = [&] {
        int first = cols;
        for (int r = 0; r < m; ++r)
            if (art_col[r] >= 0 && art_col[r] < first) first = art_col[r];
        return first;
    }();

    MatrixXq tab = MatrixXq::Zero(m, cols);
    VectorXq rhs(m);
    std::vector<int> basis(m);
    std::vector<int> identity_col(m); // column whose initial column is e_r
    for (int r = 0; r < m; ++r) {
        for (int v = 0; v < n; ++v) tab(r, v) = rows[r].coeffs[v];
        rhs(r) = rows[r].rhs;
        if (rows[r].rel == Relation::LessEq) tab(r, aux_col[r]) = 1;
        if (rows[r].rel == Relation::GreaterEq) tab(r, aux_col[r]) = -1;
        if (art_col[r] >= 0) tab(r, art_col[r]) = 1;
        basis[r] = art_col[r] >= 0 ? art_col[r] : aux_col[r];
        identity_col[r] = basis[r];
    }

    // Phase-1 objective: minimize the sum of artificials.  Maintain reduced
    // costs and the objective value under the current basis.
    VectorXq reduced = VectorXq::Zero(cols);
    Rational objective = 0;
    for (int c = first_artificial; c < cols; ++c) reduced(c) = 1;
    for (int r = 0; r < m; ++r) {
        if (art_col[r] < 0) continue; // basic slack, cost 0
        for (int c = 0; c < cols; ++c) reduced(c) -= tab(r, c);
        objective += rhs(r);
    }

    auto pivot = [&](int row, int col) {
        const Rational p = tab(row, col);
        tab.row(row) /= p;
        rhs(row) /= p;
        for (int r = 0; r < m; ++r) {
            if (r == row || tab(r, col) == 0) continue;
            const Rational f = tab(r, col);
            tab.row(r) -= f * tab.row(row);
            rhs(r) -= f * rhs(row);
        }
        if (reduced(col) != 0) {
            const Rational f = reduced(col);
            reduced -= f * tab.row(row).transpose();
            objective += f * rhs(row);
        }
        basis[row] = col;
    };

    while (true) {
        int entering = -1;
        for (int c = 0; c < cols; ++c)
            if (reduced(c) < 0) { entering = c; break; } // Bland: smallest index
        if (entering < 0) break;

        int leaving = -1;
        Rational best_ratio;
        for (int r = 0; r < m; ++r) {
            if (tab(r, entering) <= 0) continue;
            Rational ratio = rhs(r) / tab(r, entering);
            if (leaving < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (leaving < 0)
            throw std::logic_error("phase-1 objective unbounded below; cannot happen");
        pivot(leaving, entering);
    }

    // Duals of the phase-1 optimum, mapped back to the caller's rows.
    for (int r = 0; r < m; ++r) {
        const int c = identity_col[r];
        const Rational cost = c >= first_artificial ? 1 : 0;
        Rational y = cost - reduced(c);
        result.row_duals(rows[r].source) = rows[r].flipped ? -y : y;
    }

    result.infeasibility = objective;
    if (objective != 0) {
        result.status = SimplexResult::Status::Infeasible;
        return result;
    }

    result.status = SimplexResult::Status::Feasible;
    result.point = VectorXq::Zero(n);
    for (int r = 0; r < m; ++r)
        if (basis[r] < n) result.point(basis[r]) = rhs(r);
    return result;
}

} // namespace schedlab
