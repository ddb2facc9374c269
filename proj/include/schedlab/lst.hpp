#pragma once

#include "schedlab/assignment.hpp"
#include "schedlab/instance.hpp"
#include "schedlab/simplex.hpp"

namespace schedlab {

/// Outcome of the assignment LP at a target makespan T: rows are
///   sum_i x(i,j) = 1 per job, sum_j p(i,j) x(i,j) <= T per machine,
/// with x(i,j) fixed to 0 wherever p(i,j) > T.
struct LstLpResult {
    enum class Status { Feasible, Infeasible };
    Status status = Status::Infeasible;
    Rational target;
    FractionalAssignment assignment; // populated on Feasible, exact
};

LstLpResult lst_lp(const Instance& instance, const Rational& target);

/// Smallest multiple of `granularity` at which lst_lp is feasible.
/// Requires every finite processing time to be a multiple of granularity > 0.
/// Search bracket: [max_j min_i p(i,j), sum_j min_i p(i,j)], both ends checked.
Rational find_c_lp(const Instance& instance, const Rational& granularity);

/// Lenstra–Shmoys–Tardos rounding in the Shmoys–Tardos form: interprets x
/// as a fractional matching into per-machine slots (ceil(sum_j x(i,j)) slots,
/// jobs sorted by decreasing p(i,j), ties by job index) and extracts an
/// integral matching.  For every machine,
///   load(i) <= T + max{ p(i,j) : x(i,j) > 0 }.
IntegralAssignment shmoys_tardos_round(const Instance& instance,
                                       const FractionalAssignment& x,
                                       const Rational& target);

/// Rounding runs annotated with the target they used.
struct RoundedSchedule {
    IntegralAssignment assignment;
    Rational target;                 // LP target the rounding was done at
    FractionalAssignment fractional; // LP solution that was rounded
};

/// find_c_lp at the gcd of the finite times, then rounding.  Makespan is at
/// most (2 - g/M) times optimal for g = gcd, M = max finite time, and every
/// machine load is at most target + M - g.
RoundedSchedule gcd_granularity_round_detail(const Instance& instance);
IntegralAssignment gcd_granularity_round(const Instance& instance);

/// 2-approximation: same composition, bound stated against 2 * optimum.
IntegralAssignment approximate_makespan(const Instance& instance);

/// For instances with all finite times in [gamma, 3*gamma]: augments the
/// assignment LP with the cut rows
///   sum_{j : p(i,j) > T/2} x(i,j) <= 1,
///   sum_{j : p(i,j) > T/3} x(i,j) <= 2,
///   sum_j x(i,j) <= 3            (only while valid, i.e. T < 4*gamma),
/// finds the smallest feasible multiple of the gcd and rounds.  Makespan is
/// at most (1 + 5/6) times optimal.  Throws PreconditionViolated if some
/// finite time lies outside [gamma, 3*gamma].
RoundedSchedule three_cut_round_detail(const Instance& instance, const Rational& gamma);
IntegralAssignment three_cut_round(const Instance& instance, const Rational& gamma);

} // namespace schedlab
