#pragma once

#include <vector>

#include "schedlab/instance.hpp"
#include "schedlab/rational.hpp"

namespace schedlab {

/// Integral assignment: machine_of[j] is the machine running job j.
/// Valid only if every job is placed on a finite-time machine.
struct IntegralAssignment {
    std::vector<int> machine_of;
};

/// Fractional assignment x (m-by-n, entries in [0,1]): column sums are
/// exactly 1 and x(i,j) = 0 wherever p(i,j) is infinite.
struct FractionalAssignment {
    MatrixXq x;
};

/// Half-integral assignment: entries restricted to {0, 1/2, 1}; per job
/// at most two machines carry weight.
struct HalfIntegralAssignment {
    MatrixXq x;
};

/// Per-machine loads: load(i) = sum_j x(i,j) * p(i,j); infinite entries
/// never carry weight (a nonzero weight there throws).
VectorXq machine_loads(const Instance& instance, const IntegralAssignment& a);
VectorXq machine_loads(const Instance& instance, const MatrixXq& x);

Rational load(const Instance& instance, int machine, const IntegralAssignment& a);
Rational load(const Instance& instance, int machine, const MatrixXq& x);

inline Rational makespan(const VectorXq& loads) { return loads.maxCoeff(); }
inline Rational min_load(const VectorXq& loads) { return loads.minCoeff(); }

Rational makespan(const Instance& instance, const IntegralAssignment& a);
Rational min_load(const Instance& instance, const IntegralAssignment& a);

/// Validation helpers (exact): throw std::invalid_argument on violation.
void validate(const Instance& instance, const IntegralAssignment& a);
void validate(const Instance& instance, const FractionalAssignment& a);
void validate(const Instance& instance, const HalfIntegralAssignment& a);

/// Jobs carrying weight 1/2 on two machines.
int split_job_count(const HalfIntegralAssignment& a);

/// Lifts an integral assignment to its 0/1 matrix.
MatrixXq to_matrix(const Instance& instance, const IntegralAssignment& a);

} // namespace schedlab
