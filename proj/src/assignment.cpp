#include "schedlab/assignment.hpp"

#include <stdexcept>
#include <string>

namespace schedlab {

VectorXq machine_loads(const Instance& instance, const IntegralAssignment& a) {
    VectorXq loads = VectorXq::Zero(instance.machines());
    for (int j = 0; j < instance.jobs(); ++j) {
        const int i = a.machine_of[j];
        loads(i) += instance.time(i, j);
    }
    return loads;
}

VectorXq machine_loads(const Instance& instance, const MatrixXq& x) {
    VectorXq loads = VectorXq::Zero(instance.machines());
    for (int j = 0; j < instance.jobs(); ++j) {
        for (int i = 0; i < instance.machines(); ++i) {
            if (x(i, j) == 0) continue;
            loads(i) += x(i, j) * instance.time(i, j);
        }
    }
    return loads;
}

Rational load(const Instance& instance, int machine, const IntegralAssignment& a) {
    Rational sum = 0;
    for (int j = 0; j < instance.jobs(); ++j)
        if (a.machine_of[j] == machine) sum += instance.time(machine, j);
    return sum;
}

Rational load(const Instance& instance, int machine, const MatrixXq& x) {
    Rational sum = 0;
    for (int j = 0; j < instance.jobs(); ++j)
        if (x(machine, j) != 0) sum += x(machine, j) * instance.time(machine, j);
    return sum;
}

Rational makespan(const Instance& instance, const IntegralAssignment& a) {
    return makespan(machine_loads(instance, a));
}

Rational min_load(const Instance& instance, const IntegralAssignment& a) {
    return min_load(machine_loads(instance, a));
}

void validate(const Instance& instance, const IntegralAssignment& a) {
    if (static_cast<int>(a.machine_of.size()) != instance.jobs())
        throw std::invalid_argument("assignment length differs from job count");
    for (int j = 0; j < instance.jobs(); ++j) {
        const int i = a.machine_of[j];
        if (i < 0 || i >= instance.machines())
            throw std::invalid_argument("machine index out of range for job " + std::to_string(j));
        if (!instance.finite(i, j))
            throw std::invalid_argument("job " + std::to_string(j) +
                                        " assigned to a machine with infinite time");
    }
}

namespace {

void validate_matrix(const Instance& instance, const MatrixXq& x) {
    if (x.rows() != instance.machines() || x.cols() != instance.jobs())
        throw std::invalid_argument("assignment matrix has wrong shape");
    for (int j = 0; j < instance.jobs(); ++j) {
        Rational sum = 0;
        for (int i = 0; i < instance.machines(); ++i) {
            const Rational& v = x(i, j);
            if (v < 0 || v > 1)
                throw std::invalid_argument("weight outside [0,1] for job " + std::to_string(j));
            if (v != 0 && !instance.finite(i, j))
                throw std::invalid_argument("weight on an infinite cell for job " +
                                            std::to_string(j));
            sum += v;
        }
        if (sum != 1)
            throw std::invalid_argument("weights of job " + std::to_string(j) +
                                        " do not sum to 1");
    }
}

} // namespace

void validate(const Instance& instance, const FractionalAssignment& a) {
    validate_matrix(instance, a.x);
}

void validate(const Instance& instance, const HalfIntegralAssignment& a) {
    validate_matrix(instance, a.x);
    const Rational half(1, 2);
    for (int j = 0; j < instance.jobs(); ++j) {
        int carriers = 0;
        for (int i = 0; i < instance.machines(); ++i) {
            const Rational& v = a.x(i, j);
            if (v != 0 && v != half && v != 1)
                throw std::invalid_argument("entry not in {0, 1/2, 1} for job " +
                                            std::to_string(j));
            if (v != 0) ++carriers;
        }
        if (carriers > 2)
            throw std::invalid_argument("more than two machines carry job " + std::to_string(j));
    }
}

int split_job_count(const HalfIntegralAssignment& a) {
    const Rational half(1, 2);
    int splits = 0;
    for (int j = 0; j < a.x.cols(); ++j) {
        for (int i = 0; i < a.x.rows(); ++i) {
            if (a.x(i, j) == half) { ++splits; break; }
        }
    }
    return splits;
}

MatrixXq to_matrix(const Instance& instance, const IntegralAssignment& a) {
    MatrixXq x = MatrixXq::Zero(instance.machines(), instance.jobs());
    for (int j = 0; j < instance.jobs(); ++j) x(a.machine_of[j], j) = 1;
    return x;
}

} // namespace schedlab
