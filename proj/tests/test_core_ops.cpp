#include <doctest.h>

#include <random>
#include <sstream>

#include "schedlab/assignment.hpp"
#include "schedlab/instance.hpp"
#include "schedlab/oracle.hpp"
#include "schedlab/random_instance.hpp"

using namespace schedlab;

TEST_SUITE_BEGIN("core_ops");

namespace {

Instance from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

// Three unit jobs on two machines; the running example.
Instance three_unit_jobs() {
    return from_text("schedlab-instance 1\n"
                     "machines 2\n"
                     "jobs 3\n"
                     "job 0 0:1 1:1\n"
                     "job 1 0:1 1:1\n"
                     "job 2 0:1 1:1\n");
}

} // namespace

TEST_CASE("integral loads") {
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 2\n"
                                    "job 0 0:3\n"
                                    "job 1 0:4 1:2\n");
    IntegralAssignment a{{0, 0}};
    CHECK(load(inst, 0, a) == 7);
    CHECK(load(inst, 1, a) == 0); // empty machine
    CHECK(makespan(inst, a) == 7);
    CHECK(min_load(inst, a) == 0);
}

TEST_CASE("fractional loads: uniform halves over three unit jobs") {
    const Instance inst = three_unit_jobs();
    MatrixXq x = MatrixXq::Constant(2, 3, Rational(1, 2));
    CHECK(load(inst, 0, x) == Rational(3, 2));
    CHECK(load(inst, 1, x) == Rational(3, 2));
    validate(inst, FractionalAssignment{x});
}

TEST_CASE("makespan and min_load over plain load vectors") {
    VectorXq loads(3);
    loads << Rational(2), Rational(5), Rational(3);
    CHECK(makespan(loads) == 5);
    CHECK(min_load(loads) == 2);

    const Instance single = from_text("schedlab-instance 1\n"
                                      "machines 1\n"
                                      "jobs 1\n"
                                      "job 0 0:7\n");
    IntegralAssignment a{{0}};
    CHECK(makespan(single, a) == 7);
    CHECK(min_load(single, a) == 7);
}

TEST_CASE("unscaled gap member: integral makespan at least 2 - 1/k") {
    // k = 3 member in its unscaled form (times 1/3 and 1): two doubled
    // roots, seven jobs; exhaustive enumeration over eligible machines.
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 4\n"
                                    "jobs 7\n"
                                    "job 0 0:1/3 1:1\n"
                                    "job 1 0:1/3 1:1\n"
                                    "job 2 0:1/3 1:1\n"
                                    "job 3 2:1/3 3:1\n"
                                    "job 4 2:1/3 3:1\n"
                                    "job 5 2:1/3 3:1\n"
                                    "job 6 0:1 2:1\n");
    const OracleResult r = brute_force(inst, Objective::Makespan);
    CHECK(r.optimum >= Rational(5, 3)); // 2 - 1/k
    CHECK(r.optimum == Rational(5, 3));
}

TEST_CASE("weight on an infinite cell is a contract violation") {
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 1\n"
                                    "job 0 0:1\n");
    MatrixXq x = MatrixXq::Zero(2, 1);
    x(1, 0) = 1;
    CHECK_THROWS_AS(machine_loads(inst, x), std::logic_error);
    CHECK_THROWS_AS(validate(inst, FractionalAssignment{x}), std::invalid_argument);
}

TEST_CASE("load is linear in the assignment") {
    RandomSpec spec;
    spec.machines = 3;
    spec.jobs = 6;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        spec.seed = seed;
        const Instance inst = random_instance(spec);
        MatrixXq a = MatrixXq::Zero(3, 6), b = MatrixXq::Zero(3, 6);
        std::mt19937_64 rng(seed + 1000);
        for (int j = 0; j < 6; ++j) {
            for (const auto& [i, t] : inst.eligible(j)) {
                a(i, j) = Rational(static_cast<int>(rng() % 3), 7);
                b(i, j) = Rational(static_cast<int>(rng() % 3), 7);
            }
        }
        const VectorXq separate = machine_loads(inst, a) + machine_loads(inst, b);
        const VectorXq joint = machine_loads(inst, MatrixXq(a + b));
        CHECK(separate == joint);
    }
}

TEST_CASE("half-integral validation") {
    const Instance inst = three_unit_jobs();
    MatrixXq x = MatrixXq::Zero(2, 3);
    x(0, 0) = 1;
    x(0, 1) = Rational(1, 2);
    x(1, 1) = Rational(1, 2);
    x(1, 2) = 1;
    const HalfIntegralAssignment h{x};
    validate(inst, h);
    CHECK(split_job_count(h) == 1);

    MatrixXq bad = x;
    bad(0, 2) = Rational(1, 3);
    bad(1, 2) = Rational(2, 3);
    CHECK_THROWS_AS(validate(inst, HalfIntegralAssignment{bad}), std::invalid_argument);
}

TEST_SUITE_END();
