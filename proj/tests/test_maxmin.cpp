#include <doctest.h>

#include <set>
#include <sstream>

#include "schedlab/errors.hpp"
#include "schedlab/maxmin.hpp"
#include "schedlab/oracle.hpp"
#include "schedlab/random_instance.hpp"

using namespace schedlab;

TEST_SUITE_BEGIN("maxmin");

namespace {

Instance from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

RandomSpec balancing_spec(std::uint64_t seed, int machines = 3, int jobs = 5) {
    RandomSpec spec;
    spec.machines = machines;
    spec.jobs = jobs;
    spec.seed = seed;
    spec.balancing = true;
    spec.density_permille = 700;
    return spec;
}

} // namespace

TEST_CASE("state partition and cached sums") {
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 3\n"
                                    "job 0 0:5\n"
                                    "job 1 0:3 1:2\n"
                                    "job 2 0:1 1:4\n");
    BalancingState state(inst);
    CHECK(state.sets(0).b_sum == 5);
    CHECK(state.sets(0).a_sum == 4);
    CHECK(state.sets(0).a_prime_sum() == 1);
    CHECK(state.sets(1).a_sum == 6);
    CHECK(state.sets(1).b_sum == 0);
    CHECK(state.sums_consistent());
    CHECK(state.twin(1, 0) == 1);

    const int pinned = state.pin_largest(0); // job 1, time 3 on machine 0
    CHECK(pinned == 1);
    CHECK(state.sets(0).b_sum == 8);
    CHECK(state.sets(1).a_sum == 4); // lost job 1's twin entry
    CHECK(state.sums_consistent());
}

TEST_CASE("non-balancing instances are rejected") {
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 3\n"
                                    "jobs 1\n"
                                    "job 0 0:1 1:1 2:1\n");
    CHECK_THROWS_AS(decide_T(inst, Rational(1)), NotBalancingInstance);
    CHECK_THROWS_AS(maxmin_balance(inst), NotBalancingInstance);
}

TEST_CASE("decision procedure: private-only instances") {
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 2\n"
                                    "job 0 0:5\n"
                                    "job 1 1:5\n");
    const DecideResult yes = decide_T(inst, Rational(5));
    REQUIRE(yes.status == DecideResult::Status::Solution);
    CHECK(min_load(machine_loads(inst, yes.assignment)) == 5);

    const Instance small = from_text("schedlab-instance 1\n"
                                     "machines 1\n"
                                     "jobs 2\n"
                                     "job 0 0:1\n"
                                     "job 1 0:2\n");
    CHECK(decide_T(small, Rational(4)).status == DecideResult::Status::NoSolutionAtT);
}

TEST_CASE("preassignment pins forced jobs and rejects chains correctly") {
    // machine 0: B = {p=1}, A = {job1: 3}; target 4 forces job1 onto 0
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 3\n"
                                    "job 0 0:1\n"
                                    "job 1 0:3 1:2\n"
                                    "job 2 1:4\n");
    auto state = preassign(BalancingState(inst), Rational(4));
    REQUIRE(state.has_value());
    CHECK(state->sets(0).b_sum == 4);
    CHECK(state->sets(0).a_jobs.empty());
    CHECK(state->sets(1).a_jobs.empty()); // twin side updated

    // pulling job1 to machine 0 leaves machine 1 with 4 < 5: reject at T=5
    CHECK_FALSE(preassign(BalancingState(inst), Rational(5)).has_value());
    // and the oracle agrees that 5 is unreachable
    CHECK(brute_force(inst, Objective::MaxMin).optimum < 5);

    // a state already satisfying the targets is untouched
    auto untouched = preassign(BalancingState(inst), Rational(1));
    REQUIRE(untouched.has_value());
    CHECK(untouched->sets(0).a_sum == 3);
}

TEST_CASE("pairing graph: empty, four-cycle, and component shapes") {
    const Instance none = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 1\n"
                                    "job 0 0:2\n");
    CHECK(build_pairing_graph(BalancingState(none)).vertices.empty());

    // two machines sharing two jobs: same-job + consecutive edges close a 4-cycle
    const Instance square = from_text("schedlab-instance 1\n"
                                      "machines 2\n"
                                      "jobs 2\n"
                                      "job 0 0:3 1:2\n"
                                      "job 1 0:2 1:3\n");
    const PairingGraph graph = build_pairing_graph(BalancingState(square));
    REQUIRE(graph.vertices.size() == 4);
    for (const auto& nb : graph.neighbors) {
        CHECK(nb[0] >= 0);
        CHECK(nb[1] >= 0); // every vertex lies on the cycle
    }
    const std::vector<int> colors = graph.two_coloring();
    for (int v = 0; v < 4; ++v) {
        CHECK(colors[v] != colors[graph.neighbors[v][0]]);
        CHECK(colors[v] != colors[graph.neighbors[v][1]]);
    }
}

TEST_CASE("pairing graphs of random states are paths and even cycles") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Instance inst = random_instance(balancing_spec(seed, 4, 8));
        auto state = preassign(BalancingState(inst), Rational(2));
        if (!state) continue;
        const PairingGraph graph = build_pairing_graph(*state);
        CHECK_NOTHROW(graph.two_coloring()); // bipartite on every component
        // degree <= 2 is structural: at most one same-job and one pair edge
        for (const auto& vertex : graph.vertices) {
            CHECK(vertex.rank >= 0);
        }
    }
}

TEST_CASE("coloring bound: load(i) >= p(A')/2 + p(B)") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = random_instance(balancing_spec(seed, 4, 8));
        const Rational target(3);
        auto state = preassign(BalancingState(inst), target);
        if (!state) continue;
        const PairingGraph graph = build_pairing_graph(*state);
        const IntegralAssignment a = color_and_assign(*state, graph);
        validate(inst, a);
        const VectorXq loads = machine_loads(inst, a);
        for (int i = 0; i < inst.machines(); ++i) {
            CHECK(loads(i) >= state->sets(i).a_prime_sum() / 2 + state->sets(i).b_sum);
            CHECK(loads(i) >= target / 2);
        }
    }
}

TEST_CASE("decide_T at the optimum returns a half-value solution; rejections are sound") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = random_instance(balancing_spec(seed));
        const Rational opt = brute_force(inst, Objective::MaxMin).optimum;
        if (opt > 0) {
            const DecideResult r = decide_T(inst, opt);
            REQUIRE(r.status == DecideResult::Status::Solution);
            CHECK(min_load(machine_loads(inst, r.assignment)) >= opt / 2);
        }
        // any rejected target must exceed the optimum
        for (int dt = 1; dt <= 3; ++dt) {
            const Rational t = opt + dt;
            if (decide_T(inst, t).status == DecideResult::Status::NoSolutionAtT)
                CHECK(opt < t);
        }
    }
}

TEST_CASE("maxmin_balance: private instances exactly, ratio 2 in general") {
    const Instance priv = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 3\n"
                                    "job 0 0:4\n"
                                    "job 1 1:3\n"
                                    "job 2 1:2\n");
    const MaxMinResult exact = maxmin_balance(priv);
    CHECK(exact.value == 4);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = random_instance(balancing_spec(seed, 4, 8));
        const MaxMinResult r = maxmin_balance(inst);
        validate(inst, r.assignment);
        const Rational opt = brute_force(inst, Objective::MaxMin).optimum;
        CHECK(2 * r.value >= opt);
        CHECK(r.value <= opt);
    }
}

TEST_CASE("maxmin_balance: an empty machine forces value 0 but still answers") {
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 3\n"
                                    "jobs 2\n"
                                    "job 0 0:2 1:3\n"
                                    "job 1 0:1\n");
    const MaxMinResult r = maxmin_balance(inst);
    validate(inst, r.assignment);
    CHECK(r.value == 0);
}

TEST_CASE("half-integral: integral LP outputs pass through unchanged in shape") {
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 2\n"
                                    "job 0 0:3\n"
                                    "job 1 1:3\n");
    const HalfIntegralResult r = half_integral_maxmin(inst);
    validate(inst, r.assignment);
    CHECK(split_job_count(r.assignment) == 0);
    CHECK(r.value == 3);
}

TEST_CASE("half-integral: single shared job splits or lands; value covers OPT/2") {
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 1\n"
                                    "job 0 0:1 1:1\n");
    const HalfIntegralResult r = half_integral_maxmin(inst);
    validate(inst, r.assignment);
    // integral optimum is 0 (someone is empty), so any valid output is fine
    CHECK(r.value >= 0);
}

TEST_CASE("half-integral value at least half the optimum on random instances") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RandomSpec spec;
        spec.machines = 4;
        spec.jobs = 8;
        spec.seed = seed + 100;
        spec.density_permille = 700;
        const Instance inst = random_instance(spec);
        const HalfIntegralResult r = half_integral_maxmin(inst);
        validate(inst, r.assignment);
        const Rational opt = brute_force(inst, Objective::MaxMin).optimum;
        CHECK(2 * r.value >= opt);
        CHECK(2 * r.value >= r.target); // the construction's own bound
    }
}

TEST_CASE("sparse half-integral: split budget floor(m/2) and quarter value") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RandomSpec spec;
        spec.machines = 1 + static_cast<int>(seed % 5);
        spec.jobs = 6 + static_cast<int>(seed % 5);
        spec.seed = seed + 900;
        spec.density_permille = 750;
        const Instance inst = random_instance(spec);
        const HalfIntegralResult r = half_integral_sparse(inst);
        validate(inst, r.assignment);
        CHECK(split_job_count(r.assignment) <= inst.machines() / 2);
        const Rational opt = brute_force(inst, Objective::MaxMin).optimum;
        CHECK(4 * r.value >= opt);
    }
}

TEST_CASE("sparse half-integral keeps the mandatory split") {
    // one big shared job and nothing else: it must stay split (budget 1)
    const Instance inst = from_text("schedlab-instance 1\n"
                                    "machines 2\n"
                                    "jobs 1\n"
                                    "job 0 0:8 1:8\n");
    const HalfIntegralResult r = half_integral_sparse(inst);
    CHECK(split_job_count(r.assignment) == 1);
    CHECK(r.value == 4);
}

TEST_SUITE_END();
