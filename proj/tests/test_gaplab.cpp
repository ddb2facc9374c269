#include <doctest.h>

#include "schedlab/errors.hpp"
#include "schedlab/gaplab.hpp"
#include "schedlab/oracle.hpp"

using namespace schedlab;

TEST_SUITE_BEGIN("gaplab");

TEST_CASE("alpha schedule and minimal height") {
    CHECK(alpha_height(3) == 1); // 1/2 immediately
    CHECK(alpha_height(4) == 3); // 1/3, 4/9, 16/27
    const auto alpha = alpha_schedule(4, 3);
    CHECK(alpha[1] == Rational(1, 3));
    CHECK(alpha[2] == Rational(4, 9));
    CHECK(alpha[3] == Rational(16, 27));
    CHECK(alpha[3] >= Rational(1, 2));
    CHECK(alpha[2] < Rational(1, 2));
}

TEST_CASE("k = 3: four machines, seven jobs, shared job on the two roots") {
    const GapInstance g = generate_gap_instance(3, /*allow_small_k=*/true);
    CHECK(g.N == 1);
    CHECK(g.instance.machines() == 4);
    CHECK(g.instance.jobs() == 7);
    const auto row = g.instance.eligible(g.big_job);
    REQUIRE(row.size() == 2);
    CHECK(row[0].first == g.roots[0]);
    CHECK(row[1].first == g.roots[1]);
    CHECK(row[0].second == 3); // scaled time k
    CHECK(row[1].second == 3);
    // every job touches at most two machines; times are 1 or k
    for (int j = 0; j < g.instance.jobs(); ++j) {
        CHECK(g.instance.eligible(j).size() <= 2);
        for (const auto& [i, t] : g.instance.eligible(j)) CHECK((t == 1 || t == 3));
    }
}

TEST_CASE("k = 4: counts match the closed forms") {
    const GapInstance g = generate_gap_instance(4);
    CHECK(g.N == 3);
    CHECK(BigInt(g.instance.machines()) == gap_machine_count(4, 3));
    CHECK(BigInt(g.instance.jobs()) == gap_job_count(4, 3));
    CHECK(g.instance.machines() == 2 * ((64 - 1) / 3 + 16));
}

TEST_CASE("generation guards") {
    CHECK_THROWS_AS(generate_gap_instance(1, true), std::invalid_argument);
    CHECK_THROWS_AS(generate_gap_instance(3), std::invalid_argument); // needs the flag
    CHECK_THROWS_AS(generate_gap_instance(9), BudgetExceeded);        // ~8e11 machines
}

TEST_CASE("k = 3 certificate: leaf weights 1/k, no clamping needed") {
    const GapInstance g = generate_gap_instance(3, true);
    const ConfigSolution y = build_certificate(g);
    CHECK_FALSE(verify_config_solution(g.instance, y, Rational(4)).has_value());

    // doubled leaves carry three singletons of weight 1/3 each
    for (int id = 0; id < g.instance.machines(); ++id) {
        if (g.topology[id].role != TreeRole::DoubledLeaf) continue;
        int singletons = 0;
        for (const auto& [config, weight] : y.entries) {
            if (config.machine != id) continue;
            CHECK(config.jobs.size() == 1);
            CHECK(weight == Rational(1, 3));
            ++singletons;
        }
        CHECK(singletons == 3);
    }
    // alpha(1) = 1/2 exactly: no singleton surplus entries at the roots
    for (const auto& [config, weight] : y.entries) {
        if (config.machine != g.roots[0]) continue;
        CHECK(config.jobs.size() >= 2);
    }
}

TEST_CASE("certificates verify exactly for materializable k") {
    for (int k : {2, 3, 4, 5}) {
        const GapInstance g = generate_gap_instance(k, true);
        const ConfigSolution y = build_certificate(g);
        CHECK_FALSE(verify_config_solution(g.instance, y, Rational(k + 1)).has_value());
    }
}

TEST_CASE("coverage telescoping at an interior machine of the k = 4 member") {
    const GapInstance g = generate_gap_instance(4);
    const ConfigSolution y = build_certificate(g);
    // pick any pre-leaf machine; its children must be covered exactly 1 and
    // its parent edge exactly alpha(1), counting the subtree side
    for (int id = 0; id < g.instance.machines(); ++id) {
        const GapMachine& machine = g.topology[id];
        if (machine.role != TreeRole::PreLeaf) continue;
        Rational parent_cover = 0;
        VectorXq child_cover = VectorXq::Zero(g.instance.jobs());
        for (const auto& [config, weight] : y.entries) {
            for (int j : config.jobs) {
                if (j == machine.parent_job && config.machine == id) parent_cover += weight;
                child_cover(j) += weight;
            }
        }
        CHECK(parent_cover == g.alpha[1]);
        for (int j : machine.child_jobs) CHECK(child_cover(j) == 1);
        break;
    }
}

TEST_CASE("the scaled k = 3 member has integral optimum 5 = 2k - 1") {
    const GapInstance g = generate_gap_instance(3, true);
    const OracleResult r = brute_force(g.instance, Objective::Makespan);
    CHECK(r.optimum == 5);
    CHECK(integral_lower_bound_check(g, r.witness).ok);

    // stuffing the big job plus all root children onto one root: load 2k
    IntegralAssignment pile;
    pile.machine_of.assign(7, -1);
    for (int j = 0; j < g.instance.jobs(); ++j) {
        const auto row = g.instance.eligible(j);
        pile.machine_of[j] = row[0].first;
        for (const auto& [i, t] : row)
            if (i == g.roots[0]) pile.machine_of[j] = i;
    }
    const LowerBoundCheck check = integral_lower_bound_check(g, pile);
    CHECK(check.ok);
    CHECK(makespan(check.loads) >= 2 * 3);
}

TEST_CASE("gap report rows and TSV") {
    const auto rows = gap_report({3, 4, 6, 9});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].ratio == Rational(5, 4));
    CHECK(rows[3].ratio == Rational(17, 10));
    CHECK(rows[3].ratio >= Rational(17, 10));
    for (const auto& row : rows) {
        CHECK(row.fractional_target == row.k + 1);
        CHECK(row.integral_bound == 2 * row.k - 1);
        CHECK(row.ratio == Rational(2 * row.k - 1, row.k + 1));
    }
    const std::string tsv = gap_report_tsv(rows);
    CHECK(tsv.find("k\tT_frac\tLB_int\tratio\n") == 0);
    CHECK(tsv.find("3\t4\t5\t5/4\n") != std::string::npos);
    CHECK(tsv.find("9\t10\t17\t17/10\n") != std::string::npos);
}

TEST_CASE("symbolic verification covers the unmaterializable members") {
    CHECK(verify_certificate_symbolically(3) == 1);
    CHECK(verify_certificate_symbolically(4) == 3);
    CHECK(verify_certificate_symbolically(6) == 7);
    CHECK(verify_certificate_symbolically(9) == 13);
    CHECK(verify_certificate_symbolically(17) == 36);
}

TEST_SUITE_END();
