#include "schedlab/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "schedlab/errors.hpp"

namespace schedlab {

namespace {

std::vector<int> search_order(const Instance& instance, const std::vector<int>& jobs) {
    std::vector<int> order = jobs;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return instance.min_time(a) > instance.min_time(b);
    });
    return order;
}

// Per-machine eligible time left in order[d..], for the MaxMin bound.
std::vector<VectorXq> suffix_remaining(const Instance& instance, const std::vector<int>& order) {
    std::vector<VectorXq> suffix(order.size() + 1, VectorXq::Zero(instance.machines()));
    for (int d = static_cast<int>(order.size()) - 1; d >= 0; --d) {
        suffix[d] = suffix[d + 1];
        for (const auto& [i, t] : instance.eligible(order[d])) suffix[d](i) += t;
    }
    return suffix;
}

// Depth-first branch and bound.  Jobs explored in decreasing min-time order,
// machines in increasing index.
struct Search {
    const Instance& instance;
    Objective objective;
    std::int64_t budget;
    std::int64_t nodes = 0;
    VectorXq loads;

    Search(const Instance& inst, Objective obj, std::int64_t limit)
        : instance(inst), objective(obj), budget(limit),
          loads(VectorXq::Zero(inst.machines())) {}

    void charge() {
        if (++nodes > budget)
            throw BudgetExceeded("oracle search exceeded its node budget");
    }

    Rational value() const {
        return objective == Objective::Makespan ? loads.maxCoeff() : loads.minCoeff();
    }

    // Phase 1: optimal value over completions of the current loads.
    void optimize(const std::vector<int>& order, const std::vector<VectorXq>& suffix,
                  int depth, bool& have_best, Rational& best) {
        charge();
        if (have_best) {
            if (objective == Objective::Makespan) {
                if (loads.maxCoeff() >= best) return;
            } else {
                if ((loads + suffix[depth]).minCoeff() <= best) return;
            }
        }
        if (depth == static_cast<int>(order.size())) {
            best = value();
            have_best = true;
            return;
        }
        for (const auto& [i, t] : instance.eligible(order[depth])) {
            loads(i) += t;
            optimize(order, suffix, depth + 1, have_best, best);
            loads(i) -= t;
        }
    }

    // Phase 2: can order[depth..] be placed so the final value attains target?
    bool completes(const std::vector<int>& order, const std::vector<VectorXq>& suffix,
                   int depth, const Rational& target) {
        charge();
        if (objective == Objective::Makespan) {
            if (loads.maxCoeff() > target) return false;
        } else {
            if ((loads + suffix[depth]).minCoeff() < target) return false;
        }
        if (depth == static_cast<int>(order.size())) return true;
        for (const auto& [i, t] : instance.eligible(order[depth])) {
            loads(i) += t;
            const bool ok = completes(order, suffix, depth + 1, target);
            loads(i) -= t;
            if (ok) return true;
        }
        return false;
    }
};

} // namespace

OracleResult brute_force(const Instance& instance, Objective objective, std::int64_t budget) {
    if (budget <= 0) throw BudgetExceeded("oracle budget must be positive");

    BigInt leaves = 1;
    for (int j = 0; j < instance.jobs(); ++j) {
        leaves *= static_cast<int>(instance.eligible(j).size());
        if (leaves > budget)
            throw BudgetExceeded("eligible-assignment count exceeds the oracle budget");
    }

    Search search(instance, objective, budget);
    std::vector<int> all(instance.jobs());
    std::iota(all.begin(), all.end(), 0);
    const std::vector<int> order = search_order(instance, all);
    const std::vector<VectorXq> suffix = suffix_remaining(instance, order);

    bool have_best = false;
    Rational best;
    search.optimize(order, suffix, 0, have_best, best);
    // Every job has an eligible machine, so some assignment exists.

    // Lexicographically smallest optimal witness: fix jobs in index order,
    // lowest machine first, keeping the optimum attainable for the rest.
    IntegralAssignment witness;
    witness.machine_of.assign(instance.jobs(), -1);
    for (int j = 0; j < instance.jobs(); ++j) {
        std::vector<int> rest;
        for (int idx : order)
            if (witness.machine_of[idx] < 0 && idx != j) rest.push_back(idx);
        const std::vector<VectorXq> rest_suffix = suffix_remaining(instance, rest);
        bool fixed = false;
        for (const auto& [i, t] : instance.eligible(j)) {
            search.loads(i) += t;
            if (search.completes(rest, rest_suffix, 0, best)) {
                witness.machine_of[j] = i;
                fixed = true;
                break;
            }
            search.loads(i) -= t;
        }
        if (!fixed) throw std::logic_error("oracle witness reconstruction failed");
    }

    return {best, std::move(witness)};
}

} // namespace schedlab
