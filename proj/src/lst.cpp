#include "schedlab/lst.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "schedlab/errors.hpp"

namespace schedlab {

namespace {

// Variable kit for x-space LPs: one LP variable per admissible (machine, job)
// cell (finite time at most T).
struct XVariables {
    std::vector<std::vector<std::pair<int, int>>> by_job; // job -> (machine, var)
    std::vector<std::vector<std::pair<int, int>>> by_machine; // machine -> (job, var)
    int count = 0;
};

XVariables admissible_variables(const Instance& instance, const Rational& target) {
    XVariables vars;
    vars.by_job.resize(instance.jobs());
    vars.by_machine.resize(instance.machines());
    for (int j = 0; j < instance.jobs(); ++j) {
        for (const auto& [i, t] : instance.eligible(j)) {
            if (t > target) continue; // excluded cell, x fixed to 0
            vars.by_job[j].emplace_back(i, vars.count);
            vars.by_machine[i].emplace_back(j, vars.count);
            ++vars.count;
        }
    }
    return vars;
}

MatrixXq point_to_matrix(const Instance& instance, const XVariables& vars, const VectorXq& point) {
    MatrixXq x = MatrixXq::Zero(instance.machines(), instance.jobs());
    for (int j = 0; j < instance.jobs(); ++j)
        for (const auto& [i, v] : vars.by_job[j]) x(i, j) = point(v);
    return x;
}

void check_lst_invariants(const Instance& instance, const MatrixXq& x, const Rational& target) {
    for (int j = 0; j < instance.jobs(); ++j) {
        Rational sum = 0;
        for (int i = 0; i < instance.machines(); ++i) {
            if (x(i, j) != 0 && instance.time(i, j) > target)
                throw std::logic_error("LP solution places weight on an excluded cell");
            sum += x(i, j);
        }
        if (sum != 1) throw std::logic_error("LP solution does not cover a job exactly");
    }
    const VectorXq loads = machine_loads(instance, x);
    for (int i = 0; i < instance.machines(); ++i)
        if (loads(i) > target) throw std::logic_error("LP solution overloads a machine");
}

} // namespace

LstLpResult lst_lp(const Instance& instance, const Rational& target) {
    if (target <= 0) throw std::invalid_argument("target makespan must be positive");
    LstLpResult result;
    result.target = target;

    if (instance.machines() == 1) {
        Rational total = 0;
        for (int j = 0; j < instance.jobs(); ++j) total += instance.time(0, j);
        if (total > target) return result;
        result.status = LstLpResult::Status::Feasible;
        result.assignment.x = MatrixXq::Ones(1, instance.jobs());
        return result;
    }

    const XVariables vars = admissible_variables(instance, target);
    for (int j = 0; j < instance.jobs(); ++j)
        if (vars.by_job[j].empty()) return result; // some job has no machine at all

    LinearProgram lp(vars.count);
    for (int j = 0; j < instance.jobs(); ++j) {
        std::vector<std::pair<int, Rational>> row;
        for (const auto& [i, v] : vars.by_job[j]) row.emplace_back(v, Rational(1));
        lp.add_row(std::move(row), Relation::Equal, Rational(1));
    }
    for (int i = 0; i < instance.machines(); ++i) {
        if (vars.by_machine[i].empty()) continue;
        std::vector<std::pair<int, Rational>> row;
        for (const auto& [j, v] : vars.by_machine[i]) row.emplace_back(v, instance.time(i, j));
        lp.add_row(std::move(row), Relation::LessEq, target);
    }

    const SimplexResult solved = solve_feasibility(lp);
    if (solved.status != SimplexResult::Status::Feasible) return result;

    result.status = LstLpResult::Status::Feasible;
    result.assignment.x = point_to_matrix(instance, vars, solved.point);
    check_lst_invariants(instance, result.assignment.x, target);
    return result;
}

namespace {

// Binary search for the smallest feasible multiple of `step` given a
// monotone feasibility predicate, with bracket [lo, hi], hi feasible.
Rational smallest_feasible_multiple(const Rational& step, BigInt k_lo, BigInt k_hi,
                                    const std::function<bool(const Rational&)>& feasible) {
    if (feasible(k_lo * step)) return k_lo * step;
    // invariant: k_lo infeasible, k_hi feasible
    while (k_hi - k_lo > 1) {
        BigInt mid = k_lo + (k_hi - k_lo) / 2;
        if (feasible(mid * step)) k_hi = mid;
        else k_lo = mid;
    }
    return k_hi * step;
}

std::pair<Rational, Rational> clp_bracket(const Instance& instance) {
    Rational lo = 0, hi = 0;
    for (int j = 0; j < instance.jobs(); ++j) {
        const Rational m = instance.min_time(j);
        lo = std::max(lo, m);
        hi += m;
    }
    return {lo, hi};
}

} // namespace

Rational find_c_lp(const Instance& instance, const Rational& granularity) {
    if (granularity <= 0) throw std::invalid_argument("granularity must be positive");
    for (int j = 0; j < instance.jobs(); ++j)
        for (const auto& [i, t] : instance.eligible(j))
            if (!is_multiple_of(t, granularity))
                throw std::invalid_argument(
                    "processing times must be integer multiples of the granularity");

    const auto [lo, hi] = clp_bracket(instance);
    return smallest_feasible_multiple(
        granularity, floor_multiple(lo, granularity), floor_multiple(hi, granularity),
        [&](const Rational& t) {
            return lst_lp(instance, t).status == LstLpResult::Status::Feasible;
        });
}

namespace {

struct Slot {
    int machine;
    std::vector<int> jobs; // support jobs with positive weight in this slot
};

// Greedy slot filling: per machine, support jobs sorted by decreasing time
// (ties by index) are poured into unit-capacity slots in order.
std::vector<Slot> build_slots(const Instance& instance, const MatrixXq& x) {
    std::vector<Slot> slots;
    for (int i = 0; i < instance.machines(); ++i) {
        std::vector<int> support;
        Rational mass = 0;
        for (int j = 0; j < instance.jobs(); ++j) {
            if (x(i, j) > 0) {
                support.push_back(j);
                mass += x(i, j);
            }
        }
        if (support.empty()) continue;
        std::stable_sort(support.begin(), support.end(), [&](int a, int b) {
            return instance.time(i, a) > instance.time(i, b);
        });
        Slot current{i, {}};
        Rational room = 1;
        for (int j : support) {
            Rational w = x(i, j);
            while (w > 0) {
                const Rational take = std::min(w, room);
                current.jobs.push_back(j);
                w -= take;
                room -= take;
                if (room == 0) {
                    slots.push_back(std::move(current));
                    current = Slot{i, {}};
                    room = 1;
                }
            }
        }
        if (!current.jobs.empty()) slots.push_back(std::move(current));
    }
    return slots;
}

// Maximum bipartite matching (jobs vs slots) via augmenting paths,
// deterministic in the given adjacency order.
class SlotMatcher {
public:
    SlotMatcher(int jobs, const std::vector<std::vector<int>>& slot_options)
        : options_(slot_options), match_job_(jobs, -1) {
        int slots = 0;
        for (const auto& opts : options_)
            for (int s : opts) slots = std::max(slots, s + 1);
        match_slot_.assign(slots, -1);
    }

    bool augment(int job, std::vector<bool>& visited) {
        for (int s : options_[job]) {
            if (visited[s]) continue;
            visited[s] = true;
            if (match_slot_[s] < 0 || augment(match_slot_[s], visited)) {
                match_slot_[s] = job;
                match_job_[job] = s;
                return true;
            }
        }
        return false;
    }

    std::vector<int> run() {
        for (int j = 0; j < static_cast<int>(match_job_.size()); ++j) {
            std::vector<bool> visited(match_slot_.size(), false);
            if (!augment(j, visited))
                throw std::logic_error("slot matching failed to saturate a job");
        }
        return match_job_;
    }

private:
    const std::vector<std::vector<int>>& options_;
    std::vector<int> match_job_;
    std::vector<int> match_slot_;
};

} // namespace

IntegralAssignment shmoys_tardos_round(const Instance& instance, const FractionalAssignment& x,
                                       const Rational& target) {
    (void)target; // the bound is a consequence; the construction needs only x
    const std::vector<Slot> slots = build_slots(instance, x.x);

    std::vector<std::vector<int>> options(instance.jobs());
    for (int s = 0; s < static_cast<int>(slots.size()); ++s)
        for (int j : slots[s].jobs) options[j].push_back(s);
    for (int j = 0; j < instance.jobs(); ++j)
        if (options[j].empty())
            throw std::invalid_argument("fractional assignment leaves a job uncovered");

    SlotMatcher matcher(instance.jobs(), options);
    const std::vector<int> matched = matcher.run();

    IntegralAssignment out;
    out.machine_of.resize(instance.jobs());
    for (int j = 0; j < instance.jobs(); ++j) out.machine_of[j] = slots[matched[j]].machine;
    return out;
}

namespace {

IntegralAssignment single_machine_assignment(const Instance& instance) {
    IntegralAssignment a;
    a.machine_of.assign(instance.jobs(), 0);
    return a;
}

} // namespace

RoundedSchedule gcd_granularity_round_detail(const Instance& instance) {
    if (instance.machines() == 1) {
        RoundedSchedule r{single_machine_assignment(instance), 0,
                          FractionalAssignment{MatrixXq::Ones(1, instance.jobs())}};
        r.target = load(instance, 0, r.assignment);
        return r;
    }
    const Rational g = instance.finite_gcd();
    const Rational target = find_c_lp(instance, g);
    LstLpResult lp = lst_lp(instance, target);
    if (lp.status != LstLpResult::Status::Feasible)
        throw std::logic_error("binary search returned an infeasible target");
    IntegralAssignment rounded = shmoys_tardos_round(instance, lp.assignment, target);
    return {std::move(rounded), target, std::move(lp.assignment)};
}

IntegralAssignment gcd_granularity_round(const Instance& instance) {
    return gcd_granularity_round_detail(instance).assignment;
}

IntegralAssignment approximate_makespan(const Instance& instance) {
    return gcd_granularity_round_detail(instance).assignment;
}

namespace {

LstLpResult cut_lp(const Instance& instance, const Rational& target, const Rational& gamma) {
    LstLpResult result;
    result.target = target;

    const XVariables vars = admissible_variables(instance, target);
    for (int j = 0; j < instance.jobs(); ++j)
        if (vars.by_job[j].empty()) return result;

    LinearProgram lp(vars.count);
    for (int j = 0; j < instance.jobs(); ++j) {
        std::vector<std::pair<int, Rational>> row;
        for (const auto& [i, v] : vars.by_job[j]) row.emplace_back(v, Rational(1));
        lp.add_row(std::move(row), Relation::Equal, Rational(1));
    }
    const bool count_cut_valid = target < 4 * gamma; // at most 3 jobs fit below T
    for (int i = 0; i < instance.machines(); ++i) {
        if (vars.by_machine[i].empty()) continue;
        std::vector<std::pair<int, Rational>> loads, big_half, big_third, all;
        for (const auto& [j, v] : vars.by_machine[i]) {
            const Rational& t = instance.time(i, j);
            loads.emplace_back(v, t);
            all.emplace_back(v, Rational(1));
            if (2 * t > target) big_half.emplace_back(v, Rational(1));
            if (3 * t > target) big_third.emplace_back(v, Rational(1));
        }
        lp.add_row(std::move(loads), Relation::LessEq, target);
        if (big_half.size() > 1) lp.add_row(std::move(big_half), Relation::LessEq, Rational(1));
        if (big_third.size() > 2) lp.add_row(std::move(big_third), Relation::LessEq, Rational(2));
        if (count_cut_valid && all.size() > 3)
            lp.add_row(std::move(all), Relation::LessEq, Rational(3));
    }

    const SimplexResult solved = solve_feasibility(lp);
    if (solved.status != SimplexResult::Status::Feasible) return result;
    result.status = LstLpResult::Status::Feasible;
    result.assignment.x = point_to_matrix(instance, vars, solved.point);
    check_lst_invariants(instance, result.assignment.x, target);
    return result;
}

} // namespace

RoundedSchedule three_cut_round_detail(const Instance& instance, const Rational& gamma) {
    if (gamma <= 0) throw PreconditionViolated("gamma must be positive");
    for (int j = 0; j < instance.jobs(); ++j)
        for (const auto& [i, t] : instance.eligible(j))
            if (t < gamma || t > 3 * gamma)
                throw PreconditionViolated("finite processing time outside [gamma, 3*gamma]");

    if (instance.machines() == 1) {
        RoundedSchedule r{single_machine_assignment(instance), 0,
                          FractionalAssignment{MatrixXq::Ones(1, instance.jobs())}};
        r.target = load(instance, 0, r.assignment);
        return r;
    }

    const Rational g = instance.finite_gcd();
    const auto [lo, hi] = clp_bracket(instance);
    const Rational target = smallest_feasible_multiple(
        g, floor_multiple(lo, g), floor_multiple(hi, g), [&](const Rational& t) {
            return cut_lp(instance, t, gamma).status == LstLpResult::Status::Feasible;
        });

    LstLpResult lp = cut_lp(instance, target, gamma);
    if (lp.status != LstLpResult::Status::Feasible)
        throw std::logic_error("binary search returned an infeasible target");
    IntegralAssignment rounded = shmoys_tardos_round(instance, lp.assignment, target);
    return {std::move(rounded), target, std::move(lp.assignment)};
}

IntegralAssignment three_cut_round(const Instance& instance, const Rational& gamma) {
    return three_cut_round_detail(instance, gamma).assignment;
}

} // namespace schedlab
