#pragma once

#include <array>
#include <optional>
#include <set>
#include <vector>

#include "schedlab/assignment.hpp"
#include "schedlab/instance.hpp"

namespace schedlab {

/// Thrown when a job is eligible on three or more machines but a
/// balancing-only algorithm was invoked.
class NotBalancingInstance : public std::invalid_argument {
public:
    explicit NotBalancingInstance(const std::string& what) : std::invalid_argument(what) {}
};

/// Per-machine working sets for the balancing decision procedure.
/// B holds jobs eligible only on this machine; A holds flexible jobs
/// (eligible here and on one other machine) ordered by non-increasing
/// time on this machine, ties by job index.  A' is A without its head.
class BalancingState {
public:
    struct MachineSets {
        // (time on this machine descending, job ascending)
        struct ByTimeDesc {
            bool operator()(const std::pair<Rational, int>& a,
                            const std::pair<Rational, int>& b) const {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            }
        };
        std::set<std::pair<Rational, int>, ByTimeDesc> a_jobs;
        std::vector<int> b_jobs;
        Rational a_sum;
        Rational b_sum;

        Rational a_prime_sum() const {
            return a_jobs.empty() ? a_sum : a_sum - a_jobs.begin()->first;
        }
    };

    /// Partitions eligibility; throws NotBalancingInstance.
    explicit BalancingState(const Instance& instance);

    const Instance& instance() const { return *instance_; }
    const MachineSets& sets(int machine) const { return machines_[machine]; }
    int machine_count() const { return static_cast<int>(machines_.size()); }

    /// The other machine of a flexible job.
    int twin(int job, int machine) const;

    /// Moves machine `i`'s largest flexible job into B(i), dropping it from
    /// the twin's A-set.  Returns the job.
    int pin_largest(int machine);

    /// Recomputes the cached sums from scratch (test support).
    bool sums_consistent() const;

private:
    const Instance* instance_;
    std::vector<MachineSets> machines_;
    std::vector<std::array<int, 2>> eligible_pair_; // per job; [1] = -1 if private
};

/// The pairing graph over machine-sides of flexible jobs: one vertex per
/// (machine, rank in A); an edge joins the two sides of the same job, and
/// consecutive ranks (1,2), (3,4), ... on each machine are paired.
/// Max degree 2 and alternating edge types, hence bipartite.
struct PairingGraph {
    struct Vertex {
        int machine;
        int rank; // 0-based position in the machine's A order
        int job;
    };
    std::vector<Vertex> vertices;
    std::vector<std::array<int, 2>> neighbors; // [0]=same-job side, [1]=pair side; -1 none

    /// Proper 2-coloring, component by component from the smallest vertex.
    std::vector<int> two_coloring() const;
};

/// Preassignment: rejects when some machine cannot reach T even with all
/// its jobs; otherwise pins forced jobs (p(A') + p(B) < T) until every
/// machine satisfies p(A') + p(B) >= T.  Returns the updated state, or
/// nothing when there is provably no solution of value >= T.
std::optional<BalancingState> preassign(BalancingState state, const Rational& target);

PairingGraph build_pairing_graph(const BalancingState& state);

/// Assigns each flexible job to the machine whose vertex is black and each
/// B-job to its machine; every machine ends with
/// load >= p(A')/2 + p(B) >= T/2 for the post-preassignment sets.
IntegralAssignment color_and_assign(const BalancingState& state, const PairingGraph& graph);

struct DecideResult {
    enum class Status { Solution, NoSolutionAtT };
    Status status = Status::NoSolutionAtT;
    IntegralAssignment assignment; // on Solution: min load >= T/2
};

/// Either a solution of value at least T/2, or a certificate that no
/// solution reaches T.  Requires every job eligible on at most two machines.
DecideResult decide_T(const Instance& instance, const Rational& target);

struct MaxMinResult {
    IntegralAssignment assignment;
    Rational value;    // min load of the assignment
    Rational target;   // largest T the decision procedure accepted
};

/// Combinatorial 2-approximation for balancing instances: binary search on
/// multiples of the gcd wrapped around decide_T.
MaxMinResult maxmin_balance(const Instance& instance);

struct HalfIntegralResult {
    HalfIntegralAssignment assignment;
    Rational value;  // min machine load (true times)
    Rational target; // largest LP-feasible T; value >= target/2
};

/// Half-integral solution of value at least half the integral optimum, for
/// general instances: binary search over the covering LP with times capped
/// at T, then a slot rounding that costs each machine less than half its
/// largest supported (capped) time.
HalfIntegralResult half_integral_maxmin(const Instance& instance);

/// Additionally resolves split jobs until at most floor(m/2) remain, at the
/// cost of one more factor 2: value >= optimum/4.
HalfIntegralResult half_integral_sparse(const Instance& instance);

} // namespace schedlab
