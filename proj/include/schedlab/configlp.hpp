#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "schedlab/assignment.hpp"
#include "schedlab/instance.hpp"

namespace schedlab {

/// A machine configuration: a set of jobs whose total time on the machine
/// stays within the target it was generated under.  Jobs sorted ascending.
struct Configuration {
    int machine = -1;
    std::vector<int> jobs;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration& a, const Configuration& b) {
        if (auto c = a.machine <=> b.machine; c != 0) return c;
        return a.jobs <=> b.jobs;
    }
};

/// Weighted configurations y(i,C) >= 0 with, per machine, total weight 1
/// and, per job, total coverage 1.  Entries are kept sorted by (machine,
/// jobs) with duplicates coalesced; zero weights are dropped.
struct ConfigSolution {
    Rational target;
    std::vector<std::pair<Configuration, Rational>> entries;

    void add(Configuration config, Rational weight);
    void normalize(); // sort + coalesce + drop zeros
};

/// Same solution shape, but job j only needs coverage alpha(j) in [0,1].
struct PartialConfigSolution {
    ConfigSolution solution;
    VectorXq coverage; // per-job targets
};

enum class ConfigMode { Exact, Relaxed };

struct ConfigLpOutcome {
    enum class Status { Feasible, Infeasible };
    Status status = Status::Infeasible;
    ConfigSolution solution; // on Feasible; its target is T (Exact) or (1+eps)T (Relaxed)
};

/// Feasibility of the configuration-LP at target T via column generation
/// with knapsack pricing.  Exact: correct verdict over the configurations
/// of load <= T; throws BudgetExceeded when exact pricing is impossible
/// within limits.  Relaxed: Infeasible is still certified at T; a Feasible
/// answer may use configurations of load up to (1+eps)T.
ConfigLpOutcome config_lp_feasible(const Instance& instance, const Rational& target,
                                   ConfigMode mode,
                                   const Rational& epsilon = Rational(1, 100));

/// Best configuration for one pricing round: maximizes the total job dual
/// over C(machine, T); returns it when machine_dual + sum exceeds 0 and the
/// set is nonempty, otherwise nothing.  Exact knapsack DP after clearing
/// denominators (refused via BudgetExceeded beyond a 10^6 capacity, with a
/// subset-enumeration fallback for few items).
std::optional<Configuration> price_column(const Instance& instance, int machine,
                                          const VectorXq& job_duals,
                                          const Rational& machine_dual, const Rational& target);

/// x(i,j) = sum of weights of machine-i configurations containing j.
FractionalAssignment project_to_assignment(const Instance& instance, const ConfigSolution& y);

/// Exact verification: nonnegativity, per-machine weight sums, per-job
/// coverage (1, or the given targets), and per-configuration load <= T.
/// Returns the first violated constraint's description, or nothing when Ok.
std::optional<std::string> verify_config_solution(const Instance& instance,
                                                  const ConfigSolution& y, const Rational& target);
std::optional<std::string> verify_partial_config_solution(const Instance& instance,
                                                          const PartialConfigSolution& y,
                                                          const Rational& target);

/// Streaming check that the Eq-projected assignment of y satisfies the
/// assignment LP rows at y's target, without materializing a dense matrix.
std::optional<std::string> projected_lst_violation(const Instance& instance,
                                                   const ConfigSolution& y);

/// Reference route for tests: enumerate every configuration explicitly and
/// solve the full LP.  Throws BudgetExceeded past max_columns.
ConfigLpOutcome config_lp_feasible_enumerated(const Instance& instance, const Rational& target,
                                              std::int64_t max_columns = 1'000'000);

/// Text format:
///   config-solution 1
///   target <T>
///   y <machine> <weight> <job,job,...>   (empty set written as '-')
std::string serialize_config_solution(const ConfigSolution& y);
ConfigSolution parse_config_solution(std::istream& in);
ConfigSolution parse_config_solution_file(const std::string& path);

} // namespace schedlab
