#include "schedlab/configlp.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "schedlab/errors.hpp"
#include "schedlab/simplex.hpp"

namespace schedlab {

void ConfigSolution::add(Configuration config, Rational weight) {
    entries.emplace_back(std::move(config), std::move(weight));
}

void ConfigSolution::normalize() {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Configuration, Rational>> merged;
    for (auto& [config, weight] : entries) {
        if (!merged.empty() && merged.back().first == config) merged.back().second += weight;
        else merged.emplace_back(std::move(config), std::move(weight));
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    entries = std::move(merged);
}

namespace {

// ---- knapsack pricing -----------------------------------------------------

struct PricingItem {
    int job;
    Rational time;
    Rational value; // job dual, > 0
};

// Exact 0/1 knapsack over integer weights; maximizes total value and, among
// maximizers, prefers including lower job indices (items arrive sorted by
// ascending job index).
std::vector<int> knapsack_exact(const std::vector<PricingItem>& items,
                                const std::vector<std::int64_t>& weights, std::int64_t capacity,
                                Rational& best_value) {
    const int n = static_cast<int>(items.size());
    const auto cap = static_cast<size_t>(capacity);
    // dp[c]: best value over already-processed suffix with capacity c.
    std::vector<Rational> dp(cap + 1, Rational(0));
    std::vector<std::vector<bool>> take(n, std::vector<bool>(cap + 1, false));
    for (int idx = n - 1; idx >= 0; --idx) {
        const auto w = static_cast<size_t>(weights[idx]);
        for (size_t c = cap + 1; c-- > w;) {
            const Rational with = items[idx].value + dp[c - w];
            if (with >= dp[c]) { // tie: include, so earlier indices win
                dp[c] = with;
                take[idx][c] = true;
            }
        }
    }
    best_value = dp[cap];
    std::vector<int> chosen;
    size_t c = cap;
    for (int idx = 0; idx < n; ++idx) {
        if (take[idx][c]) {
            chosen.push_back(items[idx].job);
            c -= static_cast<size_t>(weights[idx]);
        }
    }
    return chosen;
}

// Subset-enumeration fallback: include-first DFS keeps the same tie rule.
void knapsack_enumerate(const std::vector<PricingItem>& items, const Rational& capacity, int idx,
                        Rational used, Rational value, std::vector<int>& current,
                        Rational& best_value, std::vector<int>& best_set, bool& have_best) {
    if (idx == static_cast<int>(items.size())) {
        if (!have_best || value > best_value) {
            best_value = value;
            best_set = current;
            have_best = true;
        }
        return;
    }
    if (used + items[idx].time <= capacity) {
        current.push_back(items[idx].job);
        knapsack_enumerate(items, capacity, idx + 1, used + items[idx].time,
                           value + items[idx].value, current, best_value, best_set, have_best);
        current.pop_back();
    }
    knapsack_enumerate(items, capacity, idx + 1, used, value, current, best_value, best_set,
                       have_best);
}

constexpr std::int64_t kMaxScaledCapacity = 1'000'000;
constexpr int kMaxEnumerationItems = 25;

// Best job set for the given duals among subsets of `items` fitting
// `capacity`.  Exact; respects the include-lower-index tie rule.
std::pair<std::vector<int>, Rational> best_pricing_set(const std::vector<PricingItem>& items,
                                                       const Rational& capacity) {
    if (items.empty()) return {{}, Rational(0)};

    // Clear denominators: scale by the lcm of the item times and capacity.
    BigInt scale = denominator(capacity);
    for (const auto& item : items)
        scale = scale / gcd(scale, denominator(item.time)) * denominator(item.time);
    const Rational scale_q(scale, 1);
    const Rational scaled_cap = capacity * scale_q;
    if (numerator(scaled_cap) <= kMaxScaledCapacity) {
        std::vector<std::int64_t> weights;
        weights.reserve(items.size());
        for (const auto& item : items) {
            const Rational scaled = item.time * scale_q;
            weights.push_back(static_cast<std::int64_t>(numerator(scaled)));
        }
        Rational best_value;
        auto set = knapsack_exact(items, weights, static_cast<std::int64_t>(numerator(scaled_cap)),
                                  best_value);
        return {std::move(set), std::move(best_value)};
    }

    if (static_cast<int>(items.size()) > kMaxEnumerationItems)
        throw BudgetExceeded("pricing knapsack too large for exact treatment");
    Rational best_value;
    std::vector<int> best_set, current;
    bool have_best = false;
    knapsack_enumerate(items, capacity, 0, Rational(0), Rational(0), current, best_value, best_set,
                       have_best);
    return {std::move(best_set), std::move(best_value)};
}

std::vector<PricingItem> pricing_items(const Instance& instance, int machine,
                                       const VectorXq& job_duals, const Rational& max_time) {
    std::vector<PricingItem> items;
    for (int j = 0; j < instance.jobs(); ++j) {
        if (!instance.finite(machine, j)) continue;
        const Rational& t = instance.time(machine, j);
        if (t > max_time) continue;
        if (job_duals(j) <= 0) continue; // never helps the maximum
        items.push_back({j, t, job_duals(j)});
    }
    return items;
}

} // namespace

std::optional<Configuration> price_column(const Instance& instance, int machine,
                                          const VectorXq& job_duals, const Rational& machine_dual,
                                          const Rational& target) {
    const auto items = pricing_items(instance, machine, job_duals, target);
    auto [jobs, value] = best_pricing_set(items, target);
    if (jobs.empty()) return std::nullopt;
    if (machine_dual + value <= 0) return std::nullopt;
    return Configuration{machine, std::move(jobs)};
}

namespace {

// Relaxed pricing: scaled-down integer weights so that every set of true
// load <= T stays representable while any produced set has true load at
// most (1+eps)T.
std::optional<Configuration> price_column_relaxed(const Instance& instance, int machine,
                                                  const VectorXq& job_duals,
                                                  const Rational& machine_dual,
                                                  const Rational& target, const Rational& eps) {
    const auto items = pricing_items(instance, machine, job_duals, (1 + eps) * target);
    if (items.empty()) return std::nullopt;
    const Rational delta = eps * target / static_cast<int>(items.size());
    const BigInt cap = floor_multiple(target, delta);

    std::vector<std::int64_t> weights;
    weights.reserve(items.size());
    for (const auto& item : items)
        weights.push_back(static_cast<std::int64_t>(floor_multiple(item.time, delta)));
    Rational value;
    auto jobs = knapsack_exact(items, weights, static_cast<std::int64_t>(cap), value);
    if (jobs.empty()) return std::nullopt;
    if (machine_dual + value <= 0) return std::nullopt;
    return Configuration{machine, std::move(jobs)};
}

Rational configuration_load(const Instance& instance, const Configuration& config) {
    Rational total = 0;
    for (int j : config.jobs) total += instance.time(config.machine, j);
    return total;
}

// Restricted master: one variable per generated column, machine-convexity
// and job-coverage rows, solved from scratch per round (desk scale).
struct Master {
    const Instance& instance;
    std::vector<Configuration> columns;

    explicit Master(const Instance& inst) : instance(inst) {
        for (int i = 0; i < inst.machines(); ++i) columns.push_back({i, {}});
    }

    SimplexResult solve() const {
        LinearProgram lp(static_cast<int>(columns.size()));
        const int m = instance.machines();
        std::vector<std::vector<std::pair<int, Rational>>> machine_rows(m),
            job_rows(instance.jobs());
        for (int c = 0; c < static_cast<int>(columns.size()); ++c) {
            machine_rows[columns[c].machine].emplace_back(c, Rational(1));
            for (int j : columns[c].jobs) job_rows[j].emplace_back(c, Rational(1));
        }
        for (auto& row : machine_rows) lp.add_row(std::move(row), Relation::Equal, Rational(1));
        for (auto& row : job_rows) lp.add_row(std::move(row), Relation::Equal, Rational(1));
        return solve_feasibility(lp);
    }

    ConfigSolution extract(const SimplexResult& solved, Rational target) const {
        ConfigSolution y;
        y.target = std::move(target);
        for (int c = 0; c < static_cast<int>(columns.size()); ++c)
            if (solved.point(c) != 0) y.add(columns[c], solved.point(c));
        y.normalize();
        return y;
    }
};

} // namespace

ConfigLpOutcome config_lp_feasible(const Instance& instance, const Rational& target,
                                   ConfigMode mode, const Rational& epsilon) {
    if (target <= 0) throw std::invalid_argument("target makespan must be positive");
    if (mode == ConfigMode::Relaxed && epsilon <= 0)
        throw std::invalid_argument("epsilon must be positive");

    Master master(instance);
    std::map<Configuration, bool> known;
    for (const auto& c : master.columns) known[c] = true;

    while (true) {
        const SimplexResult solved = master.solve();
        if (solved.status == SimplexResult::Status::Feasible) {
            ConfigLpOutcome out;
            out.status = ConfigLpOutcome::Status::Feasible;
            out.solution = master.extract(
                solved, mode == ConfigMode::Exact ? target : (1 + epsilon) * target);
            return out;
        }

        VectorXq job_duals(instance.jobs());
        for (int j = 0; j < instance.jobs(); ++j)
            job_duals(j) = solved.row_duals(instance.machines() + j);

        bool improved = false;
        for (int i = 0; i < instance.machines(); ++i) {
            const Rational machine_dual = solved.row_duals(i);
            std::optional<Configuration> column =
                mode == ConfigMode::Exact
                    ? price_column(instance, i, job_duals, machine_dual, target)
                    : price_column_relaxed(instance, i, job_duals, machine_dual, target, epsilon);
            if (!column) continue;
            if (known[*column])
                throw std::logic_error("pricing returned an existing column");
            known[*column] = true;
            master.columns.push_back(std::move(*column));
            improved = true;
        }
        if (!improved) return {}; // no column in the full space helps: infeasible
    }
}

FractionalAssignment project_to_assignment(const Instance& instance, const ConfigSolution& y) {
    FractionalAssignment out;
    out.x = MatrixXq::Zero(instance.machines(), instance.jobs());
    for (const auto& [config, weight] : y.entries)
        for (int j : config.jobs) out.x(config.machine, j) += weight;
    return out;
}

namespace {

std::optional<std::string> verify_weights(const Instance& instance, const ConfigSolution& y,
                                          const VectorXq& coverage_targets,
                                          const Rational& target) {
    std::ostringstream msg;
    // Structural sanity first so later sums are well-defined.
    for (const auto& [config, weight] : y.entries) {
        if (config.machine < 0 || config.machine >= instance.machines()) {
            msg << "configuration references machine " << config.machine;
            return msg.str();
        }
        int prev = -1;
        for (int j : config.jobs) {
            if (j < 0 || j >= instance.jobs() || j <= prev) {
                msg << "machine " << config.machine
                    << ": configuration job list not sorted/unique/in range";
                return msg.str();
            }
            if (!instance.finite(config.machine, j)) {
                msg << "machine " << config.machine << ": job " << j
                    << " has infinite time but appears in a configuration";
                return msg.str();
            }
            prev = j;
        }
    }
    for (const auto& [config, weight] : y.entries) {
        if (weight < 0) {
            msg << "machine " << config.machine << ": negative weight " << weight;
            return msg.str();
        }
    }
    VectorXq machine_sum = VectorXq::Zero(instance.machines());
    for (const auto& [config, weight] : y.entries) machine_sum(config.machine) += weight;
    for (int i = 0; i < instance.machines(); ++i) {
        if (machine_sum(i) != 1) {
            msg << "machine " << i << ": configuration weights sum to " << machine_sum(i)
                << ", expected 1";
            return msg.str();
        }
    }
    VectorXq coverage = VectorXq::Zero(instance.jobs());
    for (const auto& [config, weight] : y.entries)
        for (int j : config.jobs) coverage(j) += weight;
    for (int j = 0; j < instance.jobs(); ++j) {
        if (coverage(j) != coverage_targets(j)) {
            msg << "job " << j << ": coverage " << coverage(j) << ", expected "
                << coverage_targets(j);
            return msg.str();
        }
    }
    for (const auto& [config, weight] : y.entries) {
        if (weight == 0) continue;
        const Rational load = configuration_load(instance, config);
        if (load > target) {
            msg << "machine " << config.machine << ": configuration load " << load
                << " exceeds target " << target;
            return msg.str();
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<std::string> verify_config_solution(const Instance& instance,
                                                  const ConfigSolution& y,
                                                  const Rational& target) {
    return verify_weights(instance, y, VectorXq::Ones(instance.jobs()), target);
}

std::optional<std::string> verify_partial_config_solution(const Instance& instance,
                                                          const PartialConfigSolution& y,
                                                          const Rational& target) {
    if (y.coverage.size() != instance.jobs())
        return "coverage target vector has wrong length";
    for (int j = 0; j < instance.jobs(); ++j)
        if (y.coverage(j) < 0 || y.coverage(j) > 1)
            return "coverage target outside [0,1] for job " + std::to_string(j);
    return verify_weights(instance, y.solution, y.coverage, target);
}

std::optional<std::string> projected_lst_violation(const Instance& instance,
                                                   const ConfigSolution& y) {
    std::ostringstream msg;
    VectorXq coverage = VectorXq::Zero(instance.jobs());
    VectorXq loads = VectorXq::Zero(instance.machines());
    for (const auto& [config, weight] : y.entries) {
        for (int j : config.jobs) {
            if (!instance.finite(config.machine, j))
                return "weight on an infinite cell";
            const Rational& t = instance.time(config.machine, j);
            if (weight != 0 && t > y.target) {
                msg << "x(" << config.machine << "," << j << ") > 0 but p exceeds target";
                return msg.str();
            }
            coverage(j) += weight;
            loads(config.machine) += weight * t;
        }
    }
    for (int j = 0; j < instance.jobs(); ++j)
        if (coverage(j) != 1) {
            msg << "projected coverage of job " << j << " is " << coverage(j);
            return msg.str();
        }
    for (int i = 0; i < instance.machines(); ++i)
        if (loads(i) > y.target) {
            msg << "projected load of machine " << i << " is " << loads(i) << " > target";
            return msg.str();
        }
    return std::nullopt;
}

namespace {

void enumerate_configs(const Instance& instance, int machine, const Rational& target,
                       std::int64_t max_columns, std::vector<int>& eligible, size_t idx,
                       std::vector<int>& current, Rational used,
                       std::vector<Configuration>& out) {
    if (static_cast<std::int64_t>(out.size()) > max_columns)
        throw BudgetExceeded("configuration enumeration exceeds the column budget");
    out.push_back({machine, current});
    for (size_t t = idx; t < eligible.size(); ++t) {
        const int j = eligible[t];
        const Rational& time = instance.time(machine, j);
        if (used + time > target) continue;
        current.push_back(j);
        enumerate_configs(instance, machine, target, max_columns, eligible, t + 1, current,
                          used + time, out);
        current.pop_back();
    }
}

} // namespace

ConfigLpOutcome config_lp_feasible_enumerated(const Instance& instance, const Rational& target,
                                              std::int64_t max_columns) {
    std::vector<Configuration> columns;
    for (int i = 0; i < instance.machines(); ++i) {
        std::vector<int> eligible;
        for (int j = 0; j < instance.jobs(); ++j)
            if (instance.finite(i, j) && instance.time(i, j) <= target) eligible.push_back(j);
        std::vector<int> current;
        enumerate_configs(instance, i, target, max_columns, eligible, 0, current, Rational(0),
                          columns);
    }

    LinearProgram lp(static_cast<int>(columns.size()));
    std::vector<std::vector<std::pair<int, Rational>>> machine_rows(instance.machines()),
        job_rows(instance.jobs());
    for (int c = 0; c < static_cast<int>(columns.size()); ++c) {
        machine_rows[columns[c].machine].emplace_back(c, Rational(1));
        for (int j : columns[c].jobs) job_rows[j].emplace_back(c, Rational(1));
    }
    for (auto& row : machine_rows) lp.add_row(std::move(row), Relation::Equal, Rational(1));
    for (auto& row : job_rows) lp.add_row(std::move(row), Relation::Equal, Rational(1));

    const SimplexResult solved = solve_feasibility(lp);
    ConfigLpOutcome out;
    if (solved.status != SimplexResult::Status::Feasible) return out;
    out.status = ConfigLpOutcome::Status::Feasible;
    out.solution.target = target;
    for (int c = 0; c < static_cast<int>(columns.size()); ++c)
        if (solved.point(c) != 0) out.solution.add(columns[c], solved.point(c));
    out.solution.normalize();
    return out;
}

std::string serialize_config_solution(const ConfigSolution& y) {
    ConfigSolution sorted = y;
    sorted.normalize();
    std::ostringstream out;
    out << "config-solution 1\n";
    out << "target " << format_rational(sorted.target) << "\n";
    for (const auto& [config, weight] : sorted.entries) {
        out << "y " << config.machine << " " << format_rational(weight) << " ";
        if (config.jobs.empty()) out << "-";
        else {
            for (size_t t = 0; t < config.jobs.size(); ++t) {
                if (t) out << ",";
                out << config.jobs[t];
            }
        }
        out << "\n";
    }
    return out.str();
}

namespace {

bool blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

ConfigSolution parse_config_solution(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            if (!blank_or_comment(out)) return true;
        }
        return false;
    };

    if (!next(line) || line != "config-solution 1")
        throw ParseError(lineno == 0 ? 1 : lineno, "expected header 'config-solution 1'");
    if (!next(line)) throw ParseError(lineno + 1, "expected 'target <T>'");
    ConfigSolution y;
    {
        std::istringstream ss(line);
        std::string word, value;
        if (!(ss >> word >> value) || word != "target")
            throw ParseError(lineno, "expected 'target <T>'");
        try {
            y.target = parse_rational(value);
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
    }
    while (next(line)) {
        std::istringstream ss(line);
        std::string word, weight_text, jobs_text;
        int machine = -1;
        if (!(ss >> word >> machine >> weight_text >> jobs_text) || word != "y")
            throw ParseError(lineno, "expected 'y <machine> <weight> <jobs>'");
        Configuration config;
        config.machine = machine;
        if (jobs_text != "-") {
            std::istringstream js(jobs_text);
            std::string tok;
            while (std::getline(js, tok, ',')) {
                try {
                    size_t used = 0;
                    config.jobs.push_back(std::stoi(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw ParseError(lineno, "malformed job list");
                }
            }
            if (config.jobs.empty()) throw ParseError(lineno, "malformed job list");
        }
        try {
            y.add(std::move(config), parse_rational(weight_text));
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    y.normalize();
    return y;
}

ConfigSolution parse_config_solution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open certificate file: " + path);
    return parse_config_solution(in);
}

} // namespace schedlab
