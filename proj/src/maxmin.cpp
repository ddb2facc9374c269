#include "schedlab/maxmin.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "schedlab/errors.hpp"
#include "schedlab/simplex.hpp"

namespace schedlab {

// ---- balancing state -------------------------------------------------------

BalancingState::BalancingState(const Instance& instance) : instance_(&instance) {
    machines_.resize(instance.machines());
    eligible_pair_.assign(instance.jobs(), {-1, -1});
    for (int j = 0; j < instance.jobs(); ++j) {
        const auto row = instance.eligible(j);
        if (row.size() > 2)
            throw NotBalancingInstance("job " + std::to_string(j) +
                                       " is eligible on more than two machines");
        eligible_pair_[j][0] = row[0].first;
        if (row.size() == 2) eligible_pair_[j][1] = row[1].first;
        if (row.size() == 1) {
            auto& sets = machines_[row[0].first];
            sets.b_jobs.push_back(j);
            sets.b_sum += row[0].second;
        } else {
            for (const auto& [i, t] : row) {
                machines_[i].a_jobs.insert({t, j});
                machines_[i].a_sum += t;
            }
        }
    }
}

int BalancingState::twin(int job, int machine) const {
    const auto& pair = eligible_pair_[job];
    if (pair[1] < 0) throw std::logic_error("private jobs have no twin machine");
    return pair[0] == machine ? pair[1] : pair[0];
}

int BalancingState::pin_largest(int machine) {
    auto& sets = machines_[machine];
    if (sets.a_jobs.empty()) throw std::logic_error("no flexible job to pin");
    const auto [time, job] = *sets.a_jobs.begin();
    sets.a_jobs.erase(sets.a_jobs.begin());
    sets.a_sum -= time;
    sets.b_jobs.push_back(job);
    sets.b_sum += time;

    const int other = twin(job, machine);
    auto& other_sets = machines_[other];
    const Rational other_time = instance_->time(other, job);
    other_sets.a_jobs.erase({other_time, job});
    other_sets.a_sum -= other_time;
    return job;
}

bool BalancingState::sums_consistent() const {
    for (int i = 0; i < machine_count(); ++i) {
        const auto& sets = machines_[i];
        Rational a = 0, b = 0;
        for (const auto& [t, j] : sets.a_jobs) a += t;
        for (int j : sets.b_jobs) b += instance_->time(i, j);
        if (a != sets.a_sum || b != sets.b_sum) return false;
    }
    return true;
}

// ---- decision procedure ----------------------------------------------------

std::optional<BalancingState> preassign(BalancingState state, const Rational& target) {
    std::deque<int> queue;
    for (int i = 0; i < state.machine_count(); ++i) queue.push_back(i);

    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        const auto& sets = state.sets(i);
        if (sets.a_sum + sets.b_sum < target) return std::nullopt;
        if (sets.a_prime_sum() + sets.b_sum >= target) continue;
        // Any solution of value >= target must give this machine its
        // largest flexible job; pin it and re-examine both machines.
        const int job = state.pin_largest(i);
        const int other = state.twin(job, i);
        queue.push_back(i);
        queue.push_back(other);
    }
    return state;
}

PairingGraph build_pairing_graph(const BalancingState& state) {
    PairingGraph graph;
    std::map<std::pair<int, int>, int> vertex_of; // (machine, job) -> vertex
    for (int i = 0; i < state.machine_count(); ++i) {
        int rank = 0;
        for (const auto& [t, j] : state.sets(i).a_jobs) {
            vertex_of[{i, j}] = static_cast<int>(graph.vertices.size());
            graph.vertices.push_back({i, rank, j});
            ++rank;
        }
    }
    graph.neighbors.assign(graph.vertices.size(), {-1, -1});
    for (int v = 0; v < static_cast<int>(graph.vertices.size()); ++v) {
        const auto& vertex = graph.vertices[v];
        const int other = state.twin(vertex.job, vertex.machine);
        graph.neighbors[v][0] = vertex_of.at({other, vertex.job});
    }
    // Consecutive-rank pairs (0,1), (2,3), ... per machine.
    std::map<std::pair<int, int>, int> by_rank; // (machine, rank) -> vertex
    for (int v = 0; v < static_cast<int>(graph.vertices.size()); ++v)
        by_rank[{graph.vertices[v].machine, graph.vertices[v].rank}] = v;
    for (int v = 0; v < static_cast<int>(graph.vertices.size()); ++v) {
        const auto& vertex = graph.vertices[v];
        if (vertex.rank % 2 == 0) {
            auto it = by_rank.find({vertex.machine, vertex.rank + 1});
            if (it != by_rank.end()) {
                graph.neighbors[v][1] = it->second;
                graph.neighbors[it->second][1] = v;
            }
        }
    }
    return graph;
}

std::vector<int> PairingGraph::two_coloring() const {
    std::vector<int> color(vertices.size(), -1);
    for (int start = 0; start < static_cast<int>(vertices.size()); ++start) {
        if (color[start] >= 0) continue;
        std::deque<int> queue{start};
        color[start] = 0;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int u : neighbors[v]) {
                if (u < 0) continue;
                if (color[u] < 0) {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if (color[u] == color[v]) {
                    throw std::logic_error("pairing graph is not bipartite");
                }
            }
        }
    }
    return color;
}

IntegralAssignment color_and_assign(const BalancingState& state, const PairingGraph& graph) {
    const std::vector<int> color = graph.two_coloring();
    const Instance& instance = state.instance();
    IntegralAssignment out;
    out.machine_of.assign(instance.jobs(), -1);
    for (int i = 0; i < state.machine_count(); ++i)
        for (int j : state.sets(i).b_jobs) out.machine_of[j] = i;
    for (int v = 0; v < static_cast<int>(graph.vertices.size()); ++v)
        if (color[v] == 0) out.machine_of[graph.vertices[v].job] = graph.vertices[v].machine;
    for (int j = 0; j < instance.jobs(); ++j)
        if (out.machine_of[j] < 0) throw std::logic_error("coloring left a job unassigned");
    return out;
}

DecideResult decide_T(const Instance& instance, const Rational& target) {
    if (target <= 0) throw std::invalid_argument("target must be positive");
    DecideResult result;
    auto pinned = preassign(BalancingState(instance), target);
    if (!pinned) return result; // no solution of value >= target exists
    const PairingGraph graph = build_pairing_graph(*pinned);
    result.status = DecideResult::Status::Solution;
    result.assignment = color_and_assign(*pinned, graph);
    return result;
}

namespace {

// Every job to its first eligible machine; the value-0 fallback.
IntegralAssignment first_eligible_assignment(const Instance& instance) {
    IntegralAssignment out;
    out.machine_of.resize(instance.jobs());
    for (int j = 0; j < instance.jobs(); ++j) out.machine_of[j] = instance.eligible(j)[0].first;
    return out;
}

} // namespace

MaxMinResult maxmin_balance(const Instance& instance) {
    { const BalancingState eligibility_check(instance); } // throws on 3+ machines per job

    const Rational g = instance.finite_gcd();
    Rational upper = 0;
    for (int j = 0; j < instance.jobs(); ++j) {
        Rational best = 0;
        for (const auto& [i, t] : instance.eligible(j)) best = std::max(best, t);
        upper += best;
    }

    // Invariant: any rejection certifies optimum < T, and the optimum is a
    // multiple of g, so optimum <= (k_reject - 1) g once the search ends.
    BigInt k_sol = 0, k_reject = floor_multiple(upper, g) + 1;
    std::optional<IntegralAssignment> best;
    while (k_reject - k_sol > 1) {
        const BigInt mid = k_sol + (k_reject - k_sol + 1) / 2;
        DecideResult decision = decide_T(instance, mid * g);
        if (decision.status == DecideResult::Status::Solution) {
            k_sol = mid;
            best = std::move(decision.assignment);
        } else {
            k_reject = mid;
        }
    }

    MaxMinResult result;
    result.target = k_sol * g;
    result.assignment = best ? std::move(*best) : first_eligible_assignment(instance);
    result.value = min_load(machine_loads(instance, result.assignment));
    return result;
}

// ---- half-integral algorithms ----------------------------------------------

namespace {

Rational capped(const Rational& time, const Rational& cap) { return std::min(time, cap); }

// Covering LP: per-job weights sum to 1, per-machine capped load >= target.
std::optional<MatrixXq> maxmin_lp(const Instance& instance, const Rational& target) {
    struct Var { int machine, job; };
    std::vector<Var> vars;
    std::vector<std::vector<int>> by_job(instance.jobs()), by_machine(instance.machines());
    for (int j = 0; j < instance.jobs(); ++j) {
        for (const auto& [i, t] : instance.eligible(j)) {
            by_job[j].push_back(static_cast<int>(vars.size()));
            by_machine[i].push_back(static_cast<int>(vars.size()));
            vars.push_back({i, j});
        }
    }
    LinearProgram lp(static_cast<int>(vars.size()));
    for (int j = 0; j < instance.jobs(); ++j) {
        std::vector<std::pair<int, Rational>> row;
        for (int v : by_job[j]) row.emplace_back(v, Rational(1));
        lp.add_row(std::move(row), Relation::Equal, Rational(1));
    }
    for (int i = 0; i < instance.machines(); ++i) {
        std::vector<std::pair<int, Rational>> row;
        for (int v : by_machine[i]) {
            const Rational t = capped(instance.time(i, vars[v].job), target);
            if (t != 0) row.emplace_back(v, t);
        }
        lp.add_row(std::move(row), Relation::GreaterEq, target);
    }
    const SimplexResult solved = solve_feasibility(lp);
    if (solved.status != SimplexResult::Status::Feasible) return std::nullopt;
    MatrixXq x = MatrixXq::Zero(instance.machines(), instance.jobs());
    for (int v = 0; v < static_cast<int>(vars.size()); ++v) x(vars[v].machine, vars[v].job) = solved.point(v);
    return x;
}

// Unit-capacity max flow on a tiny network, deterministic BFS augmenting.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes) : head_(nodes, -1) {}

    int add_edge(int from, int to, int capacity) {
        edges_.push_back({to, head_[from], capacity});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
        return static_cast<int>(edges_.size()) - 2;
    }

    int augment_all(int source, int sink) {
        int total = 0;
        while (augment_one(source, sink)) ++total;
        return total;
    }

    int flow_on(int edge_id) const { return edges_[edge_id ^ 1].capacity; }

private:
    struct Edge {
        int to, next, capacity;
    };

    bool augment_one(int source, int sink) {
        std::vector<int> parent_edge(head_.size(), -1);
        std::deque<int> queue{source};
        std::vector<bool> seen(head_.size(), false);
        seen[source] = true;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            if (v == sink) break;
            for (int e = head_[v]; e >= 0; e = edges_[e].next) {
                if (edges_[e].capacity <= 0 || seen[edges_[e].to]) continue;
                seen[edges_[e].to] = true;
                parent_edge[edges_[e].to] = e;
                queue.push_back(edges_[e].to);
            }
        }
        if (!seen[sink]) return false;
        for (int v = sink; v != source;) {
            const int e = parent_edge[v];
            edges_[e].capacity -= 1;
            edges_[e ^ 1].capacity += 1;
            v = edges_[e ^ 1].to;
        }
        return true;
    }

    std::vector<int> head_;
    std::vector<Edge> edges_;
};

// Rounds a fractional solution to half-integrality.  Each machine's support
// (sorted by decreasing capped time) is poured into unit slots in half-job
// units; all full slots must be filled by the integral matching, so a
// machine loses at most its first slot's worth: half its largest supported
// capped time.
HalfIntegralAssignment round_half_integral(const Instance& instance, const MatrixXq& x,
                                           const Rational& cap_target) {
    struct SlotEdge {
        int job, slot;
    };
    struct MachineSlots {
        int first_slot = 0;
        int full_slots = 0;
        bool has_partial = false;
    };

    std::vector<MachineSlots> per_machine(instance.machines());
    std::vector<int> slot_machine;
    std::vector<SlotEdge> edges;

    for (int i = 0; i < instance.machines(); ++i) {
        std::vector<int> support;
        for (int j = 0; j < instance.jobs(); ++j)
            if (x(i, j) > 0) support.push_back(j);
        std::stable_sort(support.begin(), support.end(), [&](int a, int b) {
            return capped(instance.time(i, a), cap_target) >
                   capped(instance.time(i, b), cap_target);
        });
        per_machine[i].first_slot = static_cast<int>(slot_machine.size());
        Rational room = 1;
        bool slot_open = false;
        Rational mass = 0;
        for (int j : support) {
            Rational w = 2 * x(i, j); // half-job units
            mass += w;
            while (w > 0) {
                if (!slot_open) {
                    slot_machine.push_back(i);
                    slot_open = true;
                    room = 1;
                }
                const int slot = static_cast<int>(slot_machine.size()) - 1;
                const Rational take = std::min(w, room);
                edges.push_back({j, slot});
                w -= take;
                room -= take;
                if (room == 0) slot_open = false;
            }
        }
        const BigInt full = floor_multiple(mass, Rational(1));
        per_machine[i].full_slots = static_cast<int>(full);
        per_machine[i].has_partial = Rational(full) != mass;
    }

    const int n_slots = static_cast<int>(slot_machine.size());
    const int source = 0, sink = 1;
    FlowNetwork network(2 + instance.jobs() + n_slots);
    auto job_node = [&](int j) { return 2 + j; };
    auto slot_node = [&](int s) { return 2 + instance.jobs() + s; };

    for (int j = 0; j < instance.jobs(); ++j) network.add_edge(source, job_node(j), 2);
    std::vector<int> edge_ids;
    edge_ids.reserve(edges.size());
    for (const auto& [j, s] : edges) edge_ids.push_back(network.add_edge(job_node(j), slot_node(s), 1));

    // Phase A: full slots first; they must all be saturated so that the
    // loss bound telescopes.  Phase B: open the partial slots and finish.
    int full_total = 0;
    for (int i = 0; i < instance.machines(); ++i) {
        for (int s = 0; s < per_machine[i].full_slots; ++s)
            network.add_edge(slot_node(per_machine[i].first_slot + s), sink, 1);
        full_total += per_machine[i].full_slots;
    }
    const int phase_a = network.augment_all(source, sink);
    if (phase_a != full_total) throw std::logic_error("half-integral rounding: full slots unsaturated");
    for (int i = 0; i < instance.machines(); ++i)
        if (per_machine[i].has_partial)
            network.add_edge(slot_node(per_machine[i].first_slot + per_machine[i].full_slots),
                             sink, 1);
    const int phase_b = network.augment_all(source, sink);
    if (phase_a + phase_b != 2 * instance.jobs())
        throw std::logic_error("half-integral rounding: jobs not fully placed");

    MatrixXq out = MatrixXq::Zero(instance.machines(), instance.jobs());
    for (size_t e = 0; e < edges.size(); ++e)
        if (network.flow_on(edge_ids[e]) > 0)
            out(slot_machine[edges[e].slot], edges[e].job) += Rational(1, 2);
    return HalfIntegralAssignment{std::move(out)};
}

} // namespace

HalfIntegralResult half_integral_maxmin(const Instance& instance) {
    const Rational g = instance.finite_gcd();
    Rational upper = 0;
    for (int j = 0; j < instance.jobs(); ++j) {
        Rational best = 0;
        for (const auto& [i, t] : instance.eligible(j)) best = std::max(best, t);
        upper += best;
    }

    // Largest LP-feasible multiple of g.  Feasibility is monotone: scaling a
    // feasible solution's caps shows every smaller target stays feasible.
    BigInt k_feasible = 0, k_infeasible = floor_multiple(upper / instance.machines(), g) + 1;
    std::optional<MatrixXq> best = maxmin_lp(instance, Rational(0));
    if (!best) throw std::logic_error("covering LP infeasible at target 0");
    while (k_infeasible - k_feasible > 1) {
        const BigInt mid = k_feasible + (k_infeasible - k_feasible + 1) / 2;
        auto x = maxmin_lp(instance, mid * g);
        if (x) {
            k_feasible = mid;
            best = std::move(x);
        } else {
            k_infeasible = mid;
        }
    }

    HalfIntegralResult result;
    result.target = k_feasible * g;
    result.assignment = round_half_integral(instance, *best, result.target);
    result.value = min_load(machine_loads(instance, result.assignment.x));
    return result;
}

namespace {

// ---- split-job thinning (at most floor(m/2) split jobs) --------------------

struct SplitEdge {
    int job;
    std::array<int, 2> machine;
    std::array<Rational, 2> time;
};

enum class EdgeFate { ToFirst, ToSecond, Keep };

// Exact per-component search: minimize kept-split edges subject to every
// machine retaining at least half of its half-value
//   sum(to it) + sum(kept)/2 >= sum(all incident)/4   (in full times),
// which preserves a quarter of each machine's pre-thinning guarantee.
class ComponentSearch {
public:
    ComponentSearch(const std::vector<SplitEdge>& edges, const std::vector<int>& members,
                    std::int64_t budget)
        : edges_(edges), budget_(budget) {
        for (int m : members) {
            index_of_[m] = static_cast<int>(quota_.size());
            quota_.push_back(0);
        }
        retained_.assign(quota_.size(), Rational(0));
        optimistic_.assign(quota_.size(), Rational(0));
        for (const auto& e : edges) {
            for (int side = 0; side < 2; ++side) {
                const int m = index_of_.at(e.machine[side]);
                quota_[m] += e.time[side];      // checked as retained >= quota/4
                optimistic_[m] += e.time[side]; // full value if granted everything
            }
        }
    }

    std::optional<std::vector<EdgeFate>> run(int max_keeps) {
        fates_.assign(edges_.size(), EdgeFate::Keep);
        for (int keeps = 0; keeps <= max_keeps; ++keeps) {
            nodes_ = 0;
            if (search(0, keeps)) return fates_;
        }
        return std::nullopt;
    }

private:
    bool quotas_reachable() const {
        for (size_t m = 0; m < quota_.size(); ++m)
            if (4 * (retained_[m] + optimistic_[m]) < quota_[m]) return false;
        return true;
    }

    bool search(size_t depth, int keeps_left) {
        if (++nodes_ > budget_)
            throw BudgetExceeded("split-thinning search exceeded its node budget");
        if (!quotas_reachable()) return false;
        if (depth == edges_.size()) {
            for (size_t m = 0; m < quota_.size(); ++m)
                if (4 * retained_[m] < quota_[m]) return false;
            return true;
        }
        const SplitEdge& e = edges_[depth];
        const int m0 = index_of_.at(e.machine[0]), m1 = index_of_.at(e.machine[1]);
        // Undecided edges count optimistically for both sides until placed.
        optimistic_[m0] -= e.time[0];
        optimistic_[m1] -= e.time[1];

        struct Option {
            EdgeFate fate;
            Rational gain0, gain1;
            int keep_cost;
        };
        const Option options[3] = {
            {EdgeFate::ToFirst, e.time[0], Rational(0), 0},
            {EdgeFate::ToSecond, Rational(0), e.time[1], 0},
            {EdgeFate::Keep, e.time[0] / 2, e.time[1] / 2, 1},
        };
        for (const auto& option : options) {
            if (option.keep_cost > keeps_left) continue;
            retained_[m0] += option.gain0;
            retained_[m1] += option.gain1;
            fates_[depth] = option.fate;
            if (search(depth + 1, keeps_left - option.keep_cost)) {
                optimistic_[m0] += e.time[0];
                optimistic_[m1] += e.time[1];
                return true;
            }
            retained_[m0] -= option.gain0;
            retained_[m1] -= option.gain1;
        }
        optimistic_[m0] += e.time[0];
        optimistic_[m1] += e.time[1];
        return false;
    }

    const std::vector<SplitEdge>& edges_;
    std::map<int, int> index_of_;
    std::vector<Rational> quota_;      // sum of incident full times (4x the real quota)
    std::vector<Rational> retained_;
    std::vector<Rational> optimistic_; // undecided mass still available
    std::vector<EdgeFate> fates_;
    std::int64_t budget_;
    std::int64_t nodes_ = 0;
};

} // namespace

HalfIntegralResult half_integral_sparse(const Instance& instance) {
    HalfIntegralResult base = half_integral_maxmin(instance);
    const Rational half(1, 2);

    std::vector<SplitEdge> splits;
    for (int j = 0; j < instance.jobs(); ++j) {
        std::vector<int> carriers;
        for (int i = 0; i < instance.machines(); ++i)
            if (base.assignment.x(i, j) == half) carriers.push_back(i);
        if (carriers.empty()) continue;
        if (carriers.size() != 2)
            throw std::logic_error("half weights of a job do not pair up");
        splits.push_back({j,
                          {carriers[0], carriers[1]},
                          {instance.time(carriers[0], j), instance.time(carriers[1], j)}});
    }

    // Components of the split multigraph, machine-indexed.
    std::map<int, std::vector<int>> adjacency;
    for (int e = 0; e < static_cast<int>(splits.size()); ++e) {
        adjacency[splits[e].machine[0]].push_back(e);
        adjacency[splits[e].machine[1]].push_back(e);
    }
    std::map<int, int> component;
    int component_count = 0;
    for (const auto& [m, unused] : adjacency) {
        if (component.count(m)) continue;
        std::deque<int> queue{m};
        component[m] = component_count;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int e : adjacency[v]) {
                for (int side = 0; side < 2; ++side) {
                    const int u = splits[e].machine[side];
                    if (!component.count(u)) {
                        component[u] = component_count;
                        queue.push_back(u);
                    }
                }
            }
        }
        ++component_count;
    }

    std::vector<std::vector<int>> edges_in(component_count);
    std::vector<std::vector<int>> members_in(component_count);
    for (int e = 0; e < static_cast<int>(splits.size()); ++e)
        edges_in[component.at(splits[e].machine[0])].push_back(e);
    for (const auto& [m, c] : component) members_in[c].push_back(m);

    for (int c = 0; c < component_count; ++c) {
        std::vector<SplitEdge> edges;
        for (int e : edges_in[c]) edges.push_back(splits[e]);
        const int budget_keeps = static_cast<int>(members_in[c].size()) / 2;
        ComponentSearch search(edges, members_in[c], 50'000'000);
        auto fates = search.run(budget_keeps);
        if (!fates)
            throw std::logic_error("split thinning found no resolution within the keep budget");
        for (size_t t = 0; t < edges.size(); ++t) {
            const SplitEdge& e = edges[t];
            switch ((*fates)[t]) {
            case EdgeFate::ToFirst:
                base.assignment.x(e.machine[0], e.job) = 1;
                base.assignment.x(e.machine[1], e.job) = 0;
                break;
            case EdgeFate::ToSecond:
                base.assignment.x(e.machine[0], e.job) = 0;
                base.assignment.x(e.machine[1], e.job) = 1;
                break;
            case EdgeFate::Keep:
                break;
            }
        }
    }

    base.value = min_load(machine_loads(instance, base.assignment.x));
    return base;
}

} // namespace schedlab
