#include "schedlab/gaplab.hpp"

#include <sstream>

#include "schedlab/errors.hpp"
#include "schedlab/oracle.hpp"

namespace schedlab {

std::vector<Rational> alpha_schedule(int k, int height) {
    std::vector<Rational> alpha(height + 1);
    alpha[0] = 0; // unused
    if (height >= 1) alpha[1] = Rational(1, k - 1);
    for (int h = 2; h <= height; ++h) alpha[h] = alpha[h - 1] * Rational(k, k - 1);
    return alpha;
}

int alpha_height(int k) {
    Rational a(1, k - 1);
    int n = 1;
    const Rational half(1, 2);
    while (a < half) {
        a *= Rational(k, k - 1);
        ++n;
    }
    return n;
}

BigInt gap_machine_count(int k, int height) {
    BigInt pow = 1, vertices = 0;
    for (int d = 0; d < height; ++d) { // depths 0..N-1 of the k-ary tree
        vertices += pow;
        pow *= k;
    }
    const BigInt leaves = pow / k; // k^(N-1)
    return 2 * (vertices + leaves);
}

BigInt gap_job_count(int k, int height) {
    BigInt pow = 1, vertices = 0;
    for (int d = 0; d < height; ++d) {
        vertices += pow;
        pow *= k;
    }
    const BigInt tree_edges = vertices - 1;
    const BigInt parallel = pow; // k * k^(N-1)
    return 2 * (tree_edges + parallel) + 1;
}

namespace {

struct GapBuilder {
    int k;
    int N;
    std::vector<std::vector<Instance::Entry>> rows; // per job
    std::vector<GapMachine> topology;

    int add_machine(TreeRole role, int tree, int height) {
        topology.push_back({role, tree, height, -1, {}, -1});
        return static_cast<int>(topology.size()) - 1;
    }

    int add_job() {
        rows.emplace_back();
        return static_cast<int>(rows.size()) - 1;
    }

    // Edge job: time 1 on the machine closer to the root, k on the lower one.
    int add_edge(int upper, int lower) {
        const int j = add_job();
        rows[j].emplace_back(upper, Rational(1));
        rows[j].emplace_back(lower, Rational(k));
        return j;
    }

    TreeRole role_for_height(int height) const {
        if (height == N) return TreeRole::Root;
        if (height == 1) return TreeRole::PreLeaf;
        return TreeRole::Internal;
    }

    int build_vertex(int tree, int depth) {
        const int height = N - depth;
        const int id = add_machine(role_for_height(height), tree, height);
        if (height == 1) {
            const int partner = add_machine(TreeRole::DoubledLeaf, tree, 0);
            topology[id].partner = partner;
            topology[partner].partner = id;
            for (int l = 0; l < k; ++l)
                topology[id].child_jobs.push_back(add_edge(id, partner));
        } else {
            for (int c = 0; c < k; ++c) {
                const int child = build_vertex(tree, depth + 1);
                const int j = add_edge(id, child);
                topology[id].child_jobs.push_back(j);
                topology[child].parent_job = j;
            }
        }
        return id;
    }
};

} // namespace

GapInstance generate_gap_instance(int k, bool allow_small_k, std::int64_t max_machines) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (k < 4 && !allow_small_k)
        throw std::invalid_argument("k in {2, 3} is degenerate; pass allow_small_k to build it");

    const int N = alpha_height(k);
    const BigInt machine_count = gap_machine_count(k, N);
    if (machine_count > max_machines) {
        std::ostringstream msg;
        msg << "family member k=" << k << " needs " << machine_count << " machines (height "
            << N << "), beyond the construction limit of " << max_machines;
        throw BudgetExceeded(msg.str());
    }

    GapBuilder builder{k, N, {}, {}};
    const int r0 = builder.build_vertex(0, 0);
    const int r1 = builder.build_vertex(1, 0);
    const int big = builder.add_job();
    builder.rows[big].emplace_back(r0, Rational(k));
    builder.rows[big].emplace_back(r1, Rational(k));
    builder.topology[r0].parent_job = big;
    builder.topology[r1].parent_job = big;

    GapInstance g{k,
                  N,
                  Instance(static_cast<int>(builder.topology.size()),
                           static_cast<int>(builder.rows.size()), std::move(builder.rows)),
                  std::move(builder.topology),
                  big,
                  {r0, r1},
                  alpha_schedule(k, N)};

    if (BigInt(g.instance.machines()) != machine_count ||
        BigInt(g.instance.jobs()) != gap_job_count(k, N))
        throw std::logic_error("gap construction does not match its closed-form counts");
    return g;
}

ConfigSolution build_certificate(const GapInstance& g) {
    const int k = g.k;
    const Rational half(1, 2);
    ConfigSolution y;
    y.target = k + 1;

    auto add_checked = [&](Configuration config, Rational weight) {
        if (weight < 0)
            throw CertificateInvalid("derived a negative configuration weight");
        if (weight == 0) return;
        y.add(std::move(config), std::move(weight));
    };

    for (int id = 0; id < g.instance.machines(); ++id) {
        const GapMachine& machine = g.topology[id];
        switch (machine.role) {
        case TreeRole::DoubledLeaf: {
            for (int j : g.topology[machine.partner].child_jobs)
                add_checked({id, {j}}, Rational(1, k));
            break;
        }
        case TreeRole::PreLeaf:
        case TreeRole::Internal: {
            const Rational& a = g.alpha[machine.height];
            add_checked({id, machine.child_jobs}, 1 - a);
            for (int j : machine.child_jobs)
                add_checked({id, {j, machine.parent_job}}, a / k);
            break;
        }
        case TreeRole::Root: {
            const Rational& a = g.alpha[g.N];
            add_checked({id, machine.child_jobs}, 1 - a);
            for (int j : machine.child_jobs) {
                add_checked({id, {j, g.big_job}}, Rational(1, 2 * k));
                add_checked({id, {j}}, (a - half) / k);
            }
            break;
        }
        }
    }
    y.normalize();
    return y;
}

LowerBoundCheck integral_lower_bound_check(const GapInstance& g, const IntegralAssignment& a) {
    LowerBoundCheck check;
    check.loads = machine_loads(g.instance, a);
    check.ok = makespan(check.loads) >= 2 * g.k - 1;
    return check;
}

std::vector<GapReportRow> gap_report(const std::vector<int>& ks, std::int64_t max_machines) {
    std::vector<GapReportRow> rows;
    for (int k : ks) {
        if (k < 2) throw std::invalid_argument("k must be at least 2");
        GapReportRow row{k, Rational(k + 1), Rational(2 * k - 1),
                         Rational(2 * k - 1, k + 1)};

        const int N = alpha_height(k);
        if (gap_machine_count(k, N) <= max_machines) {
            const GapInstance g = generate_gap_instance(k, /*allow_small_k=*/true, max_machines);
            const ConfigSolution certificate = build_certificate(g);
            if (auto violation = verify_config_solution(g.instance, certificate, row.fractional_target))
                throw CertificateInvalid("certificate for k=" + std::to_string(k) +
                                         " failed verification: " + *violation);
            if (k <= 3) {
                const OracleResult exact = brute_force(g.instance, Objective::Makespan);
                if (exact.optimum < row.integral_bound)
                    throw std::logic_error("oracle contradicts the integral lower bound");
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string gap_report_tsv(const std::vector<GapReportRow>& rows) {
    std::ostringstream out;
    out << "k\tT_frac\tLB_int\tratio\n";
    for (const auto& row : rows)
        out << row.k << "\t" << format_rational(row.fractional_target) << "\t"
            << format_rational(row.integral_bound) << "\t" << format_rational(row.ratio) << "\n";
    return out.str();
}

int verify_certificate_symbolically(int k) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    const int N = alpha_height(k);
    const std::vector<Rational> alpha = alpha_schedule(k, N);
    const Rational half(1, 2), one(1), target(k + 1);

    auto fail = [](const std::string& what) { throw CertificateInvalid(what); };

    if (alpha[N] < half || (N > 1 && alpha[N - 1] >= half)) fail("height N is not minimal");
    if (alpha[N] > 1) fail("coverage schedule exceeds 1");

    // Doubled leaves: k singletons of weight 1/k, load k each.
    if (Rational(k) * Rational(1, k) != one) fail("doubled-leaf weights do not sum to 1");
    if (Rational(k) > target) fail("doubled-leaf configuration exceeds the target");

    // Heights 1..N-1: small configuration (k unit jobs) and k big pairs.
    for (int h = 1; h < N; ++h) {
        const Rational w_small = one - alpha[h];
        const Rational w_big = alpha[h] / k;
        if (w_small < 0 || w_big < 0) fail("negative interior weight");
        if (w_small + Rational(k) * w_big != one) fail("interior weights do not sum to 1");
        const Rational below = h == 1 ? Rational(1, k) : alpha[h - 1];
        if (below + w_small + w_big != one) fail("interior child coverage is not 1");
        if (Rational(k) * w_big != alpha[h]) fail("parent coverage does not match the schedule");
        if (Rational(k) > target || Rational(k + 1) > target)
            fail("interior configuration exceeds the target");
    }

    // Roots: big pairs pinned to total 1/2, surplus on singletons.
    const Rational w_small = one - alpha[N];
    const Rational w_big(1, 2 * k);
    const Rational w_single = (alpha[N] - half) / k;
    if (w_small < 0 || w_single < 0) fail("negative root weight");
    if (w_small + Rational(k) * (w_big + w_single) != one) fail("root weights do not sum to 1");
    const Rational below = N == 1 ? Rational(1, k) : alpha[N - 1];
    if (below + w_small + w_big + w_single != one) fail("root child coverage is not 1");
    if (Rational(2) * (Rational(k) * w_big) != one) fail("shared job coverage is not 1");

    return N;
}

} // namespace schedlab
