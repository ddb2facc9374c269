#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "schedlab/assignment.hpp"
#include "schedlab/configlp.hpp"
#include "schedlab/instance.hpp"

namespace schedlab {

/// Thrown when certificate construction derives a negative weight.
class CertificateInvalid : public std::runtime_error {
public:
    explicit CertificateInvalid(const std::string& what) : std::runtime_error(what) {}
};

enum class TreeRole { Root, Internal, PreLeaf, DoubledLeaf };

struct GapMachine {
    TreeRole role;
    int tree;       // 0 or 1
    int height;     // doubled leaf 0, pre-leaf 1, ..., root N
    int parent_job; // edge towards the root; the shared big job at the roots; -1 for doubled leaves
    std::vector<int> child_jobs; // edges away from the root (k of them; empty for doubled leaves)
    int partner = -1;            // pre-leaf <-> doubled-leaf pairing
};

/// The hard family for unrelated graph balancing: two k-ary trees of height
/// N-1, every leaf v doubled by a vertex v' joined through k parallel edges,
/// plus one job shared by the two roots.  Vertices are machines, edges are
/// jobs; an edge costs 1 on its upper machine and k on its lower machine
/// (integer scaling of {1/k, 1} by k).  A fractional certificate exists at
/// target k+1 while every integral schedule needs makespan 2k-1.
struct GapInstance {
    int k = 0;
    int N = 0; // smallest height with alpha(N) >= 1/2
    Instance instance;
    std::vector<GapMachine> topology;
    int big_job = -1;
    std::array<int, 2> roots{-1, -1};
    std::vector<Rational> alpha; // alpha[h] for h = 1..N; alpha[0] unused
};

/// Per-height coverage schedule: alpha(1) = 1/(k-1),
/// alpha(h+1) = alpha(h) * k/(k-1).
std::vector<Rational> alpha_schedule(int k, int height);
/// Smallest N with alpha(N) >= 1/2.
int alpha_height(int k);

/// Builds the family member for k.  k >= 2 required; k in {2, 3} are
/// degenerate (N = 1) and admitted only with allow_small_k, matching their
/// use as the only oracle-checkable members.  Refuses construction past
/// max_machines (the machine count grows like k^N).
GapInstance generate_gap_instance(int k, bool allow_small_k = false,
                                  std::int64_t max_machines = 1'000'000);

/// Exact machine counts the construction must match.
BigInt gap_machine_count(int k, int height);
BigInt gap_job_count(int k, int height);

/// The explicit fractional certificate at scaled target k+1: doubled leaves
/// spread their parallel jobs uniformly, interior machines use the inductive
/// small/big weights, and the roots cover the shared job exactly 1/2 each
/// (surplus shifted from the big-pair configurations onto singletons).
ConfigSolution build_certificate(const GapInstance& g);

struct LowerBoundCheck {
    bool ok = false;      // makespan(a) >= 2k-1
    VectorXq loads;       // the machine loads, for inspection on a claim
};

/// Checks the integral lower bound 2k-1 against a concrete assignment; a
/// returned claim (ok == false) would contradict the family's guarantee.
LowerBoundCheck integral_lower_bound_check(const GapInstance& g, const IntegralAssignment& a);

struct GapReportRow {
    int k;
    Rational fractional_target; // k+1, scaled
    Rational integral_bound;    // 2k-1, scaled
    Rational ratio;             // (2k-1)/(k+1)
};

/// One row per k: fractional target, integral lower bound, their ratio.
/// For k <= 3 the bound is confirmed by the exhaustive oracle; for larger
/// materializable k the fractional side is confirmed by certificate
/// verification; beyond max_machines only the closed forms are reported.
std::vector<GapReportRow> gap_report(const std::vector<int>& ks,
                                     std::int64_t max_machines = 1'000'000);
std::string gap_report_tsv(const std::vector<GapReportRow>& rows);

/// Verifies all certificate equations by height class (every machine of a
/// class sees identical constraints), covering family members too large to
/// materialize.  Returns N; throws CertificateInvalid on any failure.
int verify_certificate_symbolically(int k);

} // namespace schedlab
