#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "schedlab/rational.hpp"

namespace schedlab {

/// A processing time: a strictly positive rational, or infinite
/// (job not runnable on that machine).  Infinity is a distinct symbol;
/// asking for the value of an infinite time is a contract violation.
class ProcessingTime {
public:
    static ProcessingTime infinite() { return ProcessingTime(); }
    static ProcessingTime finite(Rational value);

    bool is_finite() const { return finite_; }
    const Rational& value() const; // throws std::logic_error if infinite

    /// Comparison against a finite bound; infinity exceeds everything.
    bool exceeds(const Rational& bound) const { return !finite_ || value_ > bound; }

private:
    ProcessingTime() = default;
    bool finite_ = false;
    Rational value_;
};

/// A scheduling instance on unrelated machines: m machines, n jobs,
/// processing times p(i, j) in Q+ extended with infinity.  Stored sparsely
/// as per-job lists of finite (machine, time) entries; unlisted pairs are
/// infinite.  Immutable after construction.
class Instance {
public:
    using Entry = std::pair<int, Rational>; // (machine, finite time)

    /// rows[j] lists job j's finite entries. Validates: indices in range,
    /// entries strictly positive, no duplicates, every job has at least one
    /// finite entry (otherwise no feasible schedule exists).
    Instance(int machines, int jobs, std::vector<std::vector<Entry>> rows);

    int machines() const { return machine_count_; }
    int jobs() const { return job_count_; }

    ProcessingTime p(int machine, int job) const;
    bool finite(int machine, int job) const;
    /// Finite time at (machine, job); throws std::logic_error on infinite cells.
    const Rational& time(int machine, int job) const;

    /// Job j's finite entries, sorted by machine index.
    std::span<const Entry> eligible(int job) const {
        return {rows_[job].data(), rows_[job].size()};
    }

    /// gcd over all finite processing times.
    Rational finite_gcd() const;
    /// max over all finite processing times.
    Rational max_finite() const;
    /// min over job j of its finite times.
    Rational min_time(int job) const;

private:
    int machine_count_ = 0;
    int job_count_ = 0;
    std::vector<std::vector<Entry>> rows_;
};

/// Reads the line-based instance format:
///   schedlab-instance 1
///   machines <m>
///   jobs <n>
///   job <j> <i1>:<p1> <i2>:<p2> ...
/// '#' starts a comment line.  Throws ParseError with a line number.
Instance parse_instance(std::istream& in);
Instance parse_instance_file(const std::string& path);

/// Canonical serialization: jobs in increasing index, machines per job in
/// increasing index, rationals in lowest terms.  Reparsing reproduces the
/// bytes exactly.
std::string serialize_instance(const Instance& instance);

bool operator==(const Instance& a, const Instance& b);

} // namespace schedlab
