#include "schedlab/instance.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "schedlab/errors.hpp"

namespace schedlab {

ProcessingTime ProcessingTime::finite(Rational value) {
    if (value <= 0) throw std::invalid_argument("finite processing times must be positive");
    ProcessingTime t;
    t.finite_ = true;
    t.value_ = std::move(value);
    return t;
}

const Rational& ProcessingTime::value() const {
    if (!finite_) throw std::logic_error("arithmetic with an infinite processing time");
    return value_;
}

Instance::Instance(int machines, int jobs, std::vector<std::vector<Entry>> rows)
    : machine_count_(machines), job_count_(jobs), rows_(std::move(rows)) {
    if (machines <= 0) throw std::invalid_argument("machine count must be positive");
    if (jobs <= 0) throw std::invalid_argument("job count must be positive");
    if (static_cast<int>(rows_.size()) != jobs)
        throw std::invalid_argument("expected one entry row per job");
    for (int j = 0; j < job_count_; ++j) {
        auto& row = rows_[j];
        if (row.empty())
            throw std::invalid_argument("job " + std::to_string(j) +
                                        " has no machine with finite processing time");
        std::sort(row.begin(), row.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        int prev = -1;
        for (const auto& [machine, time] : row) {
            if (machine < 0 || machine >= machine_count_)
                throw std::invalid_argument("machine index out of range for job " +
                                            std::to_string(j));
            if (machine == prev)
                throw std::invalid_argument("duplicate machine entry for job " +
                                            std::to_string(j));
            if (time <= 0)
                throw std::invalid_argument("nonpositive processing time for job " +
                                            std::to_string(j));
            prev = machine;
        }
    }
}

ProcessingTime Instance::p(int machine, int job) const {
    const Rational* t = nullptr;
    for (const auto& [i, time] : rows_[job]) {
        if (i == machine) { t = &time; break; }
        if (i > machine) break;
    }
    return t ? ProcessingTime::finite(*t) : ProcessingTime::infinite();
}

bool Instance::finite(int machine, int job) const {
    for (const auto& [i, time] : rows_[job]) {
        if (i == machine) return true;
        if (i > machine) break;
    }
    return false;
}

const Rational& Instance::time(int machine, int job) const {
    for (const auto& [i, time] : rows_[job]) {
        if (i == machine) return time;
        if (i > machine) break;
    }
    throw std::logic_error("arithmetic with an infinite processing time");
}

Rational Instance::finite_gcd() const {
    Rational g = 0;
    for (const auto& row : rows_)
        for (const auto& [i, time] : row) g = rational_gcd(g, time);
    return g;
}

Rational Instance::max_finite() const {
    Rational best = 0;
    for (const auto& row : rows_)
        for (const auto& [i, time] : row) best = std::max(best, time);
    return best;
}

Rational Instance::min_time(int job) const {
    const auto& row = rows_[job];
    Rational best = row.front().second;
    for (const auto& [i, time] : row) best = std::min(best, time);
    return best;
}

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// Pulls the next significant line; returns false at EOF.
bool next_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!is_blank_or_comment(line)) return true;
    }
    return false;
}

int parse_count(const std::string& line, const std::string& keyword, int lineno) {
    std::istringstream ss(line);
    std::string word;
    long long value = -1;
    if (!(ss >> word >> value) || word != keyword)
        throw ParseError(lineno, "expected '" + keyword + " <count>'");
    std::string rest;
    if (ss >> rest) throw ParseError(lineno, "trailing tokens after '" + keyword + "'");
    if (value <= 0 || value > (1 << 30)) throw ParseError(lineno, "count out of range");
    return static_cast<int>(value);
}

} // namespace

Instance parse_instance(std::istream& in) {
    std::string line;
    int lineno = 0;

    if (!next_line(in, line, lineno) || line != "schedlab-instance 1")
        throw ParseError(lineno == 0 ? 1 : lineno, "expected header 'schedlab-instance 1'");
    if (!next_line(in, line, lineno)) throw ParseError(lineno + 1, "expected 'machines <m>'");
    const int machines = parse_count(line, "machines", lineno);
    if (!next_line(in, line, lineno)) throw ParseError(lineno + 1, "expected 'jobs <n>'");
    const int jobs = parse_count(line, "jobs", lineno);

    std::vector<std::vector<Instance::Entry>> rows(jobs);
    std::vector<bool> seen(jobs, false);
    for (int count = 0; count < jobs; ++count) {
        if (!next_line(in, line, lineno))
            throw ParseError(lineno + 1, "expected " + std::to_string(jobs) +
                                             " 'job' lines, got " + std::to_string(count));
        std::istringstream ss(line);
        std::string word;
        long long j = -1;
        if (!(ss >> word >> j) || word != "job")
            throw ParseError(lineno, "expected 'job <j> <i>:<p> ...'");
        if (j < 0 || j >= jobs) throw ParseError(lineno, "job index out of range");
        if (seen[j]) throw ParseError(lineno, "duplicate job line for job " + std::to_string(j));
        seen[j] = true;

        std::string token;
        while (ss >> token) {
            const auto colon = token.find(':');
            if (colon == std::string::npos)
                throw ParseError(lineno, "expected '<machine>:<time>', got '" + token + "'");
            int machine = -1;
            try {
                size_t used = 0;
                machine = std::stoi(token.substr(0, colon), &used);
                if (used != colon) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(lineno, "malformed machine index in '" + token + "'");
            }
            if (machine < 0 || machine >= machines)
                throw ParseError(lineno, "machine index out of range in '" + token + "'");
            Rational time;
            try {
                time = parse_rational(token.substr(colon + 1));
            } catch (const std::exception& e) {
                throw ParseError(lineno, std::string(e.what()));
            }
            if (time <= 0) throw ParseError(lineno, "processing time must be positive");
            rows[j].emplace_back(machine, std::move(time));
        }
        if (rows[j].empty())
            throw ParseError(lineno, "job " + std::to_string(j) + " has no finite entry");
        for (size_t a = 0; a + 1 < rows[j].size(); ++a)
            for (size_t b = a + 1; b < rows[j].size(); ++b)
                if (rows[j][a].first == rows[j][b].first)
                    throw ParseError(lineno, "duplicate machine entry in job line");
    }

    if (next_line(in, line, lineno)) throw ParseError(lineno, "unexpected trailing line");
    try {
        return Instance(machines, jobs, std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }
}

Instance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return parse_instance(in);
}

std::string serialize_instance(const Instance& instance) {
    std::ostringstream out;
    out << "schedlab-instance 1\n";
    out << "machines " << instance.machines() << "\n";
    out << "jobs " << instance.jobs() << "\n";
    for (int j = 0; j < instance.jobs(); ++j) {
        out << "job " << j;
        for (const auto& [machine, time] : instance.eligible(j))
            out << " " << machine << ":" << format_rational(time);
        out << "\n";
    }
    return out.str();
}

bool operator==(const Instance& a, const Instance& b) {
    if (a.machines() != b.machines() || a.jobs() != b.jobs()) return false;
    for (int j = 0; j < a.jobs(); ++j) {
        auto ra = a.eligible(j), rb = b.eligible(j);
        if (ra.size() != rb.size()) return false;
        for (size_t t = 0; t < ra.size(); ++t)
            if (ra[t] != rb[t]) return false;
    }
    return true;
}

} // namespace schedlab
