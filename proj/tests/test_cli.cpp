#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "schedlab/cli.hpp"
#include "schedlab/instance.hpp"

using namespace schedlab;

TEST_SUITE_BEGIN("cli");

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content = {}) {
        path = std::string("/tmp/schedlab_test_") + name;
        if (!content.empty()) {
            std::ofstream f(path);
            f << content;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const std::string kThreeUnitJobs = "schedlab-instance 1\n"
                                   "machines 2\n"
                                   "jobs 3\n"
                                   "job 0 0:1 1:1\n"
                                   "job 1 0:1 1:1\n"
                                   "job 2 0:1 1:1\n";

} // namespace

TEST_CASE("lstlp prints the verdict and the matrix") {
    TempFile f("three.si", kThreeUnitJobs);
    const RunResult feasible = run({"lstlp", "--instance", f.path, "--target", "3/2"});
    CHECK(feasible.code == 0);
    CHECK(feasible.out.substr(0, 9) == "feasible\n");
    CHECK(std::count(feasible.out.begin(), feasible.out.end(), '\n') == 3); // verdict + 2 rows

    const RunResult infeasible = run({"lstlp", "--instance", f.path, "--target", "1"});
    CHECK(infeasible.code == 1);
    CHECK(infeasible.out == "infeasible\n");
}

TEST_CASE("configlp exact verdicts and certificate output") {
    TempFile f("three2.si", kThreeUnitJobs);
    const RunResult no = run({"configlp", "--instance", f.path, "--target", "19/10",
                              "--mode", "exact"});
    CHECK(no.code == 1);
    CHECK(no.out == "infeasible\n");

    TempFile cert("three2.cert");
    const RunResult yes = run({"configlp", "--instance", f.path, "--target", "2", "--mode",
                               "exact", "--out", cert.path});
    CHECK(yes.code == 0);
    CHECK(yes.out == "feasible\n");
    const RunResult verify =
        run({"verify-config", "--instance", f.path, "--certificate", cert.path});
    CHECK(verify.code == 0);
    CHECK(verify.out == "ok\n");
    const RunResult project =
        run({"project", "--instance", f.path, "--certificate", cert.path});
    CHECK(project.code == 0);
}

TEST_CASE("gap-report emits the ratio table") {
    const RunResult r = run({"gap-report", "--k", "3,4,6,9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("k\tT_frac\tLB_int\tratio\n") == 0);
    CHECK(r.out.find("3\t4\t5\t5/4\n") != std::string::npos);
    CHECK(r.out.find("9\t10\t17\t17/10\n") != std::string::npos);
}

TEST_CASE("gen-gap writes instance and certificate files") {
    TempFile inst_file("gap.si"), cert_file("gap.cert");
    const RunResult r = run({"gen-gap", "--k", "3", "--allow-small-k", "--out", inst_file.path,
                             "--certificate", cert_file.path});
    CHECK(r.code == 0);
    CHECK(r.out.find("machines 4\n") != std::string::npos);
    CHECK(r.out.find("jobs 7\n") != std::string::npos);
    const Instance inst = parse_instance_file(inst_file.path);
    CHECK(inst.machines() == 4);
    const RunResult verify = run(
        {"verify-config", "--instance", inst_file.path, "--certificate", cert_file.path});
    CHECK(verify.code == 0);
}

TEST_CASE("brute and the rounding pipeline agree on exit conventions") {
    TempFile f("three3.si", kThreeUnitJobs);
    const RunResult brute = run({"brute", "--instance", f.path, "--objective", "makespan"});
    CHECK(brute.code == 0);
    CHECK(brute.out.find("optimum 2\n") == 0);

    const RunResult round = run({"round", "--instance", f.path, "--target", "3/2"});
    CHECK(round.code == 0);
    CHECK(round.out.find("makespan ") != std::string::npos);

    const RunResult approx = run({"approx-makespan", "--instance", f.path});
    CHECK(approx.code == 0);
    CHECK(approx.out.find("target ") == 0);
}

TEST_CASE("maxmin subcommands") {
    TempFile f("bal.si", "schedlab-instance 1\n"
                         "machines 2\n"
                         "jobs 3\n"
                         "job 0 0:4\n"
                         "job 1 1:3\n"
                         "job 2 0:2 1:2\n");
    const RunResult balance = run({"maxmin-balance", "--instance", f.path});
    CHECK(balance.code == 0);
    CHECK(balance.out.find("value ") != std::string::npos);

    const RunResult decide = run({"maxmin-balance", "--instance", f.path, "--decide", "100"});
    CHECK(decide.code == 1);
    CHECK(decide.out == "no-solution\n");

    const RunResult half = run({"maxmin-half", "--instance", f.path});
    CHECK(half.code == 0);
    CHECK(half.out.find("assign 0 0\n") == 0);

    const RunResult sparse = run({"maxmin-half", "--instance", f.path, "--sparse"});
    CHECK(sparse.code == 0);
}

TEST_CASE("random generation is byte-reproducible and round-trips") {
    const std::vector<std::string> args{"random", "-m", "4",     "-n",     "9",
                                        "--seed", "7", "--density", "600"};
    const RunResult a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream in(a.out);
    const Instance inst = parse_instance(in);
    CHECK(serialize_instance(inst) == a.out);

    const RunResult banded = run({"random", "-m", "3", "-n", "6", "--seed", "1",
                                  "--gamma-band", "6"});
    std::istringstream in2(banded.out);
    const Instance banded_inst = parse_instance(in2);
    for (int j = 0; j < banded_inst.jobs(); ++j)
        for (const auto& [i, t] : banded_inst.eligible(j)) {
            CHECK(t >= 6);
            CHECK(t <= 18);
        }
}

TEST_CASE("usage and input errors exit with 2 and a diagnostic") {
    const RunResult unknown = run({"frobnicate"});
    CHECK(unknown.code == 2);
    CHECK_FALSE(unknown.err.empty());

    TempFile bad("bad.si", "schedlab-instance 1\nmachines 1\njobs 1\njob 0 0:oops\n");
    const RunResult parse = run({"lstlp", "--instance", bad.path, "--target", "1"});
    CHECK(parse.code == 2);
    CHECK(parse.err.find("line 4") != std::string::npos);

    const RunResult missing = run({"lstlp", "--instance", "/nonexistent", "--target", "1"});
    CHECK(missing.code == 2);
}

TEST_CASE("verdict consistency: configuration feasibility implies assignment feasibility") {
    TempFile f("three4.si", kThreeUnitJobs);
    for (const char* target : {"3/2", "2", "3"}) {
        const RunResult config_run =
            run({"configlp", "--instance", f.path, "--target", target, "--mode", "exact"});
        const RunResult lst = run({"lstlp", "--instance", f.path, "--target", target});
        if (config_run.code == 0) CHECK(lst.code == 0);
    }
}

TEST_SUITE_END();
