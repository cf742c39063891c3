#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "sdred/lift_verify.hpp"
#include "sdred/reductions.hpp"
#include "sdred/tdm.hpp"

namespace {

std::string g_cli; // path to the sdred binary, from argv[1]
std::string g_dir; // scratch directory

std::string path(const std::string& name) { return g_dir + "/" + name; }

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

struct RunResult {
    int code = -1;
    std::string out, err;
};

RunResult run(const std::string& args) {
    const std::string out_p = path("stdout.txt"), err_p = path("stderr.txt");
    const std::string cmd =
        "'" + g_cli + "' " + args + " > '" + out_p + "' 2> '" + err_p + "'";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_p);
    r.err = slurp(err_p);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const char* kWorked = "3 5\n1 2 2\n2 2 3\n1 3 2\n2 1 3\n3 3 1\n";
const char* kPruned = "3 4\n2 2 3\n1 3 2\n2 1 3\n3 3 1\n";

} // namespace

using namespace sdred;

TEST_CASE("gen3dm writes a parseable, reproducible instance") {
    const auto a = run("gen3dm --t 3 --u 20 --planted --seed 5 --out '" + path("a.3dm") + "'");
    CHECK(a.code == 0);
    CHECK(contains(a.out, "wrote"));
    const TdmInstance inst = parse_tdm(slurp(path("a.3dm")));
    CHECK(inst.t == 3);
    CHECK(inst.u() == 20);
    CHECK(solve_3dm(inst).has_value()); // planted means solvable

    const auto b = run("gen3dm --t 3 --u 20 --planted --seed 5 --out '" + path("b.3dm") + "'");
    CHECK(b.code == 0);
    CHECK(slurp(path("a.3dm")) == slurp(path("b.3dm")));

    CHECK(run("gen3dm --t 5 --u 2 --planted --out '" + path("bad.3dm") + "'").code == 5);
}

TEST_CASE("reduce, solve, lift on the running example") {
    spit(path("worked.3dm"), kWorked);
    const auto red = run("reduce --in '" + path("worked.3dm") + "' --kind coset --out-instance '" +
                         path("w.inst") + "' --out-record '" + path("w.rec") + "'");
    CHECK(red.code == 0);
    CHECK(contains(red.out, "kind coset: n=5 r=9 w=3"));
    // files round-trip and match the library's own output bit for bit
    const auto expect = reduce_coset(parse_tdm(kWorked));
    CHECK(slurp(path("w.inst")) == serialize(SdInstance(expect.instance)));
    CHECK(parse_record(slurp(path("w.rec"))) == expect.record);

    const auto sol = run("solve --in '" + path("w.inst") + "' --out '" + path("w.sol") + "'");
    CHECK(sol.code == 0);
    CHECK(contains(sol.out, "found support 0 3 4 (checked 22)"));
    CHECK(slurp(path("w.sol")) == "0 3 4\n");

    const auto lif = run("lift --record '" + path("w.rec") + "' --solution '" + path("w.sol") +
                         "' --out '" + path("w.matching") + "'");
    CHECK(lif.code == 0);
    CHECK(contains(lif.out, "matching 1 4 5")); // labels are 1-based, files 0-based
    CHECK(slurp(path("w.matching")) == "0 3 4\n");
}

TEST_CASE("solve reports unsat and exhausted through files and exit codes") {
    spit(path("pruned.3dm"), kPruned);
    REQUIRE(run("reduce --in '" + path("pruned.3dm") +
                "' --kind coset --out-instance '" + path("p.inst") + "' --out-record '" +
                path("p.rec") + "'")
                .code == 0);
    const auto sol = run("solve --in '" + path("p.inst") + "' --out '" + path("p.sol") + "'");
    CHECK(sol.code == 1);
    CHECK(slurp(path("p.sol")) == "UNSAT\n");
    CHECK(run("lift --record '" + path("p.rec") + "' --solution '" + path("p.sol") + "'").code ==
          1);

    const auto cut = run("solve --in '" + path("p.inst") + "' --budget 5 --out '" +
                         path("cut.sol") + "'");
    CHECK(cut.code == 2);
    CHECK(slurp(path("cut.sol")) == "EXHAUSTED\n");
    CHECK(run("lift --record '" + path("p.rec") + "' --solution '" + path("cut.sol") + "'")
              .code == 2);
}

TEST_CASE("prange solve through the cli") {
    spit(path("worked.3dm"), kWorked);
    REQUIRE(run("reduce --in '" + path("worked.3dm") +
                "' --kind coset --out-instance '" + path("w2.inst") + "' --out-record '" +
                path("w2.rec") + "'")
                .code == 0);
    const auto sol = run("solve --in '" + path("w2.inst") + "' --method prange --seed 2 --out '" +
                         path("w2.sol") + "'");
    CHECK(sol.code == 0);
    CHECK(slurp(path("w2.sol")) == "0 3 4\n");
}

TEST_CASE("a spurious solution is rejected at lift time") {
    REQUIRE(run("gen3dm --t 2 --u 100 --planted --seed 3 --out '" + path("big.3dm") + "'").code ==
            0);
    REQUIRE(run("reduce --in '" + path("big.3dm") + "' --kind gpsw --out-instance '" +
                path("big.inst") + "' --out-record '" + path("big.rec") + "'")
                .code == 0);
    spit(path("big.sol"), "101 102 103\n"); // three padding rows: a real codeword, no matching
    const auto lif = run("lift --record '" + path("big.rec") + "' --solution '" +
                         path("big.sol") + "'");
    CHECK(lif.code == 4);
    CHECK(contains(lif.out, "spurious"));
}

TEST_CASE("verify solves and certifies the running example") {
    spit(path("worked.3dm"), kWorked);
    const auto ver = run("verify --in '" + path("worked.3dm") + "' --kind coset");
    CHECK(ver.code == 0);
    CHECK(contains(ver.out, "solve found support 0 3 4"));
    CHECK(contains(ver.out, "soundness: verdict sound, method exhaustive-weight, checked 25"));
    CHECK(contains(ver.out, "matching 1 4 5"));
    CHECK(contains(ver.out, "result solved"));
}

TEST_CASE("verify flags zero-row padding and writes the witness") {
    REQUIRE(run("gen3dm --t 2 --u 100 --planted --seed 3 --out '" + path("big2.3dm") + "'")
                .code == 0);
    const auto ver = run("verify --in '" + path("big2.3dm") +
                         "' --kind gpsw --witness-out '" + path("big2.wit") + "'");
    CHECK(ver.code == 4);
    CHECK(contains(ver.out, "soundness: verdict unsound, method probe"));
    CHECK(contains(ver.out, "result unsound"));
    CHECK(slurp(path("big2.wit")) == "101 102 103\n");
}

TEST_CASE("verify agrees with the source on unsatisfiable input") {
    spit(path("pruned.3dm"), kPruned);
    const auto ver = run("verify --in '" + path("pruned.3dm") + "' --kind coset");
    CHECK(ver.code == 1);
    CHECK(contains(ver.out, "solve unsat"));
    CHECK(contains(ver.out, "result unsat"));
}

TEST_CASE("construction preconditions surface as exit 3") {
    spit(path("worked.3dm"), kWorked);
    const auto red = run("reduce --in '" + path("worked.3dm") + "' --kind gpsd --out-instance '" +
                         path("x.inst") + "' --out-record '" + path("x.rec") + "'");
    CHECK(red.code == 3);
    CHECK(contains(red.err, "not applicable"));
    CHECK(contains(red.err, "u >= 8"));

    REQUIRE(run("gen3dm --t 3 --u 10 --planted --seed 1 --out '" + path("ten.3dm") + "'").code ==
            0);
    const auto gen = run("reduce --in '" + path("ten.3dm") +
                         "' --kind generic-psd --f '2*w' --g '3*t' --out-instance '" +
                         path("y.inst") + "' --out-record '" + path("y.rec") + "'");
    CHECK(gen.code == 3);
    CHECK(contains(gen.err, "condition violated"));
    CHECK(contains(gen.err, "f(r, w) = 6 < u = 10"));
}

TEST_CASE("the generic preset reproduces the fixed construction byte for byte") {
    REQUIRE(run("gen3dm --t 9 --u 12 --planted --seed 8 --out '" + path("g.3dm") + "'").code == 0);
    REQUIRE(run("reduce --in '" + path("g.3dm") + "' --kind gpsd --out-instance '" +
                path("fixed.inst") + "' --out-record '" + path("fixed.rec") + "'")
                .code == 0);
    REQUIRE(run("reduce --in '" + path("g.3dm") + "' --kind generic-psd --preset goppa "
                "--out-instance '" + path("gen.inst") + "' --out-record '" + path("gen.rec") + "'")
                .code == 0);
    CHECK(slurp(path("fixed.inst")) == slurp(path("gen.inst")));
    CHECK(parse_record(slurp(path("fixed.rec"))).kind == ReductionKind::Gpsd);
    CHECK(parse_record(slurp(path("gen.rec"))).kind == ReductionKind::GenericPsd);
}

TEST_CASE("random-fresh reduction output is deterministic in the seed") {
    REQUIRE(run("gen3dm --t 3 --u 100 --planted --seed 9 --out '" + path("rf.3dm") + "'").code ==
            0);
    for (const char* name : {"rf1", "rf2"}) {
        REQUIRE(run("reduce --in '" + path("rf.3dm") +
                    "' --kind gpsw --strategy random-fresh --seed 42 --out-instance '" +
                    path(std::string(name) + ".inst") + "' --out-record '" +
                    path(std::string(name) + ".rec") + "'")
                    .code == 0);
    }
    CHECK(slurp(path("rf1.inst")) == slurp(path("rf2.inst")));
    CHECK(slurp(path("rf1.rec")) == slurp(path("rf2.rec")));
    // and the instance file reconstructs from the record alone
    const ReductionRecord rec = parse_record(slurp(path("rf1.rec")));
    CHECK(serialize(rebuild_instance(rec)) == slurp(path("rf1.inst")));
}

TEST_CASE("condition checking over grids") {
    const auto pass = run("check-props --preset goppa --mode psd --t 9..12 --u 9..12");
    CHECK(pass.code == 0);
    CHECK(contains(pass.out, "mode psd points 16 failures 0"));

    const auto fail = run("check-props --preset half-length --mode psd --t 9..10 --u 21..24");
    CHECK(fail.code == 4);
    CHECK(contains(fail.out, "points 8 failures 8"));
    CHECK(contains(fail.out, "u <= f"));

    const auto vac = run("check-props --preset goppa --mode psd --t 1..8 --u 1..8");
    CHECK(vac.code == 2);
    CHECK(contains(vac.out, "points 0"));
    CHECK(contains(vac.out, "nothing was checked"));

    const auto psw = run("check-props --f '2^w' --g '3*t+1' --lambda 0 --mode psw --t 2..3 --u 1..3");
    CHECK(psw.code == 4);
    CHECK(contains(psw.out, "points 6 failures 3"));
    CHECK(contains(psw.out, "3t+2 <= g'"));
}

TEST_CASE("usage problems exit 5, help exits 0") {
    CHECK(run("no-such-command").code == 5);
    CHECK(run("reduce --kind coset").code == 5); // missing required flags
    CHECK(run("solve --in '" + path("missing.inst") + "'").code == 5);
    CHECK(run("--help").code == 0);
    CHECK(run("check-props --preset goppa --mode bogus --t 9 --u 9").code == 5);
    CHECK(run("check-props --t 9 --u 9").code == 5); // no spec at all
    spit(path("junk.3dm"), "not numbers\n");
    CHECK(run("verify --in '" + path("junk.3dm") + "' --kind coset").code == 5);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_test <path-to-sdred-binary>\n");
        return 1;
    }
    g_cli = argv[1];
    char tmpl[] = "/tmp/sdred_cli_XXXXXX";
    if (!mkdtemp(tmpl)) {
        std::perror("mkdtemp");
        return 1;
    }
    g_dir = tmpl;
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
