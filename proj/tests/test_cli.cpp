// Runs the adl binary as a subprocess and checks exit codes and output.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;  // stdout and stderr together
};

Run adl(const std::string& args) {
    std::string cmd = std::string(ADL_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string ex(const char* name) { return std::string(ADL_EXAMPLES) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("adl_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const char* f) const { return (path / f).string(); }
};

}  // namespace

TEST_CASE("parse and sat") {
    Run p = adl("parse " + ex("chase.adl"));
    CHECK(p.code == 0);
    CHECK(p.out.find("sub") != std::string::npos);

    Run clash = adl("sat " + ex("clash.adl"));
    CHECK(clash.code == 1);
    CHECK(clash.out.find("unsatisfiable") != std::string::npos);
    CHECK(adl("sat " + ex("chase.adl")).code == 0);
    CHECK(adl("sat " + ex("paper_ex9.adl")).code == 0);
}

TEST_CASE("usage and input errors exit 2") {
    CHECK(adl("").code == 2);
    CHECK(adl("frobnicate").code == 2);
    CHECK(adl("sat --mode sideways " + ex("chase.adl")).code == 2);

    TempDir t;
    std::ofstream(t / "broken.adl") << "A(a)\nB(b\n";
    Run r = adl("parse " + t / "broken.adl");
    CHECK(r.code == 2);
    // the missing parenthesis is noticed at the end of input
    CHECK(r.out.find("broken.adl:3:1: expected ')'") != std::string::npos);

    Run ex9 = adl("build-model " + ex("paper_ex9.adl"));
    CHECK(ex9.code == 2);
    CHECK(ex9.out.find("restriction violated: temporal specifier on role R") != std::string::npos);
}

TEST_CASE("missing input and unwritable output exit 3") {
    CHECK(adl("parse /nonexistent/nothing.adl").code == 3);
    CHECK(adl("build-model " + ex("chase.adl") + " -o /nonexistent/dir/model.txt").code == 3);
}

TEST_CASE("build then verify") {
    TempDir t;
    for (const char* fmt : {"text", "json"}) {
        std::string model = t / (std::string("model.") + fmt).c_str();
        CHECK(adl("build-model " + ex("chase.adl") + " --format " + fmt + " -o " + model).code == 0);
        Run v = adl("verify " + ex("chase.adl") + " " + model);
        CHECK(v.code == 0);
    }
    // a model of a different ontology fails verification
    CHECK(adl("verify " + ex("employment.adl") + " " + t / "model.text").code == 1);

    std::ofstream(t / "swap.map") << "0 0 1 0\n0 0 0 1\n1 0 0 0\n0 1 0 0\n";
    CHECK(adl("build-model " + ex("chase.adl") + " --map " + t / "swap.map" + " -o " + t / "swapped").code == 0);
    CHECK(adl("verify " + ex("chase.adl") + " " + t / "swapped").code == 0);
    std::ofstream(t / "bad.map") << "1 0\n0 0\n";
    CHECK(adl("build-model " + ex("chase.adl") + " --map " + t / "bad.map").code == 2);
}

TEST_CASE("output is deterministic") {
    TempDir t;
    REQUIRE(adl("build-model " + ex("employment.adl") + " -o " + t / "a").code == 0);
    REQUIRE(adl("build-model " + ex("employment.adl") + " -o " + t / "b").code == 0);
    CHECK(slurp(t / "a") == slurp(t / "b"));
}

TEST_CASE("temporal bundles") {
    TempDir t;
    REQUIRE(adl("build-model " + ex("temporal_shift.adl") + " -o " + t / "bundle").code == 0);
    CHECK(slurp(t / "bundle").rfind("== global", 0) == 0);
    CHECK(adl("verify " + ex("temporal_shift.adl") + " " + t / "bundle").code == 0);
    CHECK(adl("export " + t / "bundle" + " --format json -o " + t / "bundle.json").code == 0);
    CHECK(adl("verify " + ex("temporal_shift.adl") + " " + t / "bundle.json").code == 0);
    CHECK(adl("export " + t / "bundle.json" + " --format text -o " + t / "again").code == 0);
    CHECK(slurp(t / "again") == slurp(t / "bundle"));
}

TEST_CASE("probes report the convexity counterexamples") {
    Run p9 = adl("probe " + ex("paper_ex9.adl"));
    CHECK(p9.code == 1);
    CHECK(p9.out.find("mid(a,b)") != std::string::npos);
    CHECK(p9.out.find("exists R@{time:1} and A sub bot") != std::string::npos);

    CHECK(adl("probe " + ex("paper_ex10.adl")).code == 0);
    Run p10 = adl("probe " + ex("paper_ex10.adl") + " --role-conj \"R1 and R2 sub R3\"");
    CHECK(p10.code == 1);
    CHECK(p10.out.find("exists R3 and A sub bot") != std::string::npos);
}

TEST_CASE("ground, translate and fuzz") {
    TempDir t;
    CHECK(adl("ground " + ex("employment.adl")).code == 0);
    CHECK(adl("ground --mode exhaustive " + ex("chase.adl")).code == 0);
    // too many annotation names for exhaustive enumeration
    CHECK(adl("ground --mode exhaustive " + ex("employment.adl")).code == 2);
    CHECK(adl("ground " + ex("employment.adl") + " -o " + t / "ground").code == 0);
    CHECK(fs::exists(t / "ground.names"));
    CHECK(adl("translate " + ex("temporal_shift.adl") + " -o " + t / "plain").code == 0);
    CHECK(slurp(t / "plain").find("# names") != std::string::npos);
    CHECK(adl("fuzz --seed 3 --count 5").code == 0);
}
