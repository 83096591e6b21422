#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <utility>

namespace fs = std::filesystem;

namespace {

const std::string kCli = FUZZYBML_CLI_PATH;
const std::string kData = FUZZYBML_DATA_DIR;

struct RunResult {
    int code;
    std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
    std::string cmd = kCli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("fuzzybml-cli-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string train_args(const fs::path& model) {
    return "train --cases " + kData + "/table1.csv --schema " + kData +
           "/table1.schema.json --cuts " + kData + "/table1.cuts.json -o " + model.string();
}

}  // namespace

TEST_CASE("running without a subcommand fails") {
    auto r = run("");
    CHECK(r.code != 0);
    CHECK(!r.output.empty());
}

TEST_CASE("build-cases writes the aggregated case file") {
    fs::path csv = scratch_dir() / "plans.csv";
    auto r = run("build-cases --project " + kData + "/sample_project.json -o " + csv.string());
    CHECK(r.code == 0);
    CHECK(r.output.find("Plan1: A C D") != std::string::npos);  // enumeration log
    CHECK(r.output.find("Plan2: B C D") != std::string::npos);
    CHECK(slurp(csv) ==
          "id,X_1,X_2,X_3,plan\n"
          "p1,70,0.684,90,Plan1\n"
          "p2,60,0.5319999999999999,75,Plan2\n");  // 0.7*0.95*0.8 to the last bit
}

TEST_CASE("train reports the graph shape and writes a deterministic model") {
    fs::path m1 = scratch_dir() / "m1.json";
    fs::path m2 = scratch_dir() / "m2.json";
    auto r1 = run(train_args(m1));
    CHECK(r1.code == 0);
    CHECK(r1.output ==
          "cases: 14\n"
          "partitions: 7\n"
          "nodes: 11\n"
          "terminals: 2\n"
          "rules: 5\n");
    auto r2 = run(train_args(m2));
    CHECK(r2.code == 0);
    CHECK(slurp(m1) == slurp(m2));
}

TEST_CASE("rules prints the production rules of a model") {
    fs::path model = scratch_dir() / "rules-model.json";
    REQUIRE(run(train_args(model)).code == 0);
    auto r = run("rules --model " + model.string());
    CHECK(r.code == 0);
    CHECK(r.output ==
          "R_1: Si (X_1=Courte) et (X_2=Incertain) Alors Plan2\n"
          "R_2: Si (X_1=Longue) et (X_3=Elevé) Alors Plan2\n"
          "R_3: Si (X_1=Courte) et (X_2=Douteux) Alors Plan1\n"
          "R_4: Si (X_1=Longue) et (X_3=Faible) Alors Plan1\n"
          "R_5: Si (X_1=Normale) Alors Plan1\n");

    auto rm = run("rules --matrices --model " + model.string());
    CHECK(rm.code == 0);
    CHECK(rm.output.find("R_E (premises)") != std::string::npos);
    CHECK(rm.output.find("R_S (conclusions)") != std::string::npos);
}

TEST_CASE("crisp forward inference over a rule file") {
    auto r = run("infer --rules " + kData + "/fig6.rules.json --facts 'X_1=Longue,X_3=Faible'");
    CHECK(r.code == 0);
    CHECK(r.output ==
          "established: X_1=Longue X_3=Faible Plan1\n"
          "decision: Plan1 (degree 1)\n");

    auto rt = run("infer --trace --rules " + kData +
                  "/fig6.rules.json --facts 'X_1=Longue,X_3=Faible'");
    CHECK(rt.code == 0);
    CHECK(rt.output.find("G_0\tFACT\tX_1=Longue\t1\t1\t0\n") != std::string::npos);
    CHECK(rt.output.find("G_1\tRULE\tR_1\t1\t1\t0\n") != std::string::npos);
}

TEST_CASE("graded inference through linguistic values") {
    auto r = run("infer --rules " + kData + "/fig6.rules.json --fuzzy " + kData +
                 "/table1.fuzzy.json --values 'X_1=75,X_3=70'");
    CHECK(r.code == 0);
    // X_1=75 gives Longue 0.8 / Normale 0.2; X_3=70 gives Faible 1.0:
    // both Plan1 rules fire, max degree 0.8
    CHECK(r.output.find("decision: Plan1 (degree 0.8)\n") != std::string::npos);
}

TEST_CASE("backward chaining lists the premise alternatives") {
    auto r = run("infer --backward --goal Plan2 --rules " + kData + "/fig6.rules.json");
    CHECK(r.code == 0);
    CHECK(r.output ==
          "{X_1=Longue, X_3=Elevé}\n"
          "{X_1=Courte, X_2=Incertain}\n");

    fs::path model = scratch_dir() / "backward-model.json";
    REQUIRE(run(train_args(model)).code == 0);
    auto rm = run("infer --backward --goal Plan2 --model " + model.string());
    CHECK(rm.code == 0);
    CHECK(rm.output ==
          "{X_1=Courte, X_2=Incertain}\n"
          "{X_1=Longue, X_3=Elevé}\n");
}

TEST_CASE("batch case inference against a model") {
    fs::path model = scratch_dir() / "batch-model.json";
    REQUIRE(run(train_args(model)).code == 0);
    fs::path queries = scratch_dir() / "queries.csv";
    {
        std::ofstream out(queries);
        out << "id,X_1,X_2,X_3\n"
               "q1,75,0.5,70\n"
               "q2,75,0.5,80\n";  // X_3 falls into the bin no rule mentions
    }
    auto r = run("infer --model " + model.string() + " --cases " + queries.string());
    CHECK(r.code == 0);
    CHECK(r.output ==
          "id,plan,degree,note\n"
          "q1,Plan1,1,\n"
          "q2,,0,no-decision\n");
}

TEST_CASE("evaluate emits a one-line report") {
    auto r = run("evaluate --cases " + kData + "/table1.csv --schema " + kData +
                 "/table1.schema.json --cuts " + kData +
                 "/table1.cuts.json --method tree --protocol resubstitution");
    CHECK(r.code == 0);
    CHECK(r.output ==
          "method,protocol,accuracy,n,no_decisions\n"
          "tree,resubstitution,1,14,0\n");
}

TEST_CASE("compare scores the three methods side by side") {
    auto r = run("compare --cases " + kData + "/table1.csv --schema " + kData +
                 "/table1.schema.json --fuzzy " + kData + "/table1.fuzzy.json --protocol "
                 "resubstitution");
    CHECK(r.code == 0);
    std::istringstream lines(r.output);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "method,protocol,accuracy,n,no_decisions");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "fuzzy-bml,resubstitution,0.9285714285714286,14,0");
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("tree,resubstitution,", 0) == 0);
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("knn,resubstitution,", 0) == 0);
    CHECK(!std::getline(lines, line));
}

TEST_CASE("failures land on stderr with a nonzero exit") {
    auto r = run("train --cases nope.csv --schema " + kData +
                 "/table1.schema.json -o /tmp/never.json");
    CHECK(r.code == 1);
    CHECK(r.output.rfind("error: ", 0) == 0);

    auto r2 = run("infer --rules " + kData + "/fig6.rules.json --facts 'X_9=what'");
    CHECK(r2.code == 1);
    CHECK(r2.output.find("error: unknown fact 'X_9=what'") != std::string::npos);

    auto r3 = run("infer --backward --rules " + kData + "/fig6.rules.json");
    CHECK(r3.code == 1);
    CHECK(r3.output.find("--backward needs --goal") != std::string::npos);

    fs::path model = scratch_dir() / "err-model.json";
    REQUIRE(run(train_args(model)).code == 0);
    auto r4 = run("infer --model " + model.string() + " --rules " + kData + "/fig6.rules.json");
    CHECK(r4.code == 1);
    CHECK(r4.output.find("pass exactly one of --model or --rules") != std::string::npos);
}
