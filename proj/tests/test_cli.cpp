#include "doctest.h"

#include <sstream>

#include "araml/cli.hpp"

using namespace araml;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kUniversity = std::string(ARAML_SOURCE_DIR) + "/data/university-ara";
const std::string kMatrices = std::string(ARAML_SOURCE_DIR) + "/data/university-ml";
const std::string kRst = std::string(ARAML_SOURCE_DIR) + "/data/rst";

} // namespace

TEST_CASE("eval-ara prints the fee table") {
    auto r = run({"--workspace", kUniversity, "eval-ara",
                  "proj{student}(no_courses join course_fee)"});
    CHECK(r.code == 0);
    CHECK(r.out == "student | K\nAlice | 2000\nBob | 1840\n");
}

TEST_CASE("eval-ml prints the fee column") {
    auto r = run({"--workspace", kMatrices, "eval-ml", "no_courses * course_fee"});
    CHECK(r.code == 0);
    CHECK(r.out == "2000\n1840\n");
}

TEST_CASE("semantic failures exit with one, usage errors with two") {
    auto parseFail = run({"--workspace", kUniversity, "eval-ara", "sel{student,}(no_courses)"});
    CHECK(parseFail.code == 1);
    CHECK(parseFail.err.find("1:13") != std::string::npos);

    auto missing = run({"--workspace", "/nonexistent", "eval-ara", "R"});
    CHECK(missing.code == 1);

    auto usage = run({"eval-ara"});
    CHECK(usage.code == 2);
    auto unknown = run({"frobnicate"});
    CHECK(unknown.code == 2);
    auto badFlag = run({"--workspace", kUniversity, "eval-ara", "R", "--bogus"});
    CHECK(badFlag.code == 2);

    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("eval-ara") != std::string::npos);
}

TEST_CASE("normalize prints the rewritten expression and a size metric") {
    auto r = run({"--workspace", kRst, "normalize", "--k", "2",
                  "proj{B,C}(sel{B,C}(R join R join S join T join ren{A->B}(T)) + "
                  "sel{A,B}(R join S join T))"});
    CHECK(r.code == 0);
    CHECK(r.out == "sel{B,C}(S join ren{A->B}(T) join comp{A,2}(R join R, T)) + "
                   "proj{B}(sel{A,B}(R)) join S join ren{A->B}(T)\n");
    CHECK(r.err.find("normal form") != std::string::npos);
}

TEST_CASE("normalize refuses the non-commutative carrier, translation still works") {
    const std::string schemaOnly = std::string(ARAML_SOURCE_DIR) + "/data/rst-schema";
    auto refused = run({"--workspace", schemaOnly, "--semiring", "mat2", "normalize", "R"});
    CHECK(refused.code == 1);
    CHECK(refused.err.find("commutative") != std::string::npos);

    auto translated =
        run({"--workspace", schemaOnly, "--semiring", "mat2", "to-ml", "comp{B,2}(R, S)"});
    CHECK(translated.code == 0);
    auto checked = run({"--workspace", schemaOnly, "--semiring", "mat2", "check-equiv",
                        "--samples", "5", "R join S", "R join S"});
    CHECK(checked.code == 0);
}

TEST_CASE("check-equiv agrees with the normalizer") {
    std::string input = "proj{B,C}(sel{B,C}(R join R join S join T join ren{A->B}(T)) + "
                        "sel{A,B}(R join S join T))";
    auto nf = run({"--workspace", kRst, "normalize", "--k", "2", input});
    REQUIRE(nf.code == 0);
    std::string rewritten = nf.out.substr(0, nf.out.size() - 1); // strip newline
    auto eq = run({"--workspace", kRst, "check-equiv", "--samples", "15", input, rewritten});
    CHECK(eq.code == 0);

    auto neq = run({"--workspace", kRst, "check-equiv", "--samples", "15", "R", "R + R"});
    CHECK(neq.code == 1);
    CHECK(neq.err.find("counterexample") != std::string::npos);
}

TEST_CASE("translations certify differentially from the command line") {
    auto toAra = run({"--workspace", kMatrices, "to-ara", "--certify", "10",
                      "t(no_courses) + course_fee * t(ones(no_courses))"});
    CHECK(toAra.code == 0);
    CHECK(toAra.err.find("10/10 samples agree") != std::string::npos);

    auto toMl = run({"--workspace", kUniversity, "to-ml", "--certify", "10",
                     "proj{student}(no_courses join course_fee)"});
    CHECK(toMl.code == 0);
    CHECK(toMl.err.find("10/10 samples agree") != std::string::npos);

    auto compiled = run({"--workspace", kRst, "compile", "--certify", "10",
                         "proj{B,C}(sel{B,C}(R join S join T))"});
    CHECK(compiled.code == 0);
    CHECK(compiled.err.find("10/10 samples agree") != std::string::npos);

    // the pipeline needs commutativity
    auto refused = run({"--workspace", kRst, "--semiring", "mat2", "compile", "R"});
    CHECK(refused.code == 1);
}

TEST_CASE("fuzz runs a clean campaign") {
    for (const char* ring : {"int", "bool", "tropical", "prov", "mat2"}) {
        auto r = run({"--semiring", ring, "fuzz", "--seed", "9", "--count", "60", "--k", "3",
                      "--depth", "4", "--with-composition"});
        CAPTURE(ring);
        CHECK(r.code == 0);
        CHECK(r.out.find("kernel and oracle agree") != std::string::npos);
    }
}
