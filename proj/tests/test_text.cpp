#include "doctest.h"

#include "araml/harness.hpp"
#include "araml/text.hpp"
#include "fixtures.hpp"

using namespace araml;
using fixtures::attr;

TEST_CASE("parsing and evaluating the fee query from surface syntax") {
    Instance I = fixtures::university();
    AraPtr e = parse_ara("proj{student}(no_courses join course_fee)", I.schema);
    KRelation out = evaluate(e, I);
    CHECK(out.at({fixtures::sym("Alice")}) == KValue{std::int64_t{2000}});
    CHECK(out.at({fixtures::sym("Bob")}) == KValue{std::int64_t{1840}});
}

TEST_CASE("matrix surface syntax round trips through the printer") {
    MatInstance I = fixtures::university_matrices();
    MlPtr e = parse_ml("ones(no_courses) * t(ones(no_courses))", I.schema);
    CHECK(e->kind == MlKind::MatMul);
    CHECK(print_ml(e) == "ones(no_courses) * t(ones(no_courses))");
    CHECK(equal(parse_ml(print_ml(e), I.schema), e));
}

TEST_CASE("parse errors carry positions") {
    Instance I = fixtures::university();
    CHECK_THROWS_AS(parse_ara("sel{student,}(no_courses)", I.schema), ParseError);
    try {
        parse_ara("sel{student,}(no_courses)", I.schema);
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.col() == 13);
    }
    CHECK_THROWS_AS(parse_ara("nope", I.schema), ParseError);
    CHECK_THROWS_AS(parse_ara("proj{zap}(no_courses)", I.schema), ParseError);
    CHECK_THROWS_AS(parse_ara("no_courses join", I.schema), ParseError);
    MatInstance M = fixtures::university_matrices();
    CHECK_THROWS_AS(parse_ml("no_courses * no_courses", M.schema), ParseError);
    CHECK_THROWS_AS(parse_ml("diag(no_courses)", M.schema), ParseError);
}

TEST_CASE("print/parse round trip on generated relational expressions") {
    GenConfig cfg;
    Rng g(13);
    for (int i = 0; i < 300; ++i) {
        DatabaseSchema s = gen_db_schema(g, cfg);
        AraPtr e = gen_ara_expr(s, 3, true, g, cfg);
        std::string text = print_ara(e);
        CAPTURE(text);
        AraPtr back = parse_ara(text, s);
        CHECK(equal(e, back));
        CHECK(print_ara(back) == text);
    }
}

TEST_CASE("print/parse round trip on generated matrix expressions") {
    GenConfig cfg;
    Rng g(14);
    for (int i = 0; i < 300; ++i) {
        MatrixSchema s = gen_matrix_schema(g, cfg);
        MlPtr e = gen_ml_expr(s, g, cfg);
        std::string text = print_ml(e);
        CAPTURE(text);
        MlPtr back = parse_ml(text, s);
        CHECK(equal(e, back));
        CHECK(print_ml(back) == text);
    }
}

TEST_CASE("relational documents load sorts, schemas and tuples") {
    const char* doc = R"(
# the running example
sort student = Alice, Bob
sort dptm = CS, Math, Bio
rel no_courses(student: student, dptm: dptm)
rel course_fee(dptm: dptm)
tuple no_courses(student = Alice, dptm = CS) = 5
tuple no_courses(student = Alice, dptm = Math) = 2
tuple no_courses(student = Alice, dptm = Bio) = 0
tuple no_courses(student = Bob, dptm = CS) = 2
tuple no_courses(student = Bob, dptm = Math) = 1
tuple no_courses(student = Bob, dptm = Bio) = 3
tuple course_fee(dptm = CS) = 300
tuple course_fee(dptm = Math) = 250
tuple course_fee(dptm = Bio) = 330
)";
    Instance I = parse_rel_document(doc, int_semiring());
    I.validate();
    Instance expect = fixtures::university();
    CHECK(I.schema == expect.schema);
    CHECK(I.domains == expect.domains);
    for (const auto& [name, rel] : expect.relations)
        CHECK(I.at(name).equals(rel));

    // writing and re-reading lands on the same instance
    Instance back = parse_rel_document(write_rel_document(I), int_semiring());
    for (const auto& [name, rel] : I.relations) CHECK(back.at(name).equals(rel));
    CHECK(back.domains == I.domains);
}

TEST_CASE("relational document errors name the line") {
    CHECK_THROWS_AS(parse_rel_document("rel R(A: s)\ntuple R(A = 1) = 5", int_semiring()),
                    ParseError); // sort s has no domain
    CHECK_THROWS_AS(parse_rel_document("sort s = 1, 1", int_semiring()), ParseError);
    CHECK_THROWS_AS(parse_rel_document("bogus line", int_semiring()), ParseError);
    CHECK_THROWS_AS(parse_rel_document("sort s = 1\nrel R(A: s)\ntuple R() = 5", int_semiring()),
                    ParseError); // missing attribute value
}

TEST_CASE("matrix documents load sizes and grids") {
    const char* doc = R"(
size student = 2
size dptm = 3
matrix no_courses : student x dptm = [
  5 2 0
  2 1 3
]
matrix course_fee : dptm x 1 = [ 300 250 330 ]
)";
    MatInstance I = parse_mat_document(doc, int_semiring());
    I.validate();
    MatInstance expect = fixtures::university_matrices();
    CHECK(I.schema == expect.schema);
    for (const auto& [name, m] : expect.matrices) CHECK(I.at(name).equals(m));

    MatInstance back = parse_mat_document(write_mat_document(I), int_semiring());
    for (const auto& [name, m] : I.matrices) CHECK(back.at(name).equals(m));

    CHECK_THROWS_AS(parse_mat_document("matrix M : a x b = [ 1 ]", int_semiring()),
                    ParseError); // sizes missing
    CHECK_THROWS_AS(parse_mat_document("size a = 2\nmatrix M : a x 1 = [ 1 2 3 ]",
                                       int_semiring()),
                    ParseError); // entry count mismatch
}

TEST_CASE("annotation tables print sorted with zeros suppressed") {
    Instance I = fixtures::university();
    std::string table = print_relation(I.at("no_courses"), &I.domains);
    CHECK(table == "dptm student | K\n"
                   "CS Alice | 5\n"
                   "CS Bob | 2\n"
                   "Math Alice | 2\n"
                   "Math Bob | 1\n"
                   "Bio Bob | 3\n");
}
