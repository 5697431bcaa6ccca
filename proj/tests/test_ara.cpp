#include "doctest.h"

#include "araml/ara.hpp"
#include "araml/harness.hpp"
#include "fixtures.hpp"

using namespace araml;
using fixtures::attr;
using fixtures::num;
using fixtures::sym;

namespace {

/// R:{A,B}, S:{B,C}, T:{A,C}, all attributes of one sort.
DatabaseSchema rst_schema() {
    DatabaseSchema s;
    s.relations = {{"R", RelationSchema({attr("A", "s"), attr("B", "s")})},
                   {"S", RelationSchema({attr("B", "s"), attr("C", "s")})},
                   {"T", RelationSchema({attr("A", "s"), attr("C", "s")})}};
    return s;
}

AraPtr worked_example(const DatabaseSchema& s) {
    auto R = ara::rel("R", s), S = ara::rel("S", s), T = ara::rel("T", s);
    AttrBijection phi({{attr("A", "s"), attr("B", "s")}}); // A -> B, C fixed
    AraPtr j1 = ara::join(ara::join(ara::join(ara::join(R, R), S), T), ara::rename(phi, T));
    AraPtr left = ara::select({attr("B", "s"), attr("C", "s")}, j1);
    AraPtr j2 = ara::join(ara::join(R, S), T);
    AraPtr right = ara::select({attr("A", "s"), attr("B", "s")}, j2);
    return ara::project(RelationSchema({attr("B", "s"), attr("C", "s")}),
                        ara::union_(left, right));
}

} // namespace

TEST_CASE("schema inference over the university schema") {
    Instance I = fixtures::university();
    auto nc = ara::rel("no_courses", I.schema);
    auto cf = ara::rel("course_fee", I.schema);
    AraPtr joined = ara::join(nc, cf);
    CHECK(joined->schema ==
          RelationSchema({attr("student", "student"), attr("dptm", "dptm")}));
    CHECK(infer_schema(joined, I.schema) == joined->schema);

    AraPtr empty = ara::project(RelationSchema{}, cf);
    CHECK(empty->schema == RelationSchema{});

    CHECK_THROWS_AS(ara::rel("nope", I.schema), SchemaError);
}

TEST_CASE("composition schema removes the shared attribute") {
    DatabaseSchema s = rst_schema();
    AraPtr z = ara::compose(attr("A", "s"), 2, {ara::rel("R", s), ara::rel("T", s)});
    CHECK(z->schema == RelationSchema({attr("B", "s"), attr("C", "s")}));
    CHECK(infer_schema(z, s) == z->schema);

    CHECK_THROWS_AS(ara::compose(attr("A", "s"), 2, {ara::rel("R", s), ara::rel("S", s)}),
                    SchemaError); // A not in S(S)
    CHECK_THROWS_AS(
        ara::compose(attr("A", "s"), 1, {ara::rel("R", s), ara::rel("T", s)}),
        SchemaError); // too many arguments
}

TEST_CASE("schema inference rejects ill-formed nodes with a node path") {
    DatabaseSchema s = rst_schema();
    CHECK_THROWS_AS(ara::union_(ara::rel("R", s), ara::rel("S", s)), SchemaError);
    CHECK_THROWS_AS(ara::select({attr("A", "s"), attr("Z", "z")}, ara::rel("R", s)),
                    SchemaError);
    CHECK_THROWS_AS(ara::rename(AttrBijection::rename_one(attr("A", "s"), attr("B", "s")),
                                ara::rel("R", s)),
                    SchemaError);

    // re-inference against a schema where R is missing reports the path
    DatabaseSchema without;
    without.relations = {{"S", s.at("S")}};
    try {
        infer_schema(ara::rel("R", s), without);
        CHECK(false);
    } catch (const SchemaError& e) {
        CHECK(e.path() == "e");
    }
}

TEST_CASE("fragment checks count subexpression arities") {
    DatabaseSchema s = rst_schema();
    AraPtr rjs = ara::join(ara::rel("R", s), ara::rel("S", s)); // schema {A,B,C}
    CHECK_FALSE(check_fragment(rjs, 2, false).ok);
    CHECK(check_fragment(rjs, 3, false).ok);

    AraPtr e = worked_example(s);
    CHECK(check_fragment(e, 3, false).ok);

    AraPtr z = ara::compose(attr("A", "s"), 2, {ara::rel("R", s), ara::rel("T", s)});
    CHECK(check_fragment(z, 2, true).ok);
    CHECK_FALSE(check_fragment(z, 2, false).ok);
}

TEST_CASE("evaluation of the university queries") {
    Instance I = fixtures::university();
    auto nc = ara::rel("no_courses", I.schema);
    auto cf = ara::rel("course_fee", I.schema);

    CHECK(evaluate(nc, I).equals(I.at("no_courses")));

    AraPtr fee = ara::project(RelationSchema({attr("student", "student")}), ara::join(nc, cf));
    KRelation out = evaluate(fee, I);
    CHECK(out.at({sym("Alice")}) == KValue{std::int64_t{2000}});
    CHECK(out.at({sym("Bob")}) == KValue{std::int64_t{1840}});

    // evaluation is deterministic
    CHECK(evaluate(fee, I).equals(out));
}

TEST_CASE("the one operator ignores the value of its argument") {
    Instance I = fixtures::university();
    auto cf = ara::rel("course_fee", I.schema);
    AraPtr onesOfJoin = ara::one(ara::join(cf, cf));
    AraPtr ones = ara::one(cf);
    CHECK(evaluate(onesOfJoin, I).equals(evaluate(ones, I)));
    CHECK(evaluate(ara::join(ones, ones), I).equals(evaluate(ones, I)));

    // even an expression with an empty output leaves the one-relation full
    AraPtr emptyish = ara::select({attr("dptm", "dptm")}, cf);
    CHECK(evaluate(ara::one(emptyish), I).equals(evaluate(ones, I)));
}

TEST_CASE("algebraic laws hold at expression level under evaluation") {
    DatabaseSchema s = rst_schema();
    auto R = ara::rel("R", s), S = ara::rel("S", s), T = ara::rel("T", s);
    Attribute A = attr("A", "s"), B = attr("B", "s");

    std::vector<std::pair<AraPtr, AraPtr>> laws = {
        {ara::union_(R, ara::union_(R, R)), ara::union_(ara::union_(R, R), R)},
        {ara::union_(ara::rename(AttrBijection({{A, B}, {B, A}}), R), R),
         ara::union_(R, ara::rename(AttrBijection({{A, B}, {B, A}}), R))},
        {ara::join(R, ara::join(S, T)), ara::join(ara::join(R, S), T)},
        {ara::join(ara::union_(R, R), S), ara::union_(ara::join(R, S), ara::join(R, S))},
        {ara::join(ara::select({A, B}, R), S), ara::select({A, B}, ara::join(R, S))},
        {ara::join(S, ara::select({A, B}, R)), ara::select({A, B}, ara::join(S, R))},
        {ara::project(RelationSchema({B}), ara::union_(R, R)),
         ara::union_(ara::project(RelationSchema({B}), R),
                     ara::project(RelationSchema({B}), R))},
        {ara::select({A, B}, ara::union_(R, R)),
         ara::union_(ara::select({A, B}, R), ara::select({A, B}, R))},
        {ara::join(R, S), ara::join(S, R)}, // commutative carriers only below
    };

    GenConfig cfg;
    cfg.max_domain_size = 3;
    Rng g(19);
    for (const auto& k : builtin_semirings()) {
        if (!k->commutative) continue;
        for (int i = 0; i < 6; ++i) {
            Instance I = gen_instance(s, k, g, cfg);
            for (const auto& [lhs, rhs] : laws) {
                CAPTURE(k->name);
                CHECK(evaluate(lhs, I).equals(evaluate(rhs, I)));
            }
        }
    }
}

TEST_CASE("structural equality and node counts") {
    DatabaseSchema s = rst_schema();
    AraPtr a = worked_example(s);
    AraPtr b = worked_example(s);
    CHECK(equal(a, b));
    CHECK(node_count(a) == 19);
    CHECK_FALSE(equal(a, ara::rel("R", s)));
}
