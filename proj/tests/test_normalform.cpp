#include "doctest.h"

#include "araml/harness.hpp"
#include "araml/normalform.hpp"
#include "araml/text.hpp"
#include "fixtures.hpp"

using namespace araml;
using fixtures::attr;
using fixtures::num;

namespace {

DatabaseSchema rst_schema() {
    DatabaseSchema s;
    s.relations = {{"R", RelationSchema({attr("A", "s"), attr("B", "s")})},
                   {"S", RelationSchema({attr("B", "s"), attr("C", "s")})},
                   {"T", RelationSchema({attr("A", "s"), attr("C", "s")})}};
    return s;
}

AraPtr worked_example(const DatabaseSchema& s) {
    auto R = ara::rel("R", s), S = ara::rel("S", s), T = ara::rel("T", s);
    AttrBijection phi({{attr("A", "s"), attr("B", "s")}});
    AraPtr left = ara::select({attr("B", "s"), attr("C", "s")},
                              ara::join(ara::join(ara::join(ara::join(R, R), S), T),
                                        ara::rename(phi, T)));
    AraPtr right = ara::select({attr("A", "s"), attr("B", "s")}, ara::join(ara::join(R, S), T));
    return ara::project(RelationSchema({attr("B", "s"), attr("C", "s")}),
                        ara::union_(left, right));
}

void check_invariants(const NormalForm& nf) {
    REQUIRE(!nf.branches.empty());
    for (const auto& b : nf.branches) {
        REQUIRE(!b.factors.empty());
        for (const auto& f : b.factors) {
            auto report = check_fragment(f, nf.k, true);
            CAPTURE(print_ara(f));
            CHECK(report.ok);
        }
        for (std::size_t i = 0; i < b.selections.size(); ++i) {
            CHECK(b.selections[i].size() >= 2);
            for (std::size_t j = i + 1; j < b.selections.size(); ++j)
                for (const auto& a : b.selections[i])
                    CHECK(std::find(b.selections[j].begin(), b.selections[j].end(), a) ==
                          b.selections[j].end());
        }
    }
}

// evaluates e and the denotation of its normal form on `rounds` random
// instances over every commutative shipped semiring and demands equality
void check_equivalent(const AraPtr& before, const AraPtr& after, const DatabaseSchema& s,
                      Rng& g, int rounds) {
    GenConfig cfg;
    cfg.max_domain_size = 3;
    for (const auto& k : builtin_semirings()) {
        if (!k->commutative) continue;
        for (int i = 0; i < rounds; ++i) {
            Instance I = gen_instance(s, k, g, cfg);
            CAPTURE(k->name);
            CAPTURE(print_ara(before));
            CAPTURE(print_ara(after));
            CHECK(evaluate(before, I).equals(evaluate(after, I)));
        }
    }
}

} // namespace

TEST_CASE("push_proj_sel rewrites factors by the three-way case split") {
    DatabaseSchema s = rst_schema();
    Attribute A = attr("A", "s"), B = attr("B", "s");

    // single factor containing both attributes
    auto R = ara::rel("R", s);
    auto rewritten = push_proj_sel(A, B, {R});
    REQUIRE(rewritten.size() == 1);
    CHECK(print_ara(rewritten[0]) == "proj{B}(sel{A,B}(R))");

    // factor without the projected attribute is untouched
    auto S = ara::rel("S", s);
    auto both = push_proj_sel(A, B, {R, S});
    CHECK(equal(both[1], S));

    // factor with A but not B gets renamed
    auto T = ara::rel("T", s);
    auto acbc = push_proj_sel(A, B, {T, S});
    CHECK(print_ara(acbc[0]) == "ren{A->B}(T)");

    CHECK_THROWS_AS(push_proj_sel(A, A, {R}), SchemaError);
    CHECK_THROWS_AS(push_proj_sel(A, attr("Z", "z"), {R}), SchemaError);
    CHECK_THROWS_AS(push_proj_sel(A, B, {S}), SchemaError); // A occurs nowhere
}

TEST_CASE("push_proj_sel output joins evaluate like the projected selection") {
    Rng g(11);
    GenConfig cfg;
    cfg.max_domain_size = 3;
    cfg.max_schema_arity = 3;
    int done = 0;
    while (done < 60) {
        DatabaseSchema s = gen_db_schema(g, cfg);
        // pick two distinct compatible attributes present across the schema
        std::vector<Attribute> all;
        for (const auto& [name, schema] : s.relations)
            for (const auto& a : schema) all.push_back(a);
        std::optional<std::pair<Attribute, Attribute>> ab;
        for (const auto& x : all)
            for (const auto& y : all)
                if (!(x == y) && x.compatible_with(y)) ab = {x, y};
        if (!ab) continue;

        std::vector<AraPtr> factors;
        for (const auto& [name, schema] : s.relations) factors.push_back(ara::rel(name, schema));
        bool aUsed = false, bUsed = false;
        for (const auto& f : factors) {
            aUsed = aUsed || f->schema.contains(ab->first);
            bUsed = bUsed || f->schema.contains(ab->second);
        }
        if (!aUsed || !bUsed) continue;

        AraPtr joined = factors[0];
        for (std::size_t i = 1; i < factors.size(); ++i) joined = ara::join(joined, factors[i]);
        AraPtr lhs = ara::project_away(ab->first,
                                       ara::select({ab->first, ab->second}, joined));
        auto rewritten = push_proj_sel(ab->first, ab->second, factors);
        AraPtr rhs = rewritten[0];
        for (std::size_t i = 1; i < rewritten.size(); ++i) rhs = ara::join(rhs, rewritten[i]);

        for (const auto& k : builtin_semirings()) {
            Instance I = gen_instance(s, k, g, cfg);
            CAPTURE(k->name);
            CAPTURE(print_ara(lhs));
            CHECK(evaluate(lhs, I).equals(evaluate(rhs, I)));
        }
        ++done;
    }
}

TEST_CASE("a bare relation name is its own normal form") {
    DatabaseSchema s = rst_schema();
    NormalForm nf = normalize(ara::rel("R", s), 2, int_semiring());
    REQUIRE(nf.branches.size() == 1);
    CHECK(nf.branches[0].selections.empty());
    REQUIRE(nf.branches[0].factors.size() == 1);
    CHECK(print_ara(nf.branches[0].factors[0]) == "R");
}

TEST_CASE("the worked three-relation example lands on the two published branches") {
    DatabaseSchema s = rst_schema();
    AraPtr e = worked_example(s);
    CHECK(check_fragment(e, 3, false).ok);

    NormalForm nf = normalize(e, 2, int_semiring());
    check_invariants(nf);
    REQUIRE(nf.branches.size() == 2);

    CHECK(print_ara(branch_expr(nf.branches[0])) ==
          "sel{B,C}(S join ren{A->B}(T) join comp{A,2}(R join R, T))");
    CHECK(print_ara(branch_expr(nf.branches[1])) ==
          "proj{B}(sel{A,B}(R)) join S join ren{A->B}(T)");

    Rng g(23);
    check_equivalent(e, denote(nf), s, g, 4);
}

TEST_CASE("normalize handles composition sugar by desugaring it first") {
    DatabaseSchema s = rst_schema();
    AraPtr z = ara::compose(attr("A", "s"), 2, {ara::rel("R", s), ara::rel("T", s)});
    NormalForm nf = normalize(z, 2, int_semiring());
    check_invariants(nf);
    Rng g(5);
    check_equivalent(z, denote(nf), s, g, 4);
}

TEST_CASE("normalized random expressions evaluate identically to their input") {
    Rng g(101);
    GenConfig cfg;
    cfg.max_domain_size = 3;
    cfg.node_budget = 10;
    for (int k = 1; k <= 3; ++k) {
        GenConfig scfg = cfg;
        scfg.max_schema_arity = k;
        for (int round = 0; round < 12; ++round) {
            DatabaseSchema s = gen_db_schema(g, scfg);
            AraPtr e = gen_ara_expr(s, k + 1, false, g, cfg);
            NormalForm nf = normalize(e, k, int_semiring());
            check_invariants(nf);
            check_equivalent(e, denote(nf), s, g, 2);
        }
    }
}

TEST_CASE("reduce_arity flattens into the composition fragment") {
    DatabaseSchema s = rst_schema();
    Attribute B = attr("B", "s"), C = attr("C", "s");
    AraPtr e = ara::project(RelationSchema({B, C}),
                            ara::select({B, C}, ara::join(ara::join(ara::rel("R", s),
                                                                    ara::rel("S", s)),
                                                          ara::rel("T", s))));
    AraPtr reduced = reduce_arity(e, 2, int_semiring());
    CHECK(check_fragment(reduced, 2, true).ok);
    Rng g(17);
    check_equivalent(e, reduced, s, g, 4);

    // an expression already in the fragment stays equivalent
    AraPtr z = ara::compose(attr("A", "s"), 2, {ara::rel("R", s), ara::rel("T", s)});
    AraPtr rz = reduce_arity(z, 2, int_semiring());
    CHECK(check_fragment(rz, 2, true).ok);
    check_equivalent(z, rz, s, g, 4);

    // outputs wider than the bound are refused
    AraPtr wide = ara::join(ara::rel("R", s), ara::rel("S", s));
    CHECK_THROWS_AS(reduce_arity(wide, 2, int_semiring()), FragmentError);
}

TEST_CASE("normalization refuses a non-commutative semiring") {
    DatabaseSchema s = rst_schema();
    CHECK_THROWS_AS(normalize(ara::rel("R", s), 2, mat2_semiring()), CommutativityError);
    CHECK_THROWS_AS(reduce_arity(ara::rel("R", s), 2, mat2_semiring()), CommutativityError);
}

TEST_CASE("normalization reports a size-growth metric worth watching") {
    DatabaseSchema s = rst_schema();
    AraPtr e = worked_example(s);
    NormalForm nf = normalize(e, 2, int_semiring());
    CHECK(node_count(nf) > 0);
    // join over a union duplicates material, so growth is expected
    AraPtr u = ara::union_(ara::rel("R", s), ara::rel("R", s));
    AraPtr blow = ara::join(u, ara::rename(AttrBijection::rename_one(attr("A", "s"),
                                                                     attr("C", "s")),
                                           ara::rel("R", s)));
    NormalForm nfb = normalize(blow, 2, int_semiring());
    CHECK(node_count(nfb) >= node_count(blow->args[1]) * 2);
}
