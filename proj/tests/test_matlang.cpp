#include "doctest.h"

#include <random>

#include "araml/matlang.hpp"
#include "fixtures.hpp"

using namespace araml;

namespace {

Matrix random_matrix(int rows, int cols, const Semiring& k, std::mt19937_64& g) {
    Matrix m(rows, cols, k);
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j) m.set(i, j, k->sample(g));
    return m;
}

} // namespace

TEST_CASE("matrix schema inference") {
    MatInstance I = fixtures::university_matrices();
    auto nc = ml::var("no_courses", I.schema);
    auto cf = ml::var("course_fee", I.schema);

    MlPtr product = ml::matmul(nc, cf);
    CHECK(product->schema == SizePair{"student", "1"});
    CHECK(ml_infer_schema(product, I.schema) == product->schema);

    CHECK(ml::transpose(nc)->schema == SizePair{"dptm", "student"});
    CHECK(ml::diag(ml::ones(nc))->schema == SizePair{"student", "student"});

    CHECK_THROWS_AS(ml::matmul(nc, nc), SchemaError);     // inner terms differ
    CHECK_THROWS_AS(ml::diag(nc), SchemaError);           // not a column
    CHECK_THROWS_AS(ml::add(nc, cf), SchemaError);        // shapes differ
    CHECK_THROWS_AS(ml::var("nope", I.schema), SchemaError);
}

TEST_CASE("evaluating the fee query on the matrix instance") {
    MatInstance I = fixtures::university_matrices();
    auto nc = ml::var("no_courses", I.schema);
    auto cf = ml::var("course_fee", I.schema);

    Matrix out = ml_evaluate(ml::matmul(nc, cf), I);
    CHECK(out.rows() == 2);
    CHECK(out.cols() == 1);
    CHECK(out.at(1, 1) == KValue{std::int64_t{2000}});
    CHECK(out.at(2, 1) == KValue{std::int64_t{1840}});
}

TEST_CASE("ones and diag evaluate by the usual definitions") {
    MatInstance I = fixtures::university_matrices();
    auto cf = ml::var("course_fee", I.schema);

    Matrix ones = ml_evaluate(ml::ones(cf), I);
    CHECK(ones.rows() == 3);
    CHECK(ones.cols() == 1);
    for (int i = 1; i <= 3; ++i) CHECK(ones.at(i, 1) == I.semiring->one);

    Matrix d = ml_evaluate(ml::diag(cf), I);
    CHECK(d.rows() == 3);
    CHECK(d.cols() == 3);
    CHECK(d.at(1, 1) == KValue{std::int64_t{300}});
    CHECK(d.at(2, 2) == KValue{std::int64_t{250}});
    CHECK(d.at(3, 3) == KValue{std::int64_t{330}});
    CHECK(d.at(1, 2) == I.semiring->zero);
}

TEST_CASE("algebraic identities hold exactly on random matrices") {
    std::mt19937_64 g(7);
    std::vector<Semiring> rings = {nat_semiring(), int_semiring(), bool_semiring(),
                                   tropical_semiring(), provenance_semiring({"a", "b"})};
    for (const auto& k : rings) {
        CAPTURE(k->name);
        for (int round = 0; round < 20; ++round) {
            int n = 1 + static_cast<int>(g() % 4), m = 1 + static_cast<int>(g() % 4),
                p = 1 + static_cast<int>(g() % 4);
            MatInstance I;
            I.semiring = k;
            I.sizes.set("n", n);
            I.sizes.set("m", m);
            I.sizes.set("p", p);
            I.schema.vars = {{"A", {"n", "m"}}, {"B", {"m", "p"}},
                             {"C", {"m", "p"}},  {"D", {"n", "m"}},
                             {"v", {"n", "1"}},  {"w", {"n", "1"}}};
            for (const auto& [name, s] : I.schema.vars)
                I.matrices.emplace(name, random_matrix(I.sizes.value_of(s.rows),
                                                       I.sizes.value_of(s.cols), k, g));

            auto A = ml::var("A", I.schema), B = ml::var("B", I.schema),
                 C = ml::var("C", I.schema), D = ml::var("D", I.schema),
                 v = ml::var("v", I.schema), w = ml::var("w", I.schema);
            auto eq = [&](const MlPtr& x, const MlPtr& y) {
                return ml_evaluate(x, I).equals(ml_evaluate(y, I));
            };

            CHECK(eq(ml::transpose(ml::transpose(A)), A));
            CHECK(eq(ml::matmul(A, ml::add(B, C)),
                     ml::add(ml::matmul(A, B), ml::matmul(A, C))));
            CHECK(eq(ml::add(A, ml::add(D, D)), ml::add(ml::add(A, D), D)));
            // commutative-only identities
            CHECK(eq(ml::transpose(ml::matmul(A, B)),
                     ml::matmul(ml::transpose(B), ml::transpose(A))));
            CHECK(eq(ml::hadamard(A, D), ml::hadamard(D, A)));
            CHECK(eq(ml::matmul(ml::diag(v), w), ml::hadamard(v, w)));
        }
    }
}
