#ifndef ARAML_TESTS_FIXTURES_HPP
#define ARAML_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "araml/ara.hpp"
#include "araml/kdata.hpp"
#include "araml/matlang.hpp"

namespace fixtures {

inline araml::Attribute attr(std::string name, std::string sort) {
    return araml::Attribute{std::move(name), std::move(sort)};
}

inline araml::Atom sym(std::string s) { return araml::Atom::symbol(std::move(s)); }
inline araml::Atom num(std::int64_t n) { return araml::Atom::number(n); }

/// The university example: per-student course counts and per-department
/// fees over the integers.
inline araml::Instance university() {
    using namespace araml;
    Instance I;
    I.semiring = int_semiring();
    I.domains.set_domain("student", {sym("Alice"), sym("Bob")});
    I.domains.set_domain("dptm", {sym("CS"), sym("Math"), sym("Bio")});

    RelationSchema courses({attr("student", "student"), attr("dptm", "dptm")});
    RelationSchema fees({attr("dptm", "dptm")});
    I.schema.relations = {{"no_courses", courses}, {"course_fee", fees}};

    KRelation nc(courses, I.semiring);
    // canonical attribute order is (dptm, student): sort "dptm" < "student"
    auto set_nc = [&](const char* student, const char* dptm, std::int64_t v) {
        Tuple t(2);
        t[courses.index_of(attr("student", "student"))] = sym(student);
        t[courses.index_of(attr("dptm", "dptm"))] = sym(dptm);
        nc.set(std::move(t), v);
    };
    set_nc("Alice", "CS", 5);
    set_nc("Alice", "Math", 2);
    set_nc("Alice", "Bio", 0);
    set_nc("Bob", "CS", 2);
    set_nc("Bob", "Math", 1);
    set_nc("Bob", "Bio", 3);

    KRelation cf(fees, I.semiring);
    cf.set({sym("CS")}, std::int64_t{300});
    cf.set({sym("Math")}, std::int64_t{250});
    cf.set({sym("Bio")}, std::int64_t{330});

    I.relations.emplace("no_courses", std::move(nc));
    I.relations.emplace("course_fee", std::move(cf));
    I.validate();
    return I;
}

/// The same data as matrices: a 2x3 count matrix and a 3x1 fee vector.
inline araml::MatInstance university_matrices() {
    using namespace araml;
    MatInstance I;
    I.semiring = int_semiring();
    I.sizes.set("student", 2);
    I.sizes.set("dptm", 3);
    I.schema.vars = {{"no_courses", {"student", "dptm"}}, {"course_fee", {"dptm", "1"}}};

    Matrix nc(2, 3, I.semiring);
    const std::int64_t counts[2][3] = {{5, 2, 0}, {2, 1, 3}};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 3; ++j) nc.set(i, j, counts[i - 1][j - 1]);

    Matrix cf(3, 1, I.semiring);
    cf.set(1, 1, std::int64_t{300});
    cf.set(2, 1, std::int64_t{250});
    cf.set(3, 1, std::int64_t{330});

    I.matrices.emplace("no_courses", std::move(nc));
    I.matrices.emplace("course_fee", std::move(cf));
    I.validate();
    return I;
}

/// A scalar annotation packed into a schema-free relation, for comparisons.
inline araml::KRelation scalar_relation(const araml::Semiring& k, araml::KValue v) {
    araml::KRelation r({araml::RelationSchema{}}, k);
    r.set({}, std::move(v));
    return r;
}

} // namespace fixtures

#endif
