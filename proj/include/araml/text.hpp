#ifndef ARAML_TEXT_HPP
#define ARAML_TEXT_HPP

#include <string>
#include <string_view>

#include "araml/ara.hpp"
#include "araml/matlang.hpp"

namespace araml {

// Surface syntax, relational side:
//   R, one(e), e1 + e2, proj{A,B}(e), sel{A,B}(e), ren{A->B,...}(e),
//   e1 join e2, comp{A,k}(e1,...,el)
// Attribute sorts come from the schema, not the expression text.
AraPtr parse_ara(std::string_view text, const DatabaseSchema& s);
std::string print_ara(const AraPtr& e);

// Surface syntax, matrix side:
//   M, t(e), ones(e), diag(e), e1 * e2, e1 + e2, e1 .* e2
// (t, ones and diag are reserved words, not variable names.)
MlPtr parse_ml(std::string_view text, const MatrixSchema& s);
std::string print_ml(const MlPtr& e);

/// Sorted annotation table, zero rows suppressed. When `d` is given, rows
/// sort by the domain listing order instead of plain value order.
std::string print_relation(const KRelation& r, const DomainAssignment* d = nullptr);
/// Dense grid, one line per row.
std::string print_matrix(const Matrix& m);

// Relational instance document: sorts with domains, relation schemas as
// (attribute, sort) pairs, and optional annotated tuples.
//
//   sort student = Alice, Bob
//   rel no_courses(student: student, dptm: dptm)
//   tuple no_courses(student = Alice, dptm = CS) = 5
Instance parse_rel_document(std::string_view text, const Semiring& k);
std::string write_rel_document(const Instance& I);

// Matrix instance document: a size assignment block plus per-variable
// dense row-major grids (omitted for schema-only files).
//
//   size student = 2
//   matrix no_courses : student x dptm = [
//     5 2 0
//     2 1 3
//   ]
MatInstance parse_mat_document(std::string_view text, const Semiring& k);
std::string write_mat_document(const MatInstance& I);

} // namespace araml

#endif
