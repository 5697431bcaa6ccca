#ifndef ARAML_NORMALFORM_HPP
#define ARAML_NORMALFORM_HPP

#include <vector>

#include "araml/ara.hpp"

namespace araml {

/// One branch of a normal form: a list of selection attribute-sets applied
/// to a join of factors. The sets are mutually disjoint and each has at
/// least two attributes; every factor stays inside the composition fragment
/// with arity bound k.
struct NfBranch {
    std::vector<std::vector<Attribute>> selections;
    std::vector<AraPtr> factors;
};

/// A union of selections of joins of bounded-arity expressions. Denotes
/// the union over branches of sel_Ym(...sel_Y1(f1 join ... join fn)).
struct NormalForm {
    int k = 0;
    std::vector<NfBranch> branches;
};

/// The three-way factor rewrite that pushes "project away A after selecting
/// A = B" through a join: factors without A stay, factors with A but not B
/// get A renamed to B, factors with both get the projected selection applied
/// directly. The join of the results equals the projected selection of the
/// join of the inputs.
std::vector<AraPtr> push_proj_sel(const Attribute& a, const Attribute& b,
                                  const std::vector<AraPtr>& factors);

/// Rewrites an expression with arity bound k+1 (over a database schema of
/// arity at most k) into an equivalent normal form whose factors all lie in
/// the composition fragment with bound k. Composition nodes already inside
/// that fragment are accepted and desugared first.
///
/// Requires a commutative semiring; refuses otherwise.
NormalForm normalize(const AraPtr& e, int k, const Semiring& s);

/// The normal form as a plain expression (union of selections of joins).
AraPtr denote(const NormalForm& nf);
AraPtr branch_expr(const NfBranch& branch);

std::size_t node_count(const NormalForm& nf);

/// Flattens normalize(e, k) back into a single expression inside the
/// composition fragment with bound k. Requires the output schema of `e` to
/// have at most k attributes.
AraPtr reduce_arity(const AraPtr& e, int k, const Semiring& s);

} // namespace araml

#endif
