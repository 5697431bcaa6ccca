#ifndef ARAML_BRIDGE_HPP
#define ARAML_BRIDGE_HPP

#include "araml/ara.hpp"
#include "araml/matlang.hpp"
#include "araml/semiring.hpp"

namespace araml {

// Name mangling between the two worlds. A size term alpha gets a pair of
// compatible attributes row_alpha / col_alpha (sort alpha); an attribute
// sort gets the size term sz_<sort>. Keying the size embedding on the sort
// rather than the attribute keeps compatible attributes on one size term,
// which the selection translation needs to type-check.
Attribute row_attr(const SizeTerm& alpha);
Attribute col_attr(const SizeTerm& alpha);
SizeTerm psi_size(const std::string& sort);

/// Relation schema encoding a size-term pair: at most one row and one col
/// attribute, none for unit sizes.
RelationSchema gamma_schema(const SizePair& s);
DatabaseSchema gamma_schema(const MatrixSchema& s);

/// The domain assignment induced by a size assignment: sort alpha gets
/// {1,...,sigma(alpha)}.
DomainAssignment domains_of_sizes(const SizeAssignment& sigma, const MatrixSchema& s);

/// Encodes a conforming matrix as a relation over gamma_schema(s): the
/// annotation of a tuple is the entry its row/col values address.
KRelation rel_encode(const Matrix& m, const SizePair& s, const SizeAssignment& sigma,
                     const Semiring& k);
Instance rel_encode(const MatInstance& I);

/// Size-term pair encoding a relation schema of at most two attributes,
/// ordered by the global attribute order.
SizePair theta_schema(const RelationSchema& x);
MatrixSchema theta_schema(const DatabaseSchema& s);

/// The size assignment induced by a domain assignment: sz_<sort> maps to
/// the domain cardinality.
SizeAssignment sizes_of_domains(const DomainAssignment& d);

/// Decodes a relation over at most two attributes into a dense matrix.
/// Requires every domain to be consecutive ({1,...,n}).
Matrix mat_decode(const KRelation& r, const DomainAssignment& d);
MatInstance mat_decode(const Instance& I);

struct TranslateOptions {
    /// Replace the duplicated ones-subexpressions by constant-size
    /// variable-anchored columns, keeping output size linear. Off only to
    /// demonstrate the exponential growth of the naive construction.
    bool linear_size = true;
};

/// Constant-size all-ones column of height `alpha`, anchored at the
/// lexicographically first matrix variable offering that size term.
MlPtr tp_column(const SizeTerm& alpha, const MatrixSchema& s);

/// Constant-size expression with relation schema exactly `x`, built from
/// projections of the lexicographically first relation names offering
/// compatible attributes. Only its schema matters to callers.
AraPtr tp_with_schema(const RelationSchema& x, const DatabaseSchema& s);

/// Simulates a matrix expression over gamma_schema(S): encoding the output
/// equals evaluating the translation on the encoded instance. The result
/// stays inside the composition fragment with arity bound 2.
AraPtr translate_ml_to_ara(const MlPtr& e, const MatrixSchema& s,
                           const TranslateOptions& opts = {});

/// Simulates a bounded-arity relational expression over theta_schema(S):
/// decoding the output equals evaluating the translation on the decoded
/// instance, for consecutive domains.
MlPtr translate_ara_to_ml(const AraPtr& e, const DatabaseSchema& s,
                          const TranslateOptions& opts = {});

/// Full pipeline for arity-bound-3 expressions with at most binary output
/// over an at most binary schema: reduce the arity to 2, then translate.
/// Requires a commutative semiring.
MlPtr compile_ara3_to_ml(const AraPtr& e, const DatabaseSchema& s, const Semiring& k,
                         const TranslateOptions& opts = {});

} // namespace araml

#endif
