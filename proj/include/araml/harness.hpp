#ifndef ARAML_HARNESS_HPP
#define ARAML_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "araml/ara.hpp"
#include "araml/matlang.hpp"

namespace araml {

/// Knobs for the random generators. The same seed always reproduces the
/// same schemas, instances and expressions.
struct GenConfig {
    std::uint64_t seed = 1;
    int max_depth = 5;
    int max_domain_size = 3;
    int max_schema_arity = 2;
    std::string semiring = "int";
    int node_budget = 14; // soft cap on generated expression tree size
};

using Rng = std::mt19937_64;

/// Random database schema of arity at most cfg.max_schema_arity, drawing
/// attributes from a small pool so that generated relations share sorts
/// and names.
DatabaseSchema gen_db_schema(Rng& g, const GenConfig& cfg);

/// Consecutive domains of size 1..cfg.max_domain_size for every sort used.
DomainAssignment gen_domains(const DatabaseSchema& s, Rng& g, const GenConfig& cfg);

/// Dense random relation over `schema`: every tuple gets a sampled
/// annotation, explicit zeros included.
KRelation gen_relation(const RelationSchema& schema, const DomainAssignment& d,
                       const Semiring& k, Rng& g);

/// Random instance with consecutive domains and dense sampled relations.
Instance gen_instance(const DatabaseSchema& s, const Semiring& k, Rng& g, const GenConfig& cfg);

/// Random well-typed expression in the fragment with arity bound `k`,
/// composition allowed when `with_composition`. All operators are reachable.
AraPtr gen_ara_expr(const DatabaseSchema& s, int k, bool with_composition, Rng& g,
                    const GenConfig& cfg);

MatrixSchema gen_matrix_schema(Rng& g, const GenConfig& cfg);
MatInstance gen_mat_instance(const MatrixSchema& s, const Semiring& k, Rng& g,
                             const GenConfig& cfg);
/// Random well-typed matrix expression with every constructor reachable.
MlPtr gen_ml_expr(const MatrixSchema& s, Rng& g, const GenConfig& cfg);

/// Independent, maximally naive evaluator: materializes the full dense
/// tuple space at every node and applies the textbook definitions. Shares
/// no evaluation code with the sparse kernel; exists to certify it.
KRelation oracle_evaluate(const AraPtr& e, const Instance& I);

struct IndistVerdict {
    bool distinguished = false;
    AraPtr witness;             // set when distinguished
    int expressions_tried = 0;
    int depth_limit = 0;
    int budget = 0;
};

/// Searches for a closed expression of arity bound 3 separating two binary
/// relations over the same schema and domains. A negative verdict only
/// means "not distinguished within this depth and budget".
IndistVerdict check_indistinguishable(const KRelation& r1, const KRelation& r2,
                                      const DomainAssignment& d, int depth, int budget);

} // namespace araml

#endif
