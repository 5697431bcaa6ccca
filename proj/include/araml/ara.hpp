#ifndef ARAML_ARA_HPP
#define ARAML_ARA_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "araml/kdata.hpp"

namespace araml {

struct AraExpr;
using AraPtr = std::shared_ptr<const AraExpr>;

enum class AraKind { Rel, One, Union, Project, Select, Rename, Join, Compose };

/// A node of an annotated-relational-algebra expression. Nodes are immutable
/// and carry their inferred schema; build them through the ara:: factories,
/// which validate and infer eagerly.
struct AraExpr {
    AraKind kind;
    std::string rel_name;              // Rel
    RelationSchema project_onto;       // Project
    std::vector<Attribute> select_on;  // Select, canonical order
    AttrBijection rename_map;          // Rename
    Attribute compose_attr;            // Compose
    int compose_bound = 0;             // Compose
    std::vector<AraPtr> args;
    RelationSchema schema;             // inferred at construction
};

/// Relation name -> relation schema; arity is the largest schema size.
struct DatabaseSchema {
    std::map<std::string, RelationSchema> relations;

    int arity() const;
    const RelationSchema& at(const std::string& name) const; // throws SchemaError
    bool operator==(const DatabaseSchema&) const = default;
};

/// A database instance: one relation per name, plus the ambient domain
/// assignment and semiring.
struct Instance {
    DatabaseSchema schema;
    DomainAssignment domains;
    Semiring semiring;
    std::map<std::string, KRelation> relations;

    const KRelation& at(const std::string& name) const; // throws SchemaError
    /// Checks every relation against its declared schema and the domains.
    void validate() const;
};

namespace ara {

AraPtr rel(std::string name, RelationSchema schema);
AraPtr rel(std::string name, const DatabaseSchema& s);
AraPtr one(AraPtr sub);
AraPtr union_(AraPtr lhs, AraPtr rhs);
AraPtr project(RelationSchema onto, AraPtr sub);
AraPtr project_away(const Attribute& a, AraPtr sub);
AraPtr select(std::vector<Attribute> ys, AraPtr sub);
AraPtr rename(AttrBijection phi, AraPtr sub);
AraPtr join(AraPtr lhs, AraPtr rhs);
AraPtr compose(Attribute a, int bound, std::vector<AraPtr> args);

} // namespace ara

/// Re-derives the schema of `e` against `s`, revalidating every node.
/// Throws SchemaError (with a node path) on any violation.
RelationSchema infer_schema(const AraPtr& e, const DatabaseSchema& s);

struct FragmentReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks that every subexpression schema has at most `k` attributes, that
/// relation names used have arity at most `k`, and that composition nodes
/// appear only when allowed and take at most `k` arguments.
FragmentReport check_fragment(const AraPtr& e, int k, bool allow_composition);

/// Evaluates `e` on `I` by structural recursion over the kernel operations.
KRelation evaluate(const AraPtr& e, const Instance& I);

bool equal(const AraPtr& a, const AraPtr& b);
std::size_t node_count(const AraPtr& e);

} // namespace araml

#endif
