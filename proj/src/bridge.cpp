#include "araml/bridge.hpp"

#include <algorithm>
#include <set>

#include "araml/normalform.hpp"

namespace araml {

Attribute row_attr(const SizeTerm& alpha) {
    if (alpha == kUnitSize) throw InvariantError("no row attribute for the unit size");
    return Attribute{"row_" + alpha, alpha};
}

Attribute col_attr(const SizeTerm& alpha) {
    if (alpha == kUnitSize) throw InvariantError("no col attribute for the unit size");
    return Attribute{"col_" + alpha, alpha};
}

SizeTerm psi_size(const std::string& sort) { return "sz_" + sort; }

RelationSchema gamma_schema(const SizePair& s) {
    std::vector<Attribute> attrs;
    if (s.rows != kUnitSize) attrs.push_back(row_attr(s.rows));
    if (s.cols != kUnitSize) attrs.push_back(col_attr(s.cols));
    return RelationSchema(std::move(attrs));
}

DatabaseSchema gamma_schema(const MatrixSchema& s) {
    DatabaseSchema out;
    for (const auto& [name, sp] : s.vars) out.relations.emplace(name, gamma_schema(sp));
    return out;
}

DomainAssignment domains_of_sizes(const SizeAssignment& sigma, const MatrixSchema& s) {
    std::set<SizeTerm> used;
    for (const auto& [name, sp] : s.vars) {
        used.insert(sp.rows);
        used.insert(sp.cols);
    }
    DomainAssignment d;
    for (const auto& term : used) {
        if (term == kUnitSize) continue;
        std::vector<Atom> elems;
        for (int i = 1; i <= sigma.value_of(term); ++i) elems.push_back(Atom::number(i));
        d.set_domain(term, std::move(elems));
    }
    return d;
}

KRelation rel_encode(const Matrix& m, const SizePair& s, const SizeAssignment& sigma,
                     const Semiring& k) {
    if (!m.conforms_to(s, sigma))
        throw SchemaError("matrix does not conform to " + s.str());
    RelationSchema schema = gamma_schema(s);
    KRelation out(schema, k);
    for (int i = 1; i <= m.rows(); ++i)
        for (int j = 1; j <= m.cols(); ++j) {
            Tuple t(schema.size());
            if (s.rows != kUnitSize)
                t[schema.index_of(row_attr(s.rows))] = Atom::number(i);
            if (s.cols != kUnitSize)
                t[schema.index_of(col_attr(s.cols))] = Atom::number(j);
            out.set(std::move(t), m.at(i, j));
        }
    return out;
}

Instance rel_encode(const MatInstance& I) {
    Instance out;
    out.semiring = I.semiring;
    out.schema = gamma_schema(I.schema);
    out.domains = domains_of_sizes(I.sizes, I.schema);
    for (const auto& [name, sp] : I.schema.vars)
        out.relations.emplace(name, rel_encode(I.at(name), sp, I.sizes, I.semiring));
    return out;
}

SizePair theta_schema(const RelationSchema& x) {
    if (x.size() > 2)
        throw SchemaError("only schemas of at most two attributes have a matrix encoding");
    if (x.size() == 2) return {psi_size(x.at(0).sort), psi_size(x.at(1).sort)};
    if (x.size() == 1) return {psi_size(x.at(0).sort), kUnitSize};
    return {kUnitSize, kUnitSize};
}

MatrixSchema theta_schema(const DatabaseSchema& s) {
    MatrixSchema out;
    for (const auto& [name, schema] : s.relations) out.vars.emplace(name, theta_schema(schema));
    return out;
}

SizeAssignment sizes_of_domains(const DomainAssignment& d) {
    SizeAssignment sigma;
    for (const auto& [sort, elems] : d.domains())
        sigma.set(psi_size(sort), static_cast<int>(elems.size()));
    return sigma;
}

Matrix mat_decode(const KRelation& r, const DomainAssignment& d) {
    if (!d.consecutive())
        throw SchemaError("matrix decoding needs consecutive domains ({1,...,n})");
    const RelationSchema& x = r.schema();
    if (x.size() > 2)
        throw SchemaError("only relations over at most two attributes decode to matrices");
    d.require_covers(x);
    int rows = x.size() >= 1 ? static_cast<int>(d.size_of(x.at(0).sort)) : 1;
    int cols = x.size() == 2 ? static_cast<int>(d.size_of(x.at(1).sort)) : 1;
    Matrix out(rows, cols, r.semiring());
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j) {
            Tuple t;
            if (x.size() >= 1) t.push_back(Atom::number(i));
            if (x.size() == 2) t.push_back(Atom::number(j));
            out.set(i, j, r.at(t));
        }
    return out;
}

MatInstance mat_decode(const Instance& I) {
    MatInstance out;
    out.semiring = I.semiring;
    out.schema = theta_schema(I.schema);
    out.sizes = sizes_of_domains(I.domains);
    for (const auto& [name, rel] : I.relations)
        out.matrices.emplace(name, mat_decode(rel, I.domains));
    return out;
}

MlPtr tp_column(const SizeTerm& alpha, const MatrixSchema& s) {
    if (s.vars.empty()) throw InvariantError("tp_column needs at least one matrix variable");
    if (alpha == kUnitSize) {
        const auto& [name, sp] = *s.vars.begin();
        return ml::ones(ml::transpose(ml::ones(ml::var(name, sp))));
    }
    for (const auto& [name, sp] : s.vars) {
        if (sp.rows == alpha) return ml::ones(ml::var(name, sp));
        if (sp.cols == alpha) return ml::ones(ml::transpose(ml::var(name, sp)));
    }
    throw InvariantError("no matrix variable offers the size term '" + alpha + "'");
}

AraPtr tp_with_schema(const RelationSchema& x, const DatabaseSchema& s) {
    if (s.relations.empty()) throw InvariantError("tp_with_schema needs a relation name");
    if (x.empty())
        return ara::project(RelationSchema{},
                            ara::rel(s.relations.begin()->first, s.relations.begin()->second));
    AraPtr acc;
    for (const auto& a : x) {
        AraPtr factor;
        for (const auto& [name, schema] : s.relations) {
            for (const auto& cand : schema) {
                if (!cand.compatible_with(a)) continue;
                factor = ara::project(RelationSchema({cand}), ara::rel(name, schema));
                if (!(cand == a))
                    factor = ara::rename(AttrBijection::rename_one(cand, a), factor);
                break;
            }
            if (factor) break;
        }
        if (!factor)
            throw InvariantError("no relation offers an attribute compatible with '" + a.name +
                                 "'");
        acc = acc ? ara::join(acc, factor) : factor;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Matrix language -> relational fragment.

namespace {

class MlToAra {
public:
    MlToAra(const MatrixSchema& s, const TranslateOptions& opts) : schema_(s), opts_(opts) {}

    AraPtr run(const MlPtr& e) {
        const SizeTerm alpha = e->schema.rows, beta = e->schema.cols;
        switch (e->kind) {
        case MlKind::Var:
            return ara::rel(e->var_name, gamma_schema(schema_.at(e->var_name)));
        case MlKind::Transpose: {
            AraPtr sub = run(e->args[0]);
            if (alpha == kUnitSize && beta == kUnitSize) return sub;
            std::vector<std::pair<Attribute, Attribute>> pairs;
            if (alpha != kUnitSize) pairs.push_back({col_attr(alpha), row_attr(alpha)});
            if (beta != kUnitSize) pairs.push_back({row_attr(beta), col_attr(beta)});
            return ara::rename(AttrBijection(std::move(pairs)), sub);
        }
        case MlKind::Ones: {
            AraPtr sub = run(e->args[0]);
            RelationSchema onto = alpha == kUnitSize ? RelationSchema{}
                                                     : RelationSchema({row_attr(alpha)});
            return ara::one(ara::project(std::move(onto), sub));
        }
        case MlKind::Diag: {
            AraPtr sub = run(e->args[0]);
            if (alpha == kUnitSize) return sub;
            AttrBijection shift = AttrBijection::rename_one(row_attr(alpha), col_attr(alpha));
            // the mask is all-ones over col_alpha; the adapted form anchors
            // it at a variable instead of duplicating the operand
            AraPtr mask = opts_.linear_size
                              ? ara::rename(shift, run(tp_column(alpha, schema_)))
                              : ara::one(ara::rename(shift, run(e->args[0])));
            return ara::select({row_attr(alpha), col_attr(alpha)}, ara::join(sub, mask));
        }
        case MlKind::MatMul: {
            AraPtr lhs = run(e->args[0]);
            AraPtr rhs = run(e->args[1]);
            const SizeTerm gamma = e->args[0]->schema.cols;
            if (gamma == kUnitSize) return ara::join(lhs, rhs);
            Attribute mid{"_mid_" + gamma, gamma};
            AraPtr l = ara::rename(AttrBijection::rename_one(col_attr(gamma), mid), lhs);
            AraPtr r = ara::rename(AttrBijection::rename_one(row_attr(gamma), mid), rhs);
            return ara::compose(mid, 2, {l, r});
        }
        case MlKind::Add:
            return ara::union_(run(e->args[0]), run(e->args[1]));
        case MlKind::Hadamard:
            return ara::join(run(e->args[0]), run(e->args[1]));
        }
        throw InvariantError("unhandled expression kind");
    }

private:
    const MatrixSchema& schema_;
    TranslateOptions opts_;
};

} // namespace

AraPtr translate_ml_to_ara(const MlPtr& e, const MatrixSchema& s, const TranslateOptions& opts) {
    if (!(ml_infer_schema(e, s) == e->schema))
        throw SchemaError("expression does not type-check against the given matrix schema");
    AraPtr out = MlToAra(s, opts).run(e);
    if (!(out->schema == gamma_schema(e->schema)))
        throw InvariantError("translated schema disagrees with the schema encoding");
    return out;
}

// ---------------------------------------------------------------------------
// Relational fragment -> matrix language.

namespace {

class AraToMl {
public:
    AraToMl(const DatabaseSchema& s, const TranslateOptions& opts)
        : schema_(s), mat_schema_(theta_schema(s)), opts_(opts) {}

    MlPtr run(const AraPtr& e) {
        switch (e->kind) {
        case AraKind::Rel:
            return ml::var(e->rel_name, mat_schema_.at(e->rel_name));
        case AraKind::Union:
            return ml::add(run(e->args[0]), run(e->args[1]));
        case AraKind::Project: {
            const AraPtr& sub = e->args[0];
            RelationSchema gone = sub->schema.minus(e->project_onto);
            if (gone.empty()) return run(sub);
            if (gone.size() == 1) return project_one_away(gone.at(0), sub);
            // peel one attribute at a time, in canonical order
            return run(ara::project(e->project_onto,
                                    ara::project_away(gone.at(0), sub)));
        }
        case AraKind::Select: {
            const AraPtr& sub = e->args[0];
            if (e->select_on.size() <= 1) return run(sub);
            // both attributes share a sort, so the diagonal mask types
            return ml::hadamard(run(sub), ml::diag(ones_of(sub)));
        }
        case AraKind::Rename: {
            const AraPtr& sub = e->args[0];
            if (sub->schema.size() == 2) {
                const Attribute& a1 = sub->schema.at(0);
                const Attribute& a2 = sub->schema.at(1);
                if (e->rename_map.apply(a2) < e->rename_map.apply(a1))
                    return ml::transpose(run(sub));
            }
            return run(sub);
        }
        case AraKind::One: {
            const AraPtr& sub = e->args[0];
            if (sub->schema.size() == 2)
                return ml::matmul(ones_of(sub), ml::transpose(ones_of_transposed(sub)));
            return ones_of(sub);
        }
        case AraKind::Join:
            return join_cases(e);
        case AraKind::Compose:
            return compose_cases(e);
        }
        throw InvariantError("unhandled expression kind");
    }

private:
    // the all-ones column of the row size of theta(S(sub)); with the
    // linear-size adaptation it is anchored at a variable instead of
    // duplicating the operand's translation
    MlPtr ones_of(const AraPtr& sub) {
        if (opts_.linear_size) return tp_column(theta_schema(sub->schema).rows, mat_schema_);
        return ml::ones(run(sub));
    }
    // likewise for the column size
    MlPtr ones_of_transposed(const AraPtr& sub) {
        if (opts_.linear_size) return tp_column(theta_schema(sub->schema).cols, mat_schema_);
        return ml::ones(ml::transpose(run(sub)));
    }

    MlPtr project_one_away(const Attribute& a, const AraPtr& sub) {
        if (sub->schema.size() == 2 && a == sub->schema.at(1))
            return ml::matmul(run(sub), ones_of_transposed(sub)); // drop the column attribute
        if (sub->schema.size() == 2) // drop the row attribute; transpose restores orientation
            return ml::transpose(ml::matmul(ml::transpose(ones_of(sub)), run(sub)));
        return ml::matmul(ml::transpose(ones_of(sub)), run(sub)); // scalar total
    }

    // scalar embedding: stretch the scalar e to the shape of e'
    MlPtr scalar_to_shape(const AraPtr& scalar, const AraPtr& shaped) {
        return ml::matmul(ml::matmul(ones_of(shaped), run(scalar)),
                          ml::transpose(ones_of_transposed(shaped)));
    }

    MlPtr join_cases(const AraPtr& e) {
        const AraPtr& e1 = e->args[0];
        const AraPtr& e2 = e->args[1];
        const RelationSchema &x1 = e1->schema, &x2 = e2->schema;
        if (x1 == x2) return ml::hadamard(run(e1), run(e2));
        if (x1.empty()) return ml::hadamard(scalar_to_shape(e1, e2), run(e2));
        if (x2.empty()) return ml::hadamard(run(e1), scalar_to_shape(e2, e1));

        const RelationSchema& united = e->schema; // two attributes here
        const Attribute& a1 = united.at(0);
        const Attribute& a2 = united.at(1);
        auto is = [](const RelationSchema& x, std::initializer_list<Attribute> attrs) {
            return x == RelationSchema(std::vector<Attribute>(attrs));
        };
        if (is(x1, {a1}) && is(x2, {a2}))
            return ml::matmul(run(e1), ml::transpose(run(e2)));
        if (is(x1, {a2}) && is(x2, {a1}))
            return ml::transpose(ml::matmul(run(e1), ml::transpose(run(e2))));
        if (is(x1, {a1}) && is(x2, {a1, a2}))
            return ml::matmul(ml::diag(run(e1)), run(e2));
        if (is(x1, {a1, a2}) && is(x2, {a1}))
            return ml::transpose(ml::matmul(ml::transpose(run(e1)), ml::diag(run(e2))));
        if (is(x1, {a1, a2}) && is(x2, {a2}))
            return ml::matmul(run(e1), ml::diag(run(e2)));
        if (is(x1, {a2}) && is(x2, {a1, a2}))
            return ml::transpose(ml::matmul(ml::diag(run(e1)), ml::transpose(run(e2))));
        throw InvariantError("join shape outside the nine-case table");
    }

    MlPtr compose_cases(const AraPtr& e) {
        const Attribute& shared = e->compose_attr;
        if (e->args.size() == 1)
            return run(ara::project_away(shared, e->args[0]));
        const AraPtr& e1 = e->args[0];
        const AraPtr& e2 = e->args[1];
        RelationSchema only1 = e1->schema.minus(e2->schema);
        RelationSchema only2 = e2->schema.minus(e1->schema);
        if (only1.size() + only2.size() <= 1)
            // the join stays binary, so composing lowers to project-away
            return run(ara::project_away(shared, ara::join(e1, e2)));
        const Attribute& a1 = only1.at(0);
        const Attribute& a2 = only2.at(0);
        auto oriented = [](MlPtr m, const Attribute& row, const Attribute& col) {
            return row < col ? m : ml::transpose(std::move(m));
        };
        MlPtr prod = ml::matmul(oriented(run(e1), a1, shared), oriented(run(e2), shared, a2));
        return oriented(std::move(prod), a1, a2);
    }

    const DatabaseSchema& schema_;
    MatrixSchema mat_schema_;
    TranslateOptions opts_;
};

} // namespace

MlPtr translate_ara_to_ml(const AraPtr& e, const DatabaseSchema& s,
                          const TranslateOptions& opts) {
    if (s.arity() > 2)
        throw FragmentError("the database schema must have arity at most 2");
    FragmentReport fragment = check_fragment(e, 2, true);
    if (!fragment.ok)
        throw FragmentError("expression is outside the bounded composition fragment: " +
                            fragment.violations.front());
    infer_schema(e, s); // revalidates against the given schema
    MlPtr out = AraToMl(s, opts).run(e);
    if (!(out->schema == theta_schema(e->schema)))
        throw InvariantError("translated schema disagrees with the schema encoding");
    return out;
}

MlPtr compile_ara3_to_ml(const AraPtr& e, const DatabaseSchema& s, const Semiring& k,
                         const TranslateOptions& opts) {
    if (!k->commutative)
        throw CommutativityError("the compilation pipeline requires a commutative semiring; '" +
                                 k->name + "' is not commutative");
    if (s.arity() > 2)
        throw FragmentError("the database schema must have arity at most 2");
    if (e->schema.size() > 2)
        throw FragmentError("the output schema must have at most 2 attributes");
    FragmentReport fragment = check_fragment(e, 3, true);
    if (!fragment.ok)
        throw FragmentError("expression is outside arity bound 3: " +
                            fragment.violations.front());
    AraPtr reduced = reduce_arity(e, 2, k);
    return translate_ara_to_ml(reduced, s, opts);
}

} // namespace araml
