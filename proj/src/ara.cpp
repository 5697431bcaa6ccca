#include "araml/ara.hpp"

#include <algorithm>
#include <set>

namespace araml {

int DatabaseSchema::arity() const {
    std::size_t m = 0;
    for (const auto& [name, schema] : relations) m = std::max(m, schema.size());
    return static_cast<int>(m);
}

const RelationSchema& DatabaseSchema::at(const std::string& name) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw SchemaError("unknown relation name '" + name + "'");
    return it->second;
}

const KRelation& Instance::at(const std::string& name) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw SchemaError("instance has no relation '" + name + "'");
    return it->second;
}

void Instance::validate() const {
    for (const auto& [name, schema] : schema.relations) {
        domains.require_covers(schema);
        auto it = relations.find(name);
        if (it == relations.end())
            throw SchemaError("instance is missing relation '" + name + "'");
        if (!(it->second.schema() == schema))
            throw SchemaError("relation '" + name + "' does not match its declared schema");
        for (const auto& [t, v] : it->second.rows()) {
            for (std::size_t i = 0; i < schema.size(); ++i) {
                const auto& dom = domains.domain(schema.at(i).sort);
                if (std::find(dom.begin(), dom.end(), t[i]) == dom.end())
                    throw SchemaError("tuple value '" + t[i].str() +
                                      "' outside the domain of sort '" + schema.at(i).sort +
                                      "' in relation '" + name + "'");
            }
        }
    }
}

namespace ara {

AraPtr rel(std::string name, RelationSchema schema) {
    auto e = std::make_shared<AraExpr>();
    e->kind = AraKind::Rel;
    e->rel_name = std::move(name);
    e->schema = std::move(schema);
    return e;
}

AraPtr rel(std::string name, const DatabaseSchema& s) {
    RelationSchema schema = s.at(name);
    return rel(std::move(name), std::move(schema));
}

AraPtr one(AraPtr sub) {
    auto e = std::make_shared<AraExpr>();
    e->kind = AraKind::One;
    e->schema = sub->schema;
    e->args = {std::move(sub)};
    return e;
}

AraPtr union_(AraPtr lhs, AraPtr rhs) {
    if (!(lhs->schema == rhs->schema))
        throw SchemaError("union of expressions with different schemas");
    auto e = std::make_shared<AraExpr>();
    e->kind = AraKind::Union;
    e->schema = lhs->schema;
    e->args = {std::move(lhs), std::move(rhs)};
    return e;
}

AraPtr project(RelationSchema onto, AraPtr sub) {
    if (!onto.subset_of(sub->schema))
        throw SchemaError("projection target is not a subset of the subexpression schema");
    auto e = std::make_shared<AraExpr>();
    e->kind = AraKind::Project;
    e->schema = onto;
    e->project_onto = std::move(onto);
    e->args = {std::move(sub)};
    return e;
}

AraPtr project_away(const Attribute& a, AraPtr sub) {
    if (!sub->schema.contains(a))
        throw SchemaError("cannot project away '" + a.name + "': not in schema");
    RelationSchema onto = sub->schema.minus(a);
    return project(std::move(onto), std::move(sub));
}

AraPtr select(std::vector<Attribute> ys, AraPtr sub) {
    if (ys.empty()) throw SchemaError("selection needs at least one attribute");
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (const auto& y : ys) {
        if (!sub->schema.contains(y))
            throw SchemaError("selection attribute '" + y.name + "' not in schema");
        if (!y.compatible_with(ys.front()))
            throw SchemaError("selection attributes '" + ys.front().name + "' and '" + y.name +
                              "' are incompatible");
    }
    auto e = std::make_shared<AraExpr>();
    e->kind = AraKind::Select;
    e->schema = sub->schema;
    e->select_on = std::move(ys);
    e->args = {std::move(sub)};
    return e;
}

AraPtr rename(AttrBijection phi, AraPtr sub) {
    RelationSchema target = phi.restrict_to(sub->schema).apply(sub->schema);
    if (target.size() != sub->schema.size())
        throw SchemaError("renaming is not a bijection on the subexpression schema");
    auto e = std::make_shared<AraExpr>();
    e->kind = AraKind::Rename;
    e->schema = std::move(target);
    e->rename_map = phi.restrict_to(sub->schema);
    e->args = {std::move(sub)};
    return e;
}

AraPtr join(AraPtr lhs, AraPtr rhs) {
    auto e = std::make_shared<AraExpr>();
    e->kind = AraKind::Join;
    e->schema = lhs->schema.union_with(rhs->schema);
    e->args = {std::move(lhs), std::move(rhs)};
    return e;
}

AraPtr compose(Attribute a, int bound, std::vector<AraPtr> args) {
    if (args.empty() || static_cast<int>(args.size()) > bound)
        throw SchemaError("composition takes between 1 and " + std::to_string(bound) +
                          " arguments, got " + std::to_string(args.size()));
    RelationSchema united;
    for (const auto& arg : args) {
        if (!arg->schema.contains(a))
            throw SchemaError("composition attribute '" + a.name +
                              "' missing from an argument schema");
        united = united.union_with(arg->schema);
    }
    auto e = std::make_shared<AraExpr>();
    e->kind = AraKind::Compose;
    e->schema = united.minus(a);
    e->compose_attr = std::move(a);
    e->compose_bound = bound;
    e->args = std::move(args);
    return e;
}

} // namespace ara

namespace {

RelationSchema infer_at(const AraPtr& e, const DatabaseSchema& s, const std::string& path) {
    auto fail = [&](const std::string& msg) -> RelationSchema {
        throw SchemaError(msg, path);
    };
    switch (e->kind) {
    case AraKind::Rel: {
        auto it = s.relations.find(e->rel_name);
        if (it == s.relations.end()) return fail("unknown relation name '" + e->rel_name + "'");
        return it->second;
    }
    case AraKind::One:
        return infer_at(e->args[0], s, path + ".one");
    case AraKind::Union: {
        RelationSchema l = infer_at(e->args[0], s, path + ".union.lhs");
        RelationSchema r = infer_at(e->args[1], s, path + ".union.rhs");
        if (!(l == r)) return fail("union of expressions with different schemas");
        return l;
    }
    case AraKind::Project: {
        RelationSchema sub = infer_at(e->args[0], s, path + ".proj");
        if (!e->project_onto.subset_of(sub))
            return fail("projection target is not a subset of the subexpression schema");
        return e->project_onto;
    }
    case AraKind::Select: {
        RelationSchema sub = infer_at(e->args[0], s, path + ".sel");
        for (const auto& y : e->select_on) {
            if (!sub.contains(y))
                return fail("selection attribute '" + y.name + "' not in schema");
            if (!y.compatible_with(e->select_on.front()))
                return fail("selection attributes are incompatible");
        }
        return sub;
    }
    case AraKind::Rename: {
        RelationSchema sub = infer_at(e->args[0], s, path + ".ren");
        RelationSchema target = e->rename_map.restrict_to(sub).apply(sub);
        if (target.size() != sub.size())
            return fail("renaming is not a bijection on the subexpression schema");
        return target;
    }
    case AraKind::Join: {
        RelationSchema l = infer_at(e->args[0], s, path + ".join.lhs");
        RelationSchema r = infer_at(e->args[1], s, path + ".join.rhs");
        return l.union_with(r);
    }
    case AraKind::Compose: {
        RelationSchema united;
        for (std::size_t i = 0; i < e->args.size(); ++i) {
            RelationSchema sub = infer_at(e->args[i], s, path + ".comp[" + std::to_string(i) + "]");
            if (!sub.contains(e->compose_attr))
                return fail("composition attribute '" + e->compose_attr.name +
                            "' missing from argument " + std::to_string(i));
            united = united.union_with(sub);
        }
        if (static_cast<int>(e->args.size()) > e->compose_bound)
            return fail("composition with more than " + std::to_string(e->compose_bound) +
                        " arguments");
        return united.minus(e->compose_attr);
    }
    }
    throw InvariantError("unhandled expression kind");
}

void fragment_walk(const AraPtr& e, int k, bool allow_composition, FragmentReport& report,
                   std::set<std::string>& seen_rels) {
    if (static_cast<int>(e->schema.size()) > k) {
        report.ok = false;
        report.violations.push_back("subexpression schema has " +
                                    std::to_string(e->schema.size()) + " attributes, bound is " +
                                    std::to_string(k));
    }
    if (e->kind == AraKind::Rel && seen_rels.insert(e->rel_name).second &&
        static_cast<int>(e->schema.size()) > k) {
        report.ok = false;
        report.violations.push_back("relation '" + e->rel_name + "' has arity above " +
                                    std::to_string(k));
    }
    if (e->kind == AraKind::Compose) {
        if (!allow_composition) {
            report.ok = false;
            report.violations.push_back("composition not allowed in this fragment");
        }
        if (static_cast<int>(e->args.size()) > k) {
            report.ok = false;
            report.violations.push_back("composition takes " + std::to_string(e->args.size()) +
                                        " arguments, bound is " + std::to_string(k));
        }
    }
    for (const auto& a : e->args) fragment_walk(a, k, allow_composition, report, seen_rels);
}

} // namespace

RelationSchema infer_schema(const AraPtr& e, const DatabaseSchema& s) {
    return infer_at(e, s, "e");
}

FragmentReport check_fragment(const AraPtr& e, int k, bool allow_composition) {
    FragmentReport report;
    std::set<std::string> seen;
    fragment_walk(e, k, allow_composition, report, seen);
    return report;
}

KRelation evaluate(const AraPtr& e, const Instance& I) {
    switch (e->kind) {
    case AraKind::Rel:
        return I.at(e->rel_name);
    case AraKind::One:
        // depends only on the subexpression schema, never on its value
        return one_relation(e->args[0]->schema, I.domains, I.semiring);
    case AraKind::Union:
        return union_rel(evaluate(e->args[0], I), evaluate(e->args[1], I));
    case AraKind::Project:
        return projection(evaluate(e->args[0], I), e->project_onto);
    case AraKind::Select:
        return selection(evaluate(e->args[0], I), e->select_on);
    case AraKind::Rename:
        return renaming(evaluate(e->args[0], I), e->rename_map);
    case AraKind::Join:
        return join(evaluate(e->args[0], I), evaluate(e->args[1], I));
    case AraKind::Compose: {
        std::vector<KRelation> rs;
        rs.reserve(e->args.size());
        for (const auto& a : e->args) rs.push_back(evaluate(a, I));
        return composition(e->compose_attr, e->compose_bound, rs);
    }
    }
    throw InvariantError("unhandled expression kind");
}

bool equal(const AraPtr& a, const AraPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind || a->args.size() != b->args.size()) return false;
    switch (a->kind) {
    case AraKind::Rel:
        if (a->rel_name != b->rel_name || !(a->schema == b->schema)) return false;
        break;
    case AraKind::Project:
        if (!(a->project_onto == b->project_onto)) return false;
        break;
    case AraKind::Select:
        if (a->select_on != b->select_on) return false;
        break;
    case AraKind::Rename:
        if (!(a->rename_map == b->rename_map)) return false;
        break;
    case AraKind::Compose:
        if (!(a->compose_attr == b->compose_attr) || a->compose_bound != b->compose_bound)
            return false;
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

std::size_t node_count(const AraPtr& e) {
    std::size_t n = 1;
    for (const auto& a : e->args) n += node_count(a);
    return n;
}

} // namespace araml
