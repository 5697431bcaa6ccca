#include "araml/harness.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace araml {

namespace {

int rand_int(Rng& g, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

template <typename T>
const T& pick(Rng& g, const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(rand_int(g, 0, static_cast<int>(xs.size()) - 1))];
}

} // namespace

DatabaseSchema gen_db_schema(Rng& g, const GenConfig& cfg) {
    const std::vector<std::string> sort_names = {"s", "t", "u"};
    const std::vector<std::string> attr_names = {"A", "B", "C", "D", "E", "F"};
    int nsorts = rand_int(g, 1, 2);

    // pool of attributes spread over the sorts; several share each sort so
    // selections and renamings have compatible material to work with
    std::vector<Attribute> pool;
    for (std::size_t i = 0; i < attr_names.size(); ++i)
        pool.push_back({attr_names[i], sort_names[i % static_cast<std::size_t>(nsorts)]});

    DatabaseSchema out;
    const std::vector<std::string> rel_names = {"R", "S", "T", "U"};
    int nrels = rand_int(g, 2, 3);
    for (int r = 0; r < nrels; ++r) {
        int arity = rand_int(g, 0, cfg.max_schema_arity);
        if (r == 0 && arity == 0) arity = std::max(1, cfg.max_schema_arity);
        std::vector<Attribute> attrs;
        std::vector<Attribute> shuffled = pool;
        std::shuffle(shuffled.begin(), shuffled.end(), g);
        for (int i = 0; i < arity; ++i) attrs.push_back(shuffled[static_cast<std::size_t>(i)]);
        out.relations.emplace(rel_names[static_cast<std::size_t>(r)],
                              RelationSchema(std::move(attrs)));
    }
    return out;
}

DomainAssignment gen_domains(const DatabaseSchema& s, Rng& g, const GenConfig& cfg) {
    std::set<std::string> sorts;
    for (const auto& [name, schema] : s.relations)
        for (const auto& a : schema) sorts.insert(a.sort);
    DomainAssignment d;
    for (const auto& sort : sorts) {
        int n = rand_int(g, 1, cfg.max_domain_size);
        std::vector<Atom> elems;
        for (int i = 1; i <= n; ++i) elems.push_back(Atom::number(i));
        d.set_domain(sort, std::move(elems));
    }
    return d;
}

KRelation gen_relation(const RelationSchema& schema, const DomainAssignment& d,
                       const Semiring& k, Rng& g) {
    KRelation r(schema, k);
    for (auto& t : all_tuples(schema, d)) r.set(std::move(t), k->sample(g));
    return r;
}

Instance gen_instance(const DatabaseSchema& s, const Semiring& k, Rng& g,
                      const GenConfig& cfg) {
    Instance I;
    I.schema = s;
    I.semiring = k;
    I.domains = gen_domains(s, g, cfg);
    for (const auto& [name, schema] : s.relations)
        I.relations.emplace(name, gen_relation(schema, I.domains, k, g));
    return I;
}

namespace {

struct PoolEntry {
    AraPtr e;
    int depth = 0;
    std::size_t tree_size = 1;
};

std::vector<Attribute> compatible_group(const RelationSchema& s, Rng& g) {
    std::map<std::string, std::vector<Attribute>> by_sort;
    for (const auto& a : s) by_sort[a.sort].push_back(a);
    std::vector<std::vector<Attribute>> groups;
    for (auto& [sort, attrs] : by_sort) groups.push_back(attrs);
    if (groups.empty()) return {};
    return pick(g, groups);
}

} // namespace

AraPtr gen_ara_expr(const DatabaseSchema& s, int k, bool with_composition, Rng& g,
                    const GenConfig& cfg) {
    std::vector<PoolEntry> pool;
    for (const auto& [name, schema] : s.relations)
        if (static_cast<int>(schema.size()) <= k) pool.push_back({ara::rel(name, schema), 0, 1});
    if (pool.empty()) throw Error("no relation fits the requested fragment");

    // fresh attribute names the generator may rename to
    const std::vector<std::string> fresh = {"N1", "N2", "N3"};

    auto fits = [&](const PoolEntry& a) {
        return a.depth < cfg.max_depth &&
               a.tree_size < static_cast<std::size_t>(cfg.node_budget);
    };
    // recency bias keeps composing what was just built instead of starting over
    auto pick_entry = [&]() -> PoolEntry {
        if (rand_int(g, 0, 1) == 0) return pool.back();
        return pick(g, pool);
    };

    PoolEntry last = pick(g, pool);
    int steps = rand_int(g, 3, std::max(4, cfg.node_budget));
    for (int step = 0; step < steps; ++step) {
        std::optional<PoolEntry> made;
        for (int attempt = 0; attempt < 4 && !made; ++attempt) {
            // joins and projections carry most of the weight
            static const int kOps[] = {0, 1, 2, 2, 2, 3, 3, 4, 5, 5, 5, 6};
            int op = kOps[static_cast<std::size_t>(rand_int(g, 0, 11))];
            if (op == 6 && !with_composition) op = 5;
            PoolEntry x = pick_entry();
            if (!fits(x)) continue;
            try {
                switch (op) {
                case 0:
                    made = PoolEntry{ara::one(x.e), x.depth + 1, x.tree_size + 1};
                    break;
                case 1: { // union with a schema-equal partner, or with itself
                    std::vector<PoolEntry> mates;
                    for (const auto& y : pool)
                        if (y.e->schema == x.e->schema && fits(y)) mates.push_back(y);
                    PoolEntry y = mates.empty() ? x : pick(g, mates);
                    made = PoolEntry{ara::union_(x.e, y.e), std::max(x.depth, y.depth) + 1,
                                     x.tree_size + y.tree_size + 1};
                    break;
                }
                case 2: { // project one attribute away, or onto a random subset
                    std::vector<Attribute> keep;
                    if (!x.e->schema.empty() && rand_int(g, 0, 2) != 0) {
                        // dropping an attribute both join sides share reaches
                        // the interesting rewrite shapes
                        Attribute drop = pick(g, x.e->schema.attrs());
                        if (x.e->kind == AraKind::Join) {
                            RelationSchema shared =
                                x.e->args[0]->schema.intersect(x.e->args[1]->schema);
                            if (!shared.empty() && rand_int(g, 0, 3) != 0)
                                drop = pick(g, shared.attrs());
                        }
                        for (const auto& a : x.e->schema)
                            if (!(a == drop)) keep.push_back(a);
                    } else {
                        for (const auto& a : x.e->schema)
                            if (rand_int(g, 0, 1) == 1) keep.push_back(a);
                    }
                    made = PoolEntry{ara::project(RelationSchema(std::move(keep)), x.e),
                                     x.depth + 1, x.tree_size + 1};
                    break;
                }
                case 3: { // selection on a compatible pair (or singleton)
                    std::vector<Attribute> grp = compatible_group(x.e->schema, g);
                    if (grp.empty()) break;
                    std::vector<Attribute> ys = grp;
                    if (ys.size() > 2) ys.resize(2);
                    made = PoolEntry{ara::select(ys, x.e), x.depth + 1, x.tree_size + 1};
                    break;
                }
                case 4: { // renaming: swap a compatible pair or move to a fresh name
                    std::vector<Attribute> grp = compatible_group(x.e->schema, g);
                    if (grp.empty()) break;
                    AttrBijection phi;
                    if (grp.size() >= 2 && rand_int(g, 0, 1) == 0) {
                        phi = AttrBijection({{grp[0], grp[1]}, {grp[1], grp[0]}});
                    } else {
                        Attribute target{pick(g, fresh), grp[0].sort};
                        if (x.e->schema.find(target.name)) break;
                        phi = AttrBijection::rename_one(grp[0], target);
                    }
                    made = PoolEntry{ara::rename(phi, x.e), x.depth + 1, x.tree_size + 1};
                    break;
                }
                case 5: { // join within the arity bound
                    std::vector<PoolEntry> mates;
                    for (const auto& y : pool)
                        if (fits(y) &&
                            static_cast<int>(x.e->schema.union_with(y.e->schema).size()) <= k)
                            mates.push_back(y);
                    if (mates.empty()) break;
                    PoolEntry y = pick(g, mates);
                    made = PoolEntry{ara::join(x.e, y.e), std::max(x.depth, y.depth) + 1,
                                     x.tree_size + y.tree_size + 1};
                    break;
                }
                case 6: { // composition over a shared attribute
                    if (x.e->schema.empty()) break;
                    Attribute a = pick(g, x.e->schema.attrs());
                    std::vector<PoolEntry> args = {x};
                    RelationSchema united = x.e->schema;
                    for (const auto& y : pool) {
                        if (static_cast<int>(args.size()) >= k) break;
                        if (!fits(y) || !y.e->schema.contains(a)) continue;
                        RelationSchema u2 = united.union_with(y.e->schema);
                        if (static_cast<int>(u2.minus(a).size()) > k) continue;
                        if (rand_int(g, 0, 1) == 1) {
                            args.push_back(y);
                            united = u2;
                        }
                    }
                    std::vector<AraPtr> es;
                    int depth = 0;
                    std::size_t size = 1;
                    for (const auto& p : args) {
                        es.push_back(p.e);
                        depth = std::max(depth, p.depth);
                        size += p.tree_size;
                    }
                    made = PoolEntry{ara::compose(a, k, std::move(es)), depth + 1, size};
                    break;
                }
                }
            } catch (const SchemaError&) {
                made.reset(); // candidate did not typecheck; try another shape
            }
            if (made && (static_cast<int>(made->e->schema.size()) > k ||
                         made->tree_size > static_cast<std::size_t>(cfg.node_budget)))
                made.reset();
        }
        if (!made) continue;
        pool.push_back(*made);
        last = *made;
    }

    // half the time finish by projecting a shared attribute away from the
    // widest join built, the shape the arity-reduction rewrites feed on
    if (rand_int(g, 0, 1) == 0) {
        const PoolEntry* widest = nullptr;
        for (const auto& y : pool) {
            if (y.e->kind != AraKind::Join) continue;
            if (y.e->args[0]->schema.intersect(y.e->args[1]->schema).empty()) continue;
            if (!widest || y.e->schema.size() > widest->e->schema.size()) widest = &y;
        }
        if (widest && widest->tree_size + 1 <= static_cast<std::size_t>(cfg.node_budget) + 2) {
            RelationSchema shared =
                widest->e->args[0]->schema.intersect(widest->e->args[1]->schema);
            return ara::project_away(pick(g, shared.attrs()), widest->e);
        }
    }
    return last.e;
}

MatrixSchema gen_matrix_schema(Rng& g, const GenConfig& cfg) {
    (void)cfg;
    const std::vector<SizeTerm> terms = {"m", "n", "p"};
    MatrixSchema out;
    const std::vector<std::string> names = {"M", "N", "P", "Q"};
    int nvars = rand_int(g, 2, 3);
    for (int i = 0; i < nvars; ++i) {
        SizeTerm rows = rand_int(g, 0, 4) == 0 ? kUnitSize : pick(g, terms);
        SizeTerm cols = rand_int(g, 0, 4) == 0 ? kUnitSize : pick(g, terms);
        out.vars.emplace(names[static_cast<std::size_t>(i)], SizePair{rows, cols});
    }
    return out;
}

MatInstance gen_mat_instance(const MatrixSchema& s, const Semiring& k, Rng& g,
                             const GenConfig& cfg) {
    MatInstance I;
    I.schema = s;
    I.semiring = k;
    std::set<SizeTerm> terms;
    for (const auto& [name, sp] : s.vars) {
        terms.insert(sp.rows);
        terms.insert(sp.cols);
    }
    for (const auto& t : terms)
        if (t != kUnitSize) I.sizes.set(t, rand_int(g, 1, cfg.max_domain_size));
    for (const auto& [name, sp] : s.vars) {
        Matrix m(I.sizes.value_of(sp.rows), I.sizes.value_of(sp.cols), k);
        for (int i = 1; i <= m.rows(); ++i)
            for (int j = 1; j <= m.cols(); ++j) m.set(i, j, k->sample(g));
        I.matrices.emplace(name, std::move(m));
    }
    return I;
}

MlPtr gen_ml_expr(const MatrixSchema& s, Rng& g, const GenConfig& cfg) {
    struct Entry {
        MlPtr e;
        int depth = 0;
        std::size_t tree_size = 1;
    };
    std::vector<Entry> pool;
    for (const auto& [name, sp] : s.vars) pool.push_back({ml::var(name, sp), 0, 1});

    auto fits = [&](const Entry& a) {
        return a.depth < cfg.max_depth &&
               a.tree_size < static_cast<std::size_t>(cfg.node_budget);
    };
    auto pick_entry = [&]() -> Entry {
        if (rand_int(g, 0, 1) == 0) return pool.back();
        return pick(g, pool);
    };

    Entry last = pick(g, pool);
    int steps = rand_int(g, 3, std::max(4, cfg.node_budget));
    for (int step = 0; step < steps; ++step) {
        int op = rand_int(g, 0, 4);
        Entry x = pick_entry();
        if (!fits(x)) continue;
        std::optional<Entry> made;
        switch (op) {
        case 0:
            made = Entry{ml::transpose(x.e), x.depth + 1, x.tree_size + 1};
            break;
        case 1:
            made = Entry{ml::ones(x.e), x.depth + 1, x.tree_size + 1};
            break;
        case 2: { // diag of a column; anything becomes a column via ones
            MlPtr col = x.e->schema.cols == kUnitSize ? x.e : ml::ones(x.e);
            std::size_t extra = col == x.e ? 1 : 2;
            made = Entry{ml::diag(col), x.depth + 1, x.tree_size + extra};
            break;
        }
        case 3: { // product with a matching partner, or with own ones-vector
            std::vector<Entry> mates;
            for (const auto& y : pool)
                if (fits(y) && x.e->schema.cols == y.e->schema.rows) mates.push_back(y);
            if (!mates.empty() && rand_int(g, 0, 3) != 0) {
                const Entry& y = pick(g, mates);
                made = Entry{ml::matmul(x.e, y.e), std::max(x.depth, y.depth) + 1,
                             x.tree_size + y.tree_size + 1};
            } else {
                MlPtr onesCol = ml::ones(ml::transpose(x.e));
                made = Entry{ml::matmul(x.e, onesCol), x.depth + 1, 2 * x.tree_size + 3};
            }
            break;
        }
        case 4: { // pointwise with a schema-equal partner, or with itself
            std::vector<Entry> mates;
            for (const auto& y : pool)
                if (fits(y) && x.e->schema == y.e->schema) mates.push_back(y);
            const Entry& y = mates.empty() ? x : pick(g, mates);
            MlPtr combined = rand_int(g, 0, 1) == 0 ? ml::add(x.e, y.e) : ml::hadamard(x.e, y.e);
            made = Entry{combined, std::max(x.depth, y.depth) + 1,
                         x.tree_size + y.tree_size + 1};
            break;
        }
        }
        if (!made) continue;
        if (made->tree_size > static_cast<std::size_t>(cfg.node_budget)) continue;
        pool.push_back(*made);
        last = *made;
    }
    return last.e;
}

// ---------------------------------------------------------------------------
// Dense definitional oracle. Everything below recomputes the semantics from
// first principles; none of the sparse kernel operations are called.

namespace {

std::vector<Tuple> dense_tuples(const RelationSchema& x, const DomainAssignment& d) {
    std::vector<Tuple> out = {Tuple{}};
    for (const auto& a : x) {
        std::vector<Tuple> next;
        for (const auto& t : out)
            for (const auto& e : d.domain(a.sort)) {
                Tuple t2 = t;
                t2.push_back(e);
                next.push_back(std::move(t2));
            }
        out = std::move(next);
    }
    return out;
}

Atom value_of(const RelationSchema& schema, const Tuple& t, const Attribute& a) {
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema.at(i) == a) return t[i];
    throw InvariantError("oracle: attribute '" + a.name + "' not in schema");
}

Tuple restrict_by_name(const RelationSchema& from, const Tuple& t, const RelationSchema& onto) {
    Tuple out;
    for (const auto& a : onto) out.push_back(value_of(from, t, a));
    return out;
}

KValue lookup(const KRelation& r, const Tuple& t) {
    auto it = r.rows().find(t);
    return it == r.rows().end() ? r.semiring()->zero : it->second;
}

} // namespace

KRelation oracle_evaluate(const AraPtr& e, const Instance& I) {
    const Semiring& k = I.semiring;
    const DomainAssignment& d = I.domains;
    KRelation out(e->schema, k);
    switch (e->kind) {
    case AraKind::Rel: {
        const KRelation& r = I.at(e->rel_name);
        for (const auto& t : dense_tuples(e->schema, d)) out.set(t, lookup(r, t));
        return out;
    }
    case AraKind::One: {
        for (const auto& t : dense_tuples(e->schema, d)) out.set(t, k->one);
        return out;
    }
    case AraKind::Union: {
        KRelation a = oracle_evaluate(e->args[0], I);
        KRelation b = oracle_evaluate(e->args[1], I);
        for (const auto& t : dense_tuples(e->schema, d))
            out.set(t, k->add(lookup(a, t), lookup(b, t)));
        return out;
    }
    case AraKind::Project: {
        KRelation sub = oracle_evaluate(e->args[0], I);
        const RelationSchema& x = e->args[0]->schema;
        for (const auto& t : dense_tuples(e->schema, d)) {
            KValue acc = k->zero;
            for (const auto& u : dense_tuples(x, d))
                if (restrict_by_name(x, u, e->schema) == t) acc = k->add(acc, lookup(sub, u));
            out.set(t, std::move(acc));
        }
        return out;
    }
    case AraKind::Select: {
        KRelation sub = oracle_evaluate(e->args[0], I);
        for (const auto& t : dense_tuples(e->schema, d)) {
            bool agree = true;
            for (const auto& a : e->select_on)
                for (const auto& b : e->select_on)
                    if (!(value_of(e->schema, t, a) == value_of(e->schema, t, b))) agree = false;
            out.set(t, agree ? lookup(sub, t) : k->zero);
        }
        return out;
    }
    case AraKind::Rename: {
        KRelation sub = oracle_evaluate(e->args[0], I);
        const RelationSchema& x = e->args[0]->schema;
        for (const auto& t : dense_tuples(e->schema, d)) {
            // value at t is the subexpression's value at t o phi
            Tuple u;
            for (const auto& a : x) u.push_back(value_of(e->schema, t, e->rename_map.apply(a)));
            out.set(t, lookup(sub, u));
        }
        return out;
    }
    case AraKind::Join: {
        KRelation a = oracle_evaluate(e->args[0], I);
        KRelation b = oracle_evaluate(e->args[1], I);
        for (const auto& t : dense_tuples(e->schema, d)) {
            KValue va = lookup(a, restrict_by_name(e->schema, t, e->args[0]->schema));
            KValue vb = lookup(b, restrict_by_name(e->schema, t, e->args[1]->schema));
            out.set(t, k->mul(va, vb));
        }
        return out;
    }
    case AraKind::Compose: {
        std::vector<KRelation> rs;
        RelationSchema united;
        for (const auto& arg : e->args) {
            rs.push_back(oracle_evaluate(arg, I));
            united = united.union_with(arg->schema);
        }
        for (const auto& t : dense_tuples(e->schema, d)) {
            KValue acc = k->zero;
            for (const auto& u : dense_tuples(united, d)) {
                if (!(restrict_by_name(united, u, e->schema) == t)) continue;
                KValue prod = k->one;
                for (std::size_t i = 0; i < rs.size(); ++i)
                    prod = k->mul(prod,
                                  lookup(rs[i], restrict_by_name(united, u, e->args[i]->schema)));
                acc = k->add(acc, prod);
            }
            out.set(t, std::move(acc));
        }
        return out;
    }
    }
    throw InvariantError("unhandled expression kind");
}

// ---------------------------------------------------------------------------

namespace {

std::string structural_key(const AraPtr& e) {
    std::string s = std::to_string(static_cast<int>(e->kind)) + "(";
    switch (e->kind) {
    case AraKind::Rel:
        s += e->rel_name;
        break;
    case AraKind::Project:
        for (const auto& a : e->project_onto) s += a.name + ",";
        break;
    case AraKind::Select:
        for (const auto& a : e->select_on) s += a.name + ",";
        break;
    case AraKind::Rename:
        for (const auto& [from, to] : e->rename_map.pairs()) s += from.name + ">" + to.name + ",";
        break;
    case AraKind::Compose:
        s += e->compose_attr.name + ";";
        break;
    default:
        break;
    }
    for (const auto& a : e->args) s += structural_key(a) + ";";
    return s + ")";
}

} // namespace

IndistVerdict check_indistinguishable(const KRelation& r1, const KRelation& r2,
                                      const DomainAssignment& d, int depth, int budget) {
    if (r1.schema().size() != 2 || !(r1.schema() == r2.schema()))
        throw SchemaError("indistinguishability check needs two binary relations over the same "
                          "schema");
    if (r1.semiring()->name != r2.semiring()->name)
        throw SchemaError("indistinguishability check needs a common semiring");

    IndistVerdict verdict;
    verdict.depth_limit = depth;
    verdict.budget = budget;

    DatabaseSchema s;
    s.relations.emplace("R", r1.schema());
    Instance I1{s, d, r1.semiring(), {{"R", r1}}};
    Instance I2{s, d, r2.semiring(), {{"R", r2}}};

    // attribute universe: the two schema attributes plus one fresh attribute
    // per sort, enough to reach every three-column intermediate
    std::vector<Attribute> universe = r1.schema().attrs();
    std::set<std::string> sorts;
    for (const auto& a : r1.schema()) sorts.insert(a.sort);
    int i = 0;
    for (const auto& sort : sorts) universe.push_back({"Z" + std::to_string(i++), sort});

    std::vector<std::vector<AraPtr>> levels(static_cast<std::size_t>(depth) + 1);
    levels[0].push_back(ara::rel("R", r1.schema()));
    std::set<std::string> seen = {structural_key(levels[0][0])};
    int constructed = 1;

    auto try_add = [&](std::size_t level, const AraPtr& e) -> const AraPtr* {
        if (constructed >= budget) return nullptr;
        if (static_cast<int>(e->schema.size()) > 3) return nullptr;
        if (!seen.insert(structural_key(e)).second) return nullptr;
        ++constructed;
        levels[level].push_back(e);
        return &levels[level].back();
    };

    for (std::size_t lvl = 1; lvl <= static_cast<std::size_t>(depth); ++lvl) {
        std::vector<AraPtr> fresh;
        auto candidates_from = [&](const AraPtr& e) {
            std::vector<AraPtr> out;
            out.push_back(ara::one(e));
            // all projections (the empty one closes the expression)
            const auto& attrs = e->schema.attrs();
            for (std::size_t mask = 0; mask < (1u << attrs.size()); ++mask) {
                std::vector<Attribute> keep;
                for (std::size_t b = 0; b < attrs.size(); ++b)
                    if (mask & (1u << b)) keep.push_back(attrs[b]);
                if (keep.size() == attrs.size()) continue;
                out.push_back(ara::project(RelationSchema(std::move(keep)), e));
            }
            // selections on compatible pairs
            for (std::size_t x = 0; x < attrs.size(); ++x)
                for (std::size_t y = x + 1; y < attrs.size(); ++y)
                    if (attrs[x].compatible_with(attrs[y]))
                        out.push_back(ara::select({attrs[x], attrs[y]}, e));
            // renames: swaps and moves to universe attributes
            for (std::size_t x = 0; x < attrs.size(); ++x) {
                for (std::size_t y = x + 1; y < attrs.size(); ++y)
                    if (attrs[x].compatible_with(attrs[y]))
                        out.push_back(ara::rename(
                            AttrBijection({{attrs[x], attrs[y]}, {attrs[y], attrs[x]}}), e));
                for (const auto& u : universe)
                    if (u.compatible_with(attrs[x]) && !e->schema.contains(u) &&
                        !e->schema.find(u.name))
                        out.push_back(ara::rename(AttrBijection::rename_one(attrs[x], u), e));
            }
            return out;
        };

        for (const auto& e : levels[lvl - 1])
            for (const auto& c : candidates_from(e)) try_add(lvl, c);

        // binary combinations with maximum child depth lvl-1
        for (std::size_t dl = 0; dl < lvl; ++dl)
            for (std::size_t dr = 0; dr < lvl; ++dr) {
                if (std::max(dl, dr) != lvl - 1) continue;
                for (const auto& a : levels[dl])
                    for (const auto& b : levels[dr]) {
                        if (constructed >= budget) break;
                        if (a->schema == b->schema) try_add(lvl, ara::union_(a, b));
                        if (a->schema.union_with(b->schema).size() <= 3)
                            try_add(lvl, ara::join(a, b));
                    }
            }

        for (const auto& e : levels[lvl]) {
            if (!e->schema.empty()) continue;
            ++verdict.expressions_tried;
            if (!evaluate(e, I1).equals(evaluate(e, I2))) {
                verdict.distinguished = true;
                verdict.witness = e;
                return verdict;
            }
        }
        if (constructed >= budget) break;
    }
    return verdict;
}

} // namespace araml
