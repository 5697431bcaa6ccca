#include "araml/normalform.hpp"

#include <algorithm>

namespace araml {

namespace {

// restores the selection-list invariant: sets sorted and deduplicated,
// overlapping sets merged, sets of fewer than two attributes dropped
std::vector<std::vector<Attribute>> tidy_selections(std::vector<std::vector<Attribute>> sets) {
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < sets.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < sets.size() && !merged; ++j) {
                std::vector<Attribute> common;
                std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                                      sets[j].end(), std::back_inserter(common));
                if (common.empty()) continue;
                std::vector<Attribute> united;
                std::set_union(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                               std::back_inserter(united));
                sets[i] = std::move(united);
                sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
            }
    }
    sets.erase(std::remove_if(sets.begin(), sets.end(),
                              [](const auto& s) { return s.size() < 2; }),
               sets.end());
    std::sort(sets.begin(), sets.end());
    return sets;
}

AraPtr join_fold(const std::vector<AraPtr>& factors) {
    AraPtr acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = ara::join(acc, factors[i]);
    return acc;
}

RelationSchema factors_schema(const std::vector<AraPtr>& factors) {
    RelationSchema out;
    for (const auto& f : factors) out = out.union_with(f->schema);
    return out;
}

// replaces every composition node by its definition: project the shared
// attribute away from the join of the arguments
AraPtr desugar_compose(const AraPtr& e) {
    std::vector<AraPtr> args;
    args.reserve(e->args.size());
    for (const auto& a : e->args) args.push_back(desugar_compose(a));
    switch (e->kind) {
    case AraKind::Rel:
        return e;
    case AraKind::One:
        return ara::one(args[0]);
    case AraKind::Union:
        return ara::union_(args[0], args[1]);
    case AraKind::Project:
        return ara::project(e->project_onto, args[0]);
    case AraKind::Select:
        return ara::select(e->select_on, args[0]);
    case AraKind::Rename:
        return ara::rename(e->rename_map, args[0]);
    case AraKind::Join:
        return ara::join(args[0], args[1]);
    case AraKind::Compose:
        return ara::project_away(e->compose_attr, join_fold(args));
    }
    throw InvariantError("unhandled expression kind");
}

int max_relation_arity(const AraPtr& e) {
    int m = e->kind == AraKind::Rel ? static_cast<int>(e->schema.size()) : 0;
    for (const auto& a : e->args) m = std::max(m, max_relation_arity(a));
    return m;
}

class Normalizer {
public:
    explicit Normalizer(int k) : k_(k) {}

    std::vector<NfBranch> run(const AraPtr& e) {
        switch (e->kind) {
        case AraKind::Rel:
            return {NfBranch{{}, {e}}};
        case AraKind::One: {
            // the value of one(e') depends only on the schema of e', and
            // every branch join has exactly that schema; distribute over
            // the factors of the first branch
            std::vector<NfBranch> sub = run(e->args[0]);
            NfBranch out;
            for (const auto& f : sub.front().factors) out.factors.push_back(ara::one(f));
            return {std::move(out)};
        }
        case AraKind::Union: {
            std::vector<NfBranch> out = run(e->args[0]);
            std::vector<NfBranch> rhs = run(e->args[1]);
            out.insert(out.end(), rhs.begin(), rhs.end());
            return out;
        }
        case AraKind::Join: {
            // join distributes over union, and selections hoist out of joins
            std::vector<NfBranch> lhs = run(e->args[0]);
            std::vector<NfBranch> rhs = run(e->args[1]);
            std::vector<NfBranch> out;
            for (const auto& b1 : lhs)
                for (const auto& b2 : rhs) {
                    NfBranch b;
                    b.factors = b1.factors;
                    b.factors.insert(b.factors.end(), b2.factors.begin(), b2.factors.end());
                    auto sels = b1.selections;
                    sels.insert(sels.end(), b2.selections.begin(), b2.selections.end());
                    b.selections = tidy_selections(std::move(sels));
                    out.push_back(std::move(b));
                }
            return out;
        }
        case AraKind::Select: {
            std::vector<NfBranch> out = run(e->args[0]);
            for (auto& b : out) {
                auto sels = b.selections;
                sels.push_back(e->select_on);
                b.selections = tidy_selections(std::move(sels));
            }
            return out;
        }
        case AraKind::Rename: {
            // renaming distributes over union, selections and join factors
            std::vector<NfBranch> out = run(e->args[0]);
            for (auto& b : out) {
                for (auto& sel : b.selections) sel = e->rename_map.apply(sel);
                b.selections = tidy_selections(std::move(b.selections));
                for (auto& f : b.factors) {
                    AttrBijection restricted = e->rename_map.restrict_to(f->schema);
                    if (!restricted.is_identity()) f = ara::rename(restricted, f);
                }
            }
            return out;
        }
        case AraKind::Project: {
            std::vector<NfBranch> out = run(e->args[0]);
            RelationSchema gone = e->args[0]->schema.minus(e->project_onto);
            for (const auto& a : gone) {
                std::vector<NfBranch> next;
                next.reserve(out.size());
                for (const auto& b : out) next.push_back(project_away_branch(a, b));
                out = std::move(next);
            }
            return out;
        }
        case AraKind::Compose:
            throw InvariantError("composition must be desugared before normalizing");
        }
        throw InvariantError("unhandled expression kind");
    }

private:
    NfBranch project_away_branch(const Attribute& a, const NfBranch& branch) {
        // if a selection set mentions the attribute, reduce to an A = B
        // selection and push it through the factors
        for (std::size_t i = 0; i < branch.selections.size(); ++i) {
            const auto& y1 = branch.selections[i];
            if (std::find(y1.begin(), y1.end(), a) == y1.end()) continue;
            NfBranch out;
            for (std::size_t j = 0; j < branch.selections.size(); ++j)
                if (j != i) out.selections.push_back(branch.selections[j]);
            std::vector<Attribute> rest;
            for (const auto& x : y1)
                if (!(x == a)) rest.push_back(x);
            const Attribute& b = rest.front(); // smallest remaining, sets are sorted
            out.factors = push_proj_sel(a, b, branch.factors);
            if (rest.size() >= 2) out.selections.push_back(rest);
            out.selections = tidy_selections(std::move(out.selections));
            return out;
        }

        // otherwise project the bare join: factors free of the attribute
        // pull out, and the rest collapse into one fragment expression
        NfBranch out;
        out.selections = branch.selections;
        std::vector<AraPtr> with_a;
        for (const auto& f : branch.factors) {
            if (f->schema.contains(a))
                with_a.push_back(f);
            else
                out.factors.push_back(f);
        }
        if (with_a.empty())
            throw InvariantError("projected attribute missing from every factor");
        RelationSchema sj = factors_schema(with_a);
        if (static_cast<int>(sj.size()) <= k_) {
            out.factors.push_back(ara::project_away(a, join_fold(with_a)));
            return out;
        }
        if (static_cast<int>(sj.size()) != k_ + 1)
            throw InvariantError("branch join schema exceeds the input fragment");

        // the join spans k+1 attributes: partition the factors over the
        // k-element subsets containing the attribute and compose
        std::vector<RelationSchema> parts; // lexicographically ordered
        {
            const auto& attrs = sj.attrs();
            for (std::size_t skip = 0; skip < attrs.size(); ++skip) {
                if (attrs[skip] == a) continue;
                std::vector<Attribute> part;
                for (std::size_t i = 0; i < attrs.size(); ++i)
                    if (i != skip) part.push_back(attrs[i]);
                parts.emplace_back(std::move(part));
            }
            std::sort(parts.begin(), parts.end(),
                      [](const RelationSchema& x, const RelationSchema& y) {
                          return x.attrs() < y.attrs();
                      });
        }
        std::vector<std::vector<AraPtr>> groups(parts.size());
        for (const auto& f : with_a) {
            bool placed = false;
            for (std::size_t i = 0; i < parts.size() && !placed; ++i)
                if (f->schema.subset_of(parts[i])) {
                    groups[i].push_back(f);
                    placed = true;
                }
            if (!placed) throw InvariantError("factor schema fits no partition class");
        }
        std::vector<AraPtr> zeta_args;
        for (const auto& grp : groups)
            if (!grp.empty()) zeta_args.push_back(join_fold(grp));
        out.factors.push_back(ara::compose(a, k_, std::move(zeta_args)));
        return out;
    }

    int k_;
};

} // namespace

std::vector<AraPtr> push_proj_sel(const Attribute& a, const Attribute& b,
                                  const std::vector<AraPtr>& factors) {
    if (a == b) throw SchemaError("push_proj_sel needs two distinct attributes");
    if (!a.compatible_with(b))
        throw SchemaError("attributes '" + a.name + "' and '" + b.name + "' are incompatible");
    bool a_used = false, b_used = false;
    for (const auto& f : factors) {
        a_used = a_used || f->schema.contains(a);
        b_used = b_used || f->schema.contains(b);
    }
    if (!a_used || !b_used)
        throw SchemaError("both attributes must occur in the joined factors");

    std::vector<AraPtr> out;
    out.reserve(factors.size());
    for (const auto& f : factors) {
        bool hasA = f->schema.contains(a), hasB = f->schema.contains(b);
        if (!hasA)
            out.push_back(f);
        else if (!hasB)
            out.push_back(ara::rename(AttrBijection::rename_one(a, b), f));
        else
            out.push_back(ara::project_away(a, ara::select({a, b}, f)));
    }
    return out;
}

NormalForm normalize(const AraPtr& e, int k, const Semiring& s) {
    if (!s->commutative)
        throw CommutativityError("normalization requires a commutative semiring; '" + s->name +
                                 "' is not commutative");
    if (k < 1) throw FragmentError("the arity bound must be at least 1");
    AraPtr plain = desugar_compose(e);
    FragmentReport fragment = check_fragment(plain, k + 1, false);
    if (!fragment.ok)
        throw FragmentError("input is not an expression with arity bound " + std::to_string(k + 1) +
                            ": " + fragment.violations.front());
    if (max_relation_arity(plain) > k)
        throw FragmentError("database schema arity exceeds " + std::to_string(k));

    NormalForm nf;
    nf.k = k;
    nf.branches = Normalizer(k).run(plain);
    return nf;
}

AraPtr branch_expr(const NfBranch& branch) {
    AraPtr e = join_fold(branch.factors);
    for (const auto& y : branch.selections) e = ara::select(y, e);
    return e;
}

AraPtr denote(const NormalForm& nf) {
    if (nf.branches.empty()) throw InvariantError("normal form without branches");
    AraPtr e = branch_expr(nf.branches.front());
    for (std::size_t i = 1; i < nf.branches.size(); ++i)
        e = ara::union_(e, branch_expr(nf.branches[i]));
    return e;
}

std::size_t node_count(const NormalForm& nf) { return node_count(denote(nf)); }

AraPtr reduce_arity(const AraPtr& e, int k, const Semiring& s) {
    if (static_cast<int>(e->schema.size()) > k)
        throw FragmentError("output schema has " + std::to_string(e->schema.size()) +
                            " attributes; at most " + std::to_string(k) + " are reducible");
    NormalForm nf = normalize(e, k, s);
    AraPtr out = denote(nf);
    FragmentReport fragment = check_fragment(out, k, true);
    if (!fragment.ok)
        throw InvariantError("reduced expression escapes the fragment: " +
                             fragment.violations.front());
    return out;
}

} // namespace araml
