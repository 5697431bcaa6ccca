#include "araml/kdata.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

namespace araml {

Atom Atom::parse(std::string_view text) {
    if (text.empty()) throw Error("empty domain element");
    bool digits = std::all_of(text.begin(), text.end(),
                              [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (digits) return number(std::stoll(std::string(text)));
    return symbol(std::string(text));
}

std::string Atom::str() const {
    return is_number() ? std::to_string(number()) : symbol();
}

namespace {
int attr_group(const Attribute& a) {
    if (a.name.rfind("row_", 0) == 0) return 0;
    if (a.name.rfind("col_", 0) == 0) return 1;
    return 2;
}
} // namespace

std::strong_ordering Attribute::operator<=>(const Attribute& o) const {
    if (int g = attr_group(*this), h = attr_group(o); g != h)
        return g <=> h;
    if (auto c = sort <=> o.sort; c != 0) return c;
    return name <=> o.name;
}

RelationSchema::RelationSchema(std::vector<Attribute> attrs) : attrs_(std::move(attrs)) {
    std::sort(attrs_.begin(), attrs_.end());
    attrs_.erase(std::unique(attrs_.begin(), attrs_.end()), attrs_.end());
    std::set<std::string> names;
    for (const auto& a : attrs_)
        if (!names.insert(a.name).second)
            throw SchemaError("duplicate attribute name '" + a.name + "' in schema");
}

bool RelationSchema::contains(const Attribute& a) const {
    return std::binary_search(attrs_.begin(), attrs_.end(), a);
}

std::optional<Attribute> RelationSchema::find(std::string_view name) const {
    for (const auto& a : attrs_)
        if (a.name == name) return a;
    return std::nullopt;
}

std::size_t RelationSchema::index_of(const Attribute& a) const {
    auto it = std::lower_bound(attrs_.begin(), attrs_.end(), a);
    if (it == attrs_.end() || !(*it == a))
        throw SchemaError("attribute '" + a.name + "' not in schema");
    return static_cast<std::size_t>(it - attrs_.begin());
}

bool RelationSchema::subset_of(const RelationSchema& o) const {
    return std::includes(o.attrs_.begin(), o.attrs_.end(), attrs_.begin(), attrs_.end());
}

RelationSchema RelationSchema::union_with(const RelationSchema& o) const {
    std::vector<Attribute> out = attrs_;
    out.insert(out.end(), o.attrs_.begin(), o.attrs_.end());
    return RelationSchema(std::move(out));
}

RelationSchema RelationSchema::intersect(const RelationSchema& o) const {
    std::vector<Attribute> out;
    std::set_intersection(attrs_.begin(), attrs_.end(), o.attrs_.begin(), o.attrs_.end(),
                          std::back_inserter(out));
    return RelationSchema(std::move(out));
}

RelationSchema RelationSchema::minus(const Attribute& a) const {
    std::vector<Attribute> out;
    for (const auto& x : attrs_)
        if (!(x == a)) out.push_back(x);
    return RelationSchema(std::move(out));
}

RelationSchema RelationSchema::minus(const RelationSchema& o) const {
    std::vector<Attribute> out;
    std::set_difference(attrs_.begin(), attrs_.end(), o.attrs_.begin(), o.attrs_.end(),
                        std::back_inserter(out));
    return RelationSchema(std::move(out));
}

void DomainAssignment::set_domain(const std::string& sort, std::vector<Atom> elems) {
    if (elems.empty()) throw SchemaError("domain for sort '" + sort + "' must be nonempty");
    std::set<Atom> seen;
    for (const auto& e : elems)
        if (!seen.insert(e).second)
            throw SchemaError("duplicate element '" + e.str() + "' in domain of sort '" + sort +
                              "'");
    domains_[sort] = std::move(elems);
}

const std::vector<Atom>& DomainAssignment::domain(const std::string& sort) const {
    auto it = domains_.find(sort);
    if (it == domains_.end()) throw SchemaError("no domain assigned to sort '" + sort + "'");
    return it->second;
}

std::size_t DomainAssignment::index_of(const std::string& sort, const Atom& a) const {
    const auto& d = domain(sort);
    auto it = std::find(d.begin(), d.end(), a);
    if (it == d.end())
        throw SchemaError("element '" + a.str() + "' not in domain of sort '" + sort + "'");
    return static_cast<std::size_t>(it - d.begin());
}

bool DomainAssignment::covers(const RelationSchema& schema) const {
    for (const auto& a : schema)
        if (!has(a.sort)) return false;
    return true;
}

void DomainAssignment::require_covers(const RelationSchema& schema) const {
    for (const auto& a : schema)
        if (!has(a.sort))
            throw SchemaError("no domain assigned to sort '" + a.sort + "' of attribute '" +
                              a.name + "'");
}

bool DomainAssignment::consecutive() const {
    for (const auto& [sort, elems] : domains_) {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (!elems[i].is_number() || elems[i].number() != static_cast<std::int64_t>(i) + 1)
                return false;
    }
    return true;
}

AttrBijection::AttrBijection(std::vector<std::pair<Attribute, Attribute>> pairs) {
    std::set<Attribute> sources, targets;
    for (auto& [from, to] : pairs) {
        if (!from.compatible_with(to))
            throw SchemaError("renaming " + from.name + " -> " + to.name +
                              " changes the sort (" + from.sort + " vs " + to.sort + ")");
        if (!sources.insert(from).second)
            throw SchemaError("attribute '" + from.name + "' renamed twice");
        if (!targets.insert(to).second)
            throw SchemaError("two attributes renamed to '" + to.name + "'");
        if (!(from == to)) pairs_.push_back({from, to});
    }
    // a listed target equal to an unlisted-but-kept source is caught when
    // the result schema is built (duplicate name)
    std::sort(pairs_.begin(), pairs_.end());
}

AttrBijection AttrBijection::rename_one(const Attribute& from, const Attribute& to) {
    return AttrBijection({{from, to}});
}

Attribute AttrBijection::apply(const Attribute& a) const {
    for (const auto& [from, to] : pairs_)
        if (from == a) return to;
    return a;
}

RelationSchema AttrBijection::apply(const RelationSchema& s) const {
    std::vector<Attribute> out;
    out.reserve(s.size());
    for (const auto& a : s) out.push_back(apply(a));
    return RelationSchema(std::move(out));
}

std::vector<Attribute> AttrBijection::apply(const std::vector<Attribute>& attrs) const {
    std::vector<Attribute> out;
    out.reserve(attrs.size());
    for (const auto& a : attrs) out.push_back(apply(a));
    return out;
}

AttrBijection AttrBijection::restrict_to(const RelationSchema& s) const {
    std::vector<std::pair<Attribute, Attribute>> out;
    for (const auto& p : pairs_)
        if (s.contains(p.first)) out.push_back(p);
    return AttrBijection(std::move(out));
}

AttrBijection AttrBijection::compose_after(const AttrBijection& first,
                                           const RelationSchema& domain) const {
    std::vector<std::pair<Attribute, Attribute>> out;
    for (const auto& a : domain) out.push_back({a, apply(first.apply(a))});
    return AttrBijection(std::move(out));
}

KRelation::KRelation(RelationSchema schema, Semiring k)
    : schema_(std::move(schema)), k_(std::move(k)) {
    if (!k_) throw InvariantError("relation without a semiring");
}

void KRelation::set(Tuple t, KValue v) {
    if (t.size() != schema_.size())
        throw SchemaError("tuple arity " + std::to_string(t.size()) + " does not match schema of " +
                          std::to_string(schema_.size()) + " attributes");
    rows_[std::move(t)] = std::move(v);
}

const KValue& KRelation::at(const Tuple& t) const {
    auto it = rows_.find(t);
    return it == rows_.end() ? k_->zero : it->second;
}

void KRelation::accumulate(const Tuple& t, const KValue& v) {
    auto it = rows_.find(t);
    if (it == rows_.end())
        rows_.emplace(t, v);
    else
        it->second = k_->add(it->second, v);
}

KRelation KRelation::pruned() const {
    KRelation out(schema_, k_);
    for (const auto& [t, v] : rows_)
        if (!(v == k_->zero)) out.rows_.emplace(t, v);
    return out;
}

bool KRelation::equals(const KRelation& o) const {
    if (!(schema_ == o.schema_) || k_->name != o.k_->name) return false;
    return pruned().rows_ == o.pruned().rows_;
}

Tuple restrict_tuple(const RelationSchema& from, const Tuple& t, const RelationSchema& onto) {
    Tuple out;
    out.reserve(onto.size());
    for (const auto& a : onto) out.push_back(t[from.index_of(a)]);
    return out;
}

std::vector<Tuple> all_tuples(const RelationSchema& schema, const DomainAssignment& d) {
    d.require_covers(schema);
    std::vector<Tuple> out;
    Tuple current(schema.size());
    // odometer over the per-attribute domains, last attribute fastest
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == schema.size()) {
            out.push_back(current);
            return;
        }
        for (const auto& e : d.domain(schema.at(i).sort)) {
            current[i] = e;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

KRelation one_relation(const RelationSchema& schema, const DomainAssignment& d,
                       const Semiring& k) {
    KRelation out(schema, k);
    for (auto& t : all_tuples(schema, d)) out.set(std::move(t), k->one);
    return out;
}

KRelation union_rel(const KRelation& r1, const KRelation& r2) {
    if (!(r1.schema() == r2.schema()))
        throw SchemaError("union of relations with different schemas");
    if (r1.semiring()->name != r2.semiring()->name)
        throw SchemaError("union of relations over different semirings");
    KRelation out = r1;
    for (const auto& [t, v] : r2.rows()) out.accumulate(t, v);
    return out;
}

KRelation projection(const KRelation& r, const RelationSchema& onto) {
    if (!onto.subset_of(r.schema()))
        throw SchemaError("projection target is not a subset of the schema");
    KRelation out(onto, r.semiring());
    // std::map iteration fixes the summation order
    for (const auto& [t, v] : r.rows())
        out.accumulate(restrict_tuple(r.schema(), t, onto), v);
    return out;
}

KRelation project_away(const KRelation& r, const Attribute& a) {
    if (!r.schema().contains(a))
        throw SchemaError("cannot project away '" + a.name + "': not in schema");
    return projection(r, r.schema().minus(a));
}

KRelation selection(const KRelation& r, const std::vector<Attribute>& ys) {
    std::vector<std::size_t> idx;
    for (const auto& y : ys) {
        if (!r.schema().contains(y))
            throw SchemaError("selection attribute '" + y.name + "' not in schema");
        if (!y.compatible_with(ys.front()))
            throw SchemaError("selection attributes '" + ys.front().name + "' and '" + y.name +
                              "' are incompatible");
        idx.push_back(r.schema().index_of(y));
    }
    KRelation out(r.schema(), r.semiring());
    for (const auto& [t, v] : r.rows()) {
        bool allEqual = true;
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (!(t[idx[i]] == t[idx[0]])) {
                allEqual = false;
                break;
            }
        if (allEqual) out.set(t, v);
    }
    return out;
}

KRelation renaming(const KRelation& r, const AttrBijection& phi) {
    RelationSchema target = phi.restrict_to(r.schema()).apply(r.schema());
    if (target.size() != r.schema().size())
        throw SchemaError("renaming is not a bijection on the schema");
    // position i in the source maps to the target position of phi(attr_i)
    std::vector<std::size_t> pos(r.schema().size());
    for (std::size_t i = 0; i < r.schema().size(); ++i)
        pos[i] = target.index_of(phi.apply(r.schema().at(i)));
    KRelation out(target, r.semiring());
    for (const auto& [t, v] : r.rows()) {
        Tuple u(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) u[pos[i]] = t[i];
        out.set(std::move(u), v);
    }
    return out;
}

KRelation join(const KRelation& r1, const KRelation& r2) {
    if (r1.semiring()->name != r2.semiring()->name)
        throw SchemaError("join of relations over different semirings");
    const RelationSchema shared = r1.schema().intersect(r2.schema());
    const RelationSchema target = r1.schema().union_with(r2.schema());

    // hash-group the right side by its shared-attribute values
    struct TupleHash {
        std::size_t operator()(const Tuple& t) const {
            std::size_t h = 1469598103934665603ull;
            for (const auto& a : t) {
                std::size_t x = a.is_number()
                                    ? std::hash<std::int64_t>{}(a.number())
                                    : std::hash<std::string>{}(a.symbol());
                h = (h ^ x) * 1099511628211ull;
            }
            return h;
        }
    };
    std::unordered_map<Tuple, std::vector<const std::pair<const Tuple, KValue>*>, TupleHash>
        groups;
    for (const auto& row : r2.rows())
        groups[restrict_tuple(r2.schema(), row.first, shared)].push_back(&row);

    std::vector<std::size_t> from1(target.size(), SIZE_MAX), from2(target.size(), SIZE_MAX);
    for (std::size_t i = 0; i < target.size(); ++i) {
        const Attribute& a = target.at(i);
        if (r1.schema().contains(a))
            from1[i] = r1.schema().index_of(a);
        else
            from2[i] = r2.schema().index_of(a);
    }

    KRelation out(target, r1.semiring());
    const auto& mul = r1.semiring()->mul;
    for (const auto& [t1, v1] : r1.rows()) {
        auto it = groups.find(restrict_tuple(r1.schema(), t1, shared));
        if (it == groups.end()) continue;
        for (const auto* row2 : it->second) {
            Tuple t(target.size());
            for (std::size_t i = 0; i < target.size(); ++i)
                t[i] = from1[i] != SIZE_MAX ? t1[from1[i]] : row2->first[from2[i]];
            out.set(std::move(t), mul(v1, row2->second));
        }
    }
    return out;
}

KRelation composition(const Attribute& a, int bound, const std::vector<KRelation>& rs) {
    if (rs.empty() || static_cast<int>(rs.size()) > bound)
        throw SchemaError("composition takes between 1 and " + std::to_string(bound) +
                          " arguments, got " + std::to_string(rs.size()));
    for (const auto& r : rs)
        if (!r.schema().contains(a))
            throw SchemaError("composition attribute '" + a.name +
                              "' missing from an argument schema");
    KRelation acc = rs.front();
    for (std::size_t i = 1; i < rs.size(); ++i) acc = join(acc, rs[i]);
    return project_away(acc, a);
}

} // namespace araml
