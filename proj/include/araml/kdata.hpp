#ifndef ARAML_KDATA_HPP
#define ARAML_KDATA_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "araml/error.hpp"
#include "araml/semiring.hpp"

namespace araml {

/// A domain element: a natural number or a symbol, compared by value.
/// Numbers order before symbols.
class Atom {
public:
    Atom() : value_(std::int64_t{0}) {}
    static Atom number(std::int64_t n) { return Atom(KInner{n}); }
    static Atom symbol(std::string s) { return Atom(KInner{std::move(s)}); }
    /// Digits-only text becomes a number, anything else a symbol.
    static Atom parse(std::string_view text);

    bool is_number() const { return value_.index() == 0; }
    std::int64_t number() const { return std::get<0>(value_); }
    const std::string& symbol() const { return std::get<1>(value_); }
    std::string str() const;

    auto operator<=>(const Atom&) const = default;

private:
    using KInner = std::variant<std::int64_t, std::string>;
    explicit Atom(KInner v) : value_(std::move(v)) {}
    KInner value_;
};

/// A named attribute with its compatibility sort. Two attributes are
/// compatible iff their sorts are equal.
///
/// The ordering below is the single linear order used everywhere (canonical
/// tuple order, matrix decoding, printed output). Attributes named row_*
/// order before col_* before everything else so that the matrix encoding of
/// a relation decodes back with rows as rows; within a group the order is
/// (sort, name).
struct Attribute {
    std::string name;
    std::string sort;

    bool compatible_with(const Attribute& o) const { return sort == o.sort; }
    bool operator==(const Attribute&) const = default;
    std::strong_ordering operator<=>(const Attribute& o) const;
};

/// A finite set of attributes with pairwise distinct names, kept in
/// canonical order.
class RelationSchema {
public:
    RelationSchema() = default;
    explicit RelationSchema(std::vector<Attribute> attrs); // throws on duplicate names

    std::size_t size() const { return attrs_.size(); }
    bool empty() const { return attrs_.empty(); }
    const std::vector<Attribute>& attrs() const { return attrs_; }
    auto begin() const { return attrs_.begin(); }
    auto end() const { return attrs_.end(); }
    const Attribute& at(std::size_t i) const { return attrs_[i]; }

    bool contains(const Attribute& a) const;
    std::optional<Attribute> find(std::string_view name) const;
    /// Position of `a` in canonical order; throws if absent.
    std::size_t index_of(const Attribute& a) const;

    bool subset_of(const RelationSchema& o) const;
    RelationSchema union_with(const RelationSchema& o) const; // throws on name clash
    RelationSchema intersect(const RelationSchema& o) const;
    RelationSchema minus(const Attribute& a) const;
    RelationSchema minus(const RelationSchema& o) const;

    bool operator==(const RelationSchema&) const = default;

private:
    std::vector<Attribute> attrs_; // sorted, unique names
};

/// Per-sort finite active domains. Element order is the listing order,
/// which fixes enumeration and printing.
class DomainAssignment {
public:
    void set_domain(const std::string& sort, std::vector<Atom> elems); // nonempty, no dups
    bool has(const std::string& sort) const { return domains_.count(sort) != 0; }
    const std::vector<Atom>& domain(const std::string& sort) const; // throws if missing
    std::size_t size_of(const std::string& sort) const { return domain(sort).size(); }
    std::size_t index_of(const std::string& sort, const Atom& a) const; // throws if absent
    bool covers(const RelationSchema& schema) const;
    void require_covers(const RelationSchema& schema) const; // throws SchemaError

    /// True iff every domain is exactly 1..n as numbers, in order.
    bool consecutive() const;

    const std::map<std::string, std::vector<Atom>>& domains() const { return domains_; }
    bool operator==(const DomainAssignment&) const = default;

private:
    std::map<std::string, std::vector<Atom>> domains_;
};

/// Values aligned with a schema's canonical attribute order.
using Tuple = std::vector<Atom>;

/// A compatible bijection between two relation schemas, used by renaming.
class AttrBijection {
public:
    AttrBijection() = default;
    /// Builds from explicit pairs; sources must be distinct, targets
    /// distinct, and each target compatible with its source.
    explicit AttrBijection(std::vector<std::pair<Attribute, Attribute>> pairs);

    static AttrBijection rename_one(const Attribute& from, const Attribute& to);

    Attribute apply(const Attribute& a) const; // identity off the listed pairs
    RelationSchema apply(const RelationSchema& s) const;
    std::vector<Attribute> apply(const std::vector<Attribute>& attrs) const;
    /// Restriction to the attributes of `s`, dropping identity pairs.
    AttrBijection restrict_to(const RelationSchema& s) const;
    /// this after `first`, as a bijection out of `domain`.
    AttrBijection compose_after(const AttrBijection& first, const RelationSchema& domain) const;
    bool is_identity() const { return pairs_.empty(); }

    const std::vector<std::pair<Attribute, Attribute>>& pairs() const { return pairs_; }
    bool operator==(const AttrBijection&) const = default;

private:
    std::vector<std::pair<Attribute, Attribute>> pairs_; // sorted by source, no identity pairs
};

/// A finite map from tuples to annotation values over a fixed schema.
/// Absent tuples mean semiring zero; stored zeros are allowed, equality is
/// taken modulo zero entries.
class KRelation {
public:
    KRelation(RelationSchema schema, Semiring k);

    const RelationSchema& schema() const { return schema_; }
    const Semiring& semiring() const { return k_; }
    const std::map<Tuple, KValue>& rows() const { return rows_; }
    std::size_t stored_size() const { return rows_.size(); }

    void set(Tuple t, KValue v); // throws on arity mismatch
    /// Annotation of `t`, zero when not stored.
    const KValue& at(const Tuple& t) const;
    /// Adds `v` to the annotation of `t`.
    void accumulate(const Tuple& t, const KValue& v);

    /// Copy without zero entries.
    KRelation pruned() const;
    /// Exact equality modulo zero entries (same schema, same carrier).
    bool equals(const KRelation& o) const;

private:
    RelationSchema schema_;
    Semiring k_;
    std::map<Tuple, KValue> rows_;
};

/// Restriction of a tuple over `from` to the sub-schema `onto`.
Tuple restrict_tuple(const RelationSchema& from, const Tuple& t, const RelationSchema& onto);

/// All tuples over `schema` with respect to `d`, in canonical order.
std::vector<Tuple> all_tuples(const RelationSchema& schema, const DomainAssignment& d);

// The kernel operations.

/// Annotates every tuple over `schema` with one.
KRelation one_relation(const RelationSchema& schema, const DomainAssignment& d, const Semiring& k);
/// Pointwise addition; schemas must match.
KRelation union_rel(const KRelation& r1, const KRelation& r2);
/// Sums annotations over all extensions of each tuple over `onto`.
KRelation projection(const KRelation& r, const RelationSchema& onto);
/// projection onto schema minus `a`.
KRelation project_away(const KRelation& r, const Attribute& a);
/// Keeps annotations of tuples whose values agree on all of `ys`.
KRelation selection(const KRelation& r, const std::vector<Attribute>& ys);
/// Relabels attributes along a compatible bijection.
KRelation renaming(const KRelation& r, const AttrBijection& phi);
/// Natural join; the annotation of t is r1(t|X1) * r2(t|X2).
KRelation join(const KRelation& r1, const KRelation& r2);
/// Join of at most `bound` relations sharing `a`, then `a` projected away.
KRelation composition(const Attribute& a, int bound, const std::vector<KRelation>& rs);

} // namespace araml

#endif
