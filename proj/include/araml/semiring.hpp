#ifndef ARAML_SEMIRING_HPP
#define ARAML_SEMIRING_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "araml/error.hpp"

namespace araml {

/// Min-plus value: a nonnegative cost or infinity. Infinity is the additive
/// identity (min) and annihilates under multiplication (+).
struct TropicalValue {
    bool infinite = false;
    std::int64_t cost = 0; // ignored and kept 0 when infinite

    static TropicalValue inf() { return TropicalValue{true, 0}; }
    static TropicalValue finite(std::int64_t c) { return TropicalValue{false, c}; }
    bool operator==(const TropicalValue&) const = default;
};

/// 2x2 integer matrix, row-major. The one shipped non-commutative carrier.
struct Mat2Value {
    std::array<std::int64_t, 4> m{0, 0, 0, 0};

    static Mat2Value identity() { return Mat2Value{{1, 0, 0, 1}}; }
    bool operator==(const Mat2Value&) const = default;
};

/// Product of provenance tokens with positive integer exponents,
/// kept sorted by token so equality is syntactic.
class Monomial {
public:
    Monomial() = default;
    static Monomial token(std::string name);

    Monomial times(const Monomial& o) const;
    bool is_unit() const { return powers_.empty(); }
    const std::vector<std::pair<std::string, int>>& powers() const { return powers_; }
    std::string str() const;

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<std::pair<std::string, int>> powers_; // sorted, exponents >= 1
};

/// Element of the free commutative semiring N[tokens]: a canonically sorted
/// list of (monomial, coefficient) pairs with nonzero coefficients.
class Polynomial {
public:
    Polynomial() = default; // zero
    static Polynomial zero() { return {}; }
    static Polynomial one();
    static Polynomial token(std::string name);
    static Polynomial constant(std::int64_t c);

    Polynomial plus(const Polynomial& o) const;
    Polynomial times(const Polynomial& o) const;
    bool is_zero() const { return terms_.empty(); }
    const std::vector<std::pair<Monomial, std::int64_t>>& terms() const { return terms_; }
    std::string str() const;

    bool operator==(const Polynomial&) const = default;

private:
    std::vector<std::pair<Monomial, std::int64_t>> terms_; // sorted by monomial
};

/// An annotation value. Equality is exact; alternatives never compare equal
/// across carriers.
using KValue = std::variant<std::int64_t, bool, TropicalValue, Mat2Value, Polynomial>;

std::string kvalue_str(const KValue& v);

/// A pluggable annotation algebra: carrier name, the two operations, the two
/// identities and a commutativity flag, plus the per-carrier text codec and
/// test-value sampler the tools need.
struct SemiringSpec {
    std::string name;
    std::function<KValue(const KValue&, const KValue&)> add;
    std::function<KValue(const KValue&, const KValue&)> mul;
    KValue zero;
    KValue one;
    bool commutative = true;

    std::function<std::string(const KValue&)> print;
    std::function<KValue(std::string_view)> parse;
    std::function<KValue(std::mt19937_64&)> sample;
    std::vector<KValue> axiom_samples;
};

/// Specs are immutable after construction and shared by reference.
using Semiring = std::shared_ptr<const SemiringSpec>;

Semiring nat_semiring();
Semiring int_semiring();
Semiring bool_semiring();
Semiring tropical_semiring();
Semiring provenance_semiring(std::vector<std::string> tokens);
Semiring mat2_semiring();

/// All shipped carriers: nat, int, bool, tropical, prov (over a default
/// alphabet) and the non-commutative mat2.
std::vector<Semiring> builtin_semirings();

/// Lookup by carrier name; `tokens` feeds the provenance alphabet.
/// Throws Error for unknown names.
Semiring semiring_by_name(std::string_view name,
                          const std::vector<std::string>& tokens = {});

/// Checks every semiring axiom on all triples drawn from `samples` and
/// returns the violated axioms (empty for a lawful spec).
std::vector<std::string> check_axioms(const SemiringSpec& s,
                                      const std::vector<KValue>& samples);

} // namespace araml

#endif
