#include "araml/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace araml {

Monomial Monomial::token(std::string name) {
    Monomial m;
    m.powers_.emplace_back(std::move(name), 1);
    return m;
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial out;
    auto a = powers_.begin(), b = o.powers_.begin();
    while (a != powers_.end() || b != o.powers_.end()) {
        if (b == o.powers_.end() || (a != powers_.end() && a->first < b->first)) {
            out.powers_.push_back(*a++);
        } else if (a == powers_.end() || b->first < a->first) {
            out.powers_.push_back(*b++);
        } else {
            out.powers_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return out;
}

std::string Monomial::str() const {
    if (powers_.empty()) return "1";
    std::string s;
    for (const auto& [tok, exp] : powers_) {
        if (!s.empty()) s += "*";
        s += tok;
        if (exp > 1) s += "^" + std::to_string(exp);
    }
    return s;
}

Polynomial Polynomial::one() { return constant(1); }

Polynomial Polynomial::token(std::string name) {
    Polynomial p;
    p.terms_.emplace_back(Monomial::token(std::move(name)), 1);
    return p;
}

Polynomial Polynomial::constant(std::int64_t c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace_back(Monomial{}, c);
    return p;
}

Polynomial Polynomial::plus(const Polynomial& o) const {
    Polynomial out;
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.terms_.push_back(*a++);
        } else if (a == terms_.end() || b->first < a->first) {
            out.terms_.push_back(*b++);
        } else {
            std::int64_t c = a->second + b->second;
            if (c != 0) out.terms_.emplace_back(a->first, c);
            ++a;
            ++b;
        }
    }
    return out;
}

Polynomial Polynomial::times(const Polynomial& o) const {
    std::map<Monomial, std::int64_t> acc;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) acc[ma.times(mb)] += ca * cb;
    Polynomial out;
    for (auto& [m, c] : acc)
        if (c != 0) out.terms_.emplace_back(m, c);
    return out;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += "+";
        if (m.is_unit()) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c) + "*";
            s += m.str();
        }
    }
    return s;
}

std::string kvalue_str(const KValue& v) {
    struct Visitor {
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(bool b) const { return b ? "1" : "0"; }
        std::string operator()(const TropicalValue& t) const {
            return t.infinite ? "inf" : std::to_string(t.cost);
        }
        std::string operator()(const Mat2Value& m) const {
            std::ostringstream os;
            os << "[[" << m.m[0] << "," << m.m[1] << "],[" << m.m[2] << "," << m.m[3] << "]]";
            return os.str();
        }
        std::string operator()(const Polynomial& p) const { return p.str(); }
    };
    return std::visit(Visitor{}, v);
}

namespace {

std::int64_t as_int(const KValue& v) { return std::get<std::int64_t>(v); }
bool as_bool(const KValue& v) { return std::get<bool>(v); }
const TropicalValue& as_trop(const KValue& v) { return std::get<TropicalValue>(v); }
const Mat2Value& as_mat2(const KValue& v) { return std::get<Mat2Value>(v); }
const Polynomial& as_poly(const KValue& v) { return std::get<Polynomial>(v); }

std::int64_t parse_int_literal(std::string_view text) {
    std::string s(text);
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw Error("bad integer literal: '" + s + "'");
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw Error("bad integer literal: '" + s + "'");
    return v;
}

// grammar: poly := term ('+' term)*; term := factor ('*' factor)*;
// factor := integer | token ('^' integer)?
Polynomial parse_poly_literal(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error("empty polynomial literal");
    std::size_t i = 0;
    auto parse_term = [&]() {
        Polynomial term = Polynomial::one();
        bool first = true;
        while (true) {
            if (i >= s.size()) {
                if (first) throw Error("polynomial literal ends in '+' or '*'");
                break;
            }
            char c = s[i];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                term = term.times(Polynomial::constant(std::stoll(s.substr(i, j - i))));
                i = j;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                    ++j;
                std::string tok = s.substr(i, j - i);
                i = j;
                int exp = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    std::size_t k = i;
                    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                    if (k == i) throw Error("missing exponent in polynomial literal");
                    exp = static_cast<int>(std::stoll(s.substr(i, k - i)));
                    i = k;
                }
                Polynomial t = Polynomial::token(tok);
                Polynomial powed = Polynomial::one();
                for (int e = 0; e < exp; ++e) powed = powed.times(t);
                term = term.times(powed);
            } else {
                throw Error(std::string("unexpected character '") + c + "' in polynomial literal");
            }
            first = false;
            if (i < s.size() && s[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        return term;
    };
    Polynomial p = parse_term();
    while (i < s.size()) {
        if (s[i] != '+')
            throw Error(std::string("unexpected character '") + s[i] + "' in polynomial literal");
        ++i;
        p = p.plus(parse_term());
    }
    return p;
}

Mat2Value parse_mat2_literal(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    // [[a,b],[c,d]]
    Mat2Value out;
    std::size_t i = 0;
    auto expect = [&](char c) {
        if (i >= s.size() || s[i] != c)
            throw Error("bad 2x2 matrix literal: '" + std::string(text) + "'");
        ++i;
    };
    auto number = [&]() {
        std::size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw Error("bad 2x2 matrix literal: '" + std::string(text) + "'");
        std::int64_t v = std::stoll(s.substr(i, j - i));
        i = j;
        return v;
    };
    expect('[');
    expect('[');
    out.m[0] = number();
    expect(',');
    out.m[1] = number();
    expect(']');
    expect(',');
    expect('[');
    out.m[2] = number();
    expect(',');
    out.m[3] = number();
    expect(']');
    expect(']');
    if (i != s.size()) throw Error("bad 2x2 matrix literal: '" + std::string(text) + "'");
    return out;
}

Semiring make_integer_like(std::string name, bool natural) {
    auto s = std::make_shared<SemiringSpec>();
    s->name = std::move(name);
    s->add = [](const KValue& a, const KValue& b) -> KValue { return as_int(a) + as_int(b); };
    s->mul = [](const KValue& a, const KValue& b) -> KValue { return as_int(a) * as_int(b); };
    s->zero = std::int64_t{0};
    s->one = std::int64_t{1};
    s->commutative = true;
    s->print = [](const KValue& v) { return kvalue_str(v); };
    s->parse = [natural](std::string_view t) -> KValue {
        std::int64_t v = parse_int_literal(t);
        if (natural && v < 0) throw Error("natural number literal may not be negative");
        return v;
    };
    if (natural) {
        s->sample = [](std::mt19937_64& g) -> KValue {
            return std::int64_t{std::uniform_int_distribution<std::int64_t>(0, 4)(g)};
        };
        s->axiom_samples = {std::int64_t{0}, std::int64_t{1}, std::int64_t{2}, std::int64_t{3}};
    } else {
        s->sample = [](std::mt19937_64& g) -> KValue {
            return std::int64_t{std::uniform_int_distribution<std::int64_t>(-3, 3)(g)};
        };
        s->axiom_samples = {std::int64_t{-2}, std::int64_t{-1}, std::int64_t{0}, std::int64_t{1},
                            std::int64_t{2}};
    }
    return s;
}

} // namespace

Semiring nat_semiring() {
    static const Semiring s = make_integer_like("nat", true);
    return s;
}

Semiring int_semiring() {
    static const Semiring s = make_integer_like("int", false);
    return s;
}

Semiring bool_semiring() {
    static const Semiring s = [] {
        auto b = std::make_shared<SemiringSpec>();
        b->name = "bool";
        b->add = [](const KValue& x, const KValue& y) -> KValue { return as_bool(x) || as_bool(y); };
        b->mul = [](const KValue& x, const KValue& y) -> KValue { return as_bool(x) && as_bool(y); };
        b->zero = false;
        b->one = true;
        b->commutative = true;
        b->print = [](const KValue& v) { return kvalue_str(v); };
        b->parse = [](std::string_view t) -> KValue {
            if (t == "0") return false;
            if (t == "1") return true;
            throw Error("boolean literal must be 0 or 1, got '" + std::string(t) + "'");
        };
        b->sample = [](std::mt19937_64& g) -> KValue {
            return std::uniform_int_distribution<int>(0, 1)(g) == 1;
        };
        b->axiom_samples = {false, true};
        return b;
    }();
    return s;
}

Semiring tropical_semiring() {
    static const Semiring s = [] {
        auto t = std::make_shared<SemiringSpec>();
        t->name = "tropical";
        t->add = [](const KValue& x, const KValue& y) -> KValue {
            const auto &a = as_trop(x), &b = as_trop(y);
            if (a.infinite) return b;
            if (b.infinite) return a;
            return TropicalValue::finite(std::min(a.cost, b.cost));
        };
        t->mul = [](const KValue& x, const KValue& y) -> KValue {
            const auto &a = as_trop(x), &b = as_trop(y);
            if (a.infinite || b.infinite) return TropicalValue::inf();
            return TropicalValue::finite(a.cost + b.cost);
        };
        t->zero = TropicalValue::inf();
        t->one = TropicalValue::finite(0);
        t->commutative = true;
        t->print = [](const KValue& v) { return kvalue_str(v); };
        t->parse = [](std::string_view text) -> KValue {
            if (text == "inf") return TropicalValue::inf();
            std::int64_t v = parse_int_literal(text);
            if (v < 0) throw Error("tropical cost may not be negative");
            return TropicalValue::finite(v);
        };
        t->sample = [](std::mt19937_64& g) -> KValue {
            if (std::uniform_int_distribution<int>(0, 4)(g) == 0) return TropicalValue::inf();
            return TropicalValue::finite(std::uniform_int_distribution<std::int64_t>(0, 4)(g));
        };
        t->axiom_samples = {TropicalValue::inf(), TropicalValue::finite(0),
                            TropicalValue::finite(1), TropicalValue::finite(2)};
        return t;
    }();
    return s;
}

Semiring provenance_semiring(std::vector<std::string> tokens) {
    if (tokens.empty()) throw Error("provenance semiring needs a nonempty token alphabet");
    auto p = std::make_shared<SemiringSpec>();
    p->name = "prov";
    p->add = [](const KValue& x, const KValue& y) -> KValue {
        return as_poly(x).plus(as_poly(y));
    };
    p->mul = [](const KValue& x, const KValue& y) -> KValue {
        return as_poly(x).times(as_poly(y));
    };
    p->zero = Polynomial::zero();
    p->one = Polynomial::one();
    p->commutative = true;
    p->print = [](const KValue& v) { return kvalue_str(v); };
    p->parse = [](std::string_view t) -> KValue { return parse_poly_literal(t); };
    p->sample = [tokens](std::mt19937_64& g) -> KValue {
        std::uniform_int_distribution<int> nterms(0, 2);
        std::uniform_int_distribution<std::size_t> pick(0, tokens.size() - 1);
        std::uniform_int_distribution<int> coeff(1, 2);
        Polynomial out;
        int n = nterms(g);
        for (int i = 0; i < n; ++i) {
            Polynomial mono = Polynomial::constant(coeff(g));
            int len = std::uniform_int_distribution<int>(1, 2)(g);
            for (int j = 0; j < len; ++j) mono = mono.times(Polynomial::token(tokens[pick(g)]));
            out = out.plus(mono);
        }
        return out;
    };
    std::vector<KValue> samples = {Polynomial::zero(), Polynomial::one()};
    for (std::size_t i = 0; i < tokens.size() && i < 2; ++i)
        samples.push_back(Polynomial::token(tokens[i]));
    if (tokens.size() >= 2)
        samples.push_back(Polynomial::token(tokens[0]).plus(Polynomial::token(tokens[1])));
    p->axiom_samples = std::move(samples);
    return p;
}

Semiring mat2_semiring() {
    static const Semiring s = [] {
        auto m = std::make_shared<SemiringSpec>();
        m->name = "mat2";
        m->add = [](const KValue& x, const KValue& y) -> KValue {
            const auto &a = as_mat2(x), &b = as_mat2(y);
            Mat2Value out;
            for (int i = 0; i < 4; ++i) out.m[i] = a.m[i] + b.m[i];
            return out;
        };
        m->mul = [](const KValue& x, const KValue& y) -> KValue {
            const auto &a = as_mat2(x), &b = as_mat2(y);
            Mat2Value out;
            out.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
            out.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
            out.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
            out.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
            return out;
        };
        m->zero = Mat2Value{};
        m->one = Mat2Value::identity();
        m->commutative = false;
        m->print = [](const KValue& v) { return kvalue_str(v); };
        m->parse = [](std::string_view t) -> KValue { return parse_mat2_literal(t); };
        m->sample = [](std::mt19937_64& g) -> KValue {
            std::uniform_int_distribution<std::int64_t> d(-2, 2);
            Mat2Value out;
            for (int i = 0; i < 4; ++i) out.m[i] = d(g);
            return out;
        };
        m->axiom_samples = {Mat2Value{}, Mat2Value::identity(), Mat2Value{{0, 1, 0, 0}},
                            Mat2Value{{0, 0, 1, 0}}, Mat2Value{{1, 1, 0, 1}}};
        return m;
    }();
    return s;
}

std::vector<Semiring> builtin_semirings() {
    return {nat_semiring(),      int_semiring(),
            bool_semiring(),     tropical_semiring(),
            provenance_semiring({"a", "b", "c", "d"}), mat2_semiring()};
}

Semiring semiring_by_name(std::string_view name, const std::vector<std::string>& tokens) {
    if (name == "nat") return nat_semiring();
    if (name == "int") return int_semiring();
    if (name == "bool") return bool_semiring();
    if (name == "tropical") return tropical_semiring();
    if (name == "mat2") return mat2_semiring();
    if (name == "prov")
        return provenance_semiring(tokens.empty() ? std::vector<std::string>{"a", "b", "c", "d"}
                                                  : tokens);
    throw Error("unknown semiring '" + std::string(name) +
                "' (expected nat, int, bool, tropical, prov or mat2)");
}

std::vector<std::string> check_axioms(const SemiringSpec& s, const std::vector<KValue>& samples) {
    if (samples.empty()) throw Error("check_axioms needs a nonempty sample set");
    std::set<std::string> bad;
    const auto& add = s.add;
    const auto& mul = s.mul;
    for (const KValue& x : samples) {
        if (!(add(x, s.zero) == x) || !(add(s.zero, x) == x))
            bad.insert("zero not additive identity");
        if (!(mul(x, s.one) == x) || !(mul(s.one, x) == x))
            bad.insert("one not multiplicative identity");
        if (!(mul(x, s.zero) == s.zero) || !(mul(s.zero, x) == s.zero))
            bad.insert("zero not annihilating");
        for (const KValue& y : samples) {
            if (!(add(x, y) == add(y, x))) bad.insert("add not commutative");
            if (s.commutative && !(mul(x, y) == mul(y, x)))
                bad.insert("mul not commutative (flagged commutative)");
            for (const KValue& z : samples) {
                if (!(add(add(x, y), z) == add(x, add(y, z)))) bad.insert("add not associative");
                if (!(mul(mul(x, y), z) == mul(x, mul(y, z)))) bad.insert("mul not associative");
                if (!(mul(x, add(y, z)) == add(mul(x, y), mul(x, z))))
                    bad.insert("mul does not left-distribute over add");
                if (!(mul(add(y, z), x) == add(mul(y, x), mul(z, x))))
                    bad.insert("mul does not right-distribute over add");
            }
        }
    }
    return {bad.begin(), bad.end()};
}

} // namespace araml
