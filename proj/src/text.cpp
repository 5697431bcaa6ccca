#include "araml/text.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace araml {

namespace {

// ---------------------------------------------------------------------------
// Token stream shared by the two expression grammars.

struct Token {
    enum Kind { Ident, Number, Punct, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    bool at(const std::string& text) const { return tok_.text == text && tok_.kind != Token::End; }
    bool at_end() const { return tok_.kind == Token::End; }
    Token expect(const std::string& text) {
        if (!at(text))
            throw ParseError("expected '" + text + "', got '" +
                                 (at_end() ? "end of input" : tok_.text) + "'",
                             tok_.line, tok_.col);
        return next();
    }
    Token expect_ident() {
        if (tok_.kind != Token::Ident)
            throw ParseError("expected a name, got '" +
                                 (at_end() ? "end of input" : tok_.text) + "'",
                             tok_.line, tok_.col);
        return next();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }

private:
    void advance() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_ = Token{Token::End, "", line_, col_};
        if (pos_ >= src_.size()) return;
        char c = src_[pos_];
        tok_.line = line_;
        tok_.col = col_;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                take();
            tok_.kind = Token::Ident;
            tok_.text = std::string(src_.substr(start, pos_ - start));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                take();
            tok_.kind = Token::Number;
            tok_.text = std::string(src_.substr(start, pos_ - start));
        } else {
            tok_.kind = Token::Punct;
            if (src_.substr(pos_, 2) == "->" || src_.substr(pos_, 2) == ".*") {
                tok_.text = std::string(src_.substr(pos_, 2));
                take();
                take();
            } else {
                tok_.text = std::string(1, c);
                take();
            }
        }
    }
    void take() {
        ++pos_;
        ++col_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

Attribute resolve_attr(const RelationSchema& schema, const Token& name) {
    if (auto a = schema.find(name.text)) return *a;
    throw ParseError("attribute '" + name.text + "' not in the subexpression schema", name.line,
                     name.col);
}

// ---------------------------------------------------------------------------
// Relational expressions.

class AraParser {
public:
    AraParser(std::string_view text, const DatabaseSchema& s) : lex_(text), schema_(s) {}

    AraPtr parse() {
        AraPtr e = expr();
        if (!lex_.at_end()) lex_.fail("unexpected trailing input '" + lex_.peek().text + "'");
        return e;
    }

private:
    AraPtr expr() {
        AraPtr e = term();
        while (lex_.at("+")) {
            lex_.next();
            e = wrap([&] { return ara::union_(e, term()); });
        }
        return e;
    }

    AraPtr term() {
        AraPtr e = factor();
        while (lex_.at("join")) {
            lex_.next();
            e = wrap([&] { return ara::join(e, factor()); });
        }
        return e;
    }

    AraPtr factor() {
        const Token& t = lex_.peek();
        if (t.text == "(") {
            lex_.next();
            AraPtr e = expr();
            lex_.expect(")");
            return e;
        }
        if (t.kind != Token::Ident) lex_.fail("expected an expression");
        if (t.text == "one") return parse_one();
        if (t.text == "proj") return parse_proj();
        if (t.text == "sel") return parse_sel();
        if (t.text == "ren") return parse_ren();
        if (t.text == "comp") return parse_comp();
        Token name = lex_.next();
        auto it = schema_.relations.find(name.text);
        if (it == schema_.relations.end())
            throw ParseError("unknown relation name '" + name.text + "'", name.line, name.col);
        return ara::rel(name.text, it->second);
    }

    AraPtr parse_one() {
        lex_.next();
        lex_.expect("(");
        AraPtr sub = expr();
        lex_.expect(")");
        return ara::one(sub);
    }

    std::vector<Token> brace_names(bool allow_empty) {
        lex_.expect("{");
        std::vector<Token> names;
        if (!lex_.at("}")) {
            names.push_back(lex_.expect_ident());
            while (lex_.at(",")) {
                lex_.next();
                names.push_back(lex_.expect_ident());
            }
        }
        if (names.empty() && !allow_empty) lex_.fail("expected at least one attribute name");
        lex_.expect("}");
        return names;
    }

    AraPtr parse_proj() {
        lex_.next();
        std::vector<Token> names = brace_names(true);
        lex_.expect("(");
        AraPtr sub = expr();
        lex_.expect(")");
        std::vector<Attribute> attrs;
        for (const auto& n : names) attrs.push_back(resolve_attr(sub->schema, n));
        return wrap([&] { return ara::project(RelationSchema(std::move(attrs)), sub); });
    }

    AraPtr parse_sel() {
        lex_.next();
        std::vector<Token> names = brace_names(false);
        lex_.expect("(");
        AraPtr sub = expr();
        lex_.expect(")");
        std::vector<Attribute> attrs;
        for (const auto& n : names) attrs.push_back(resolve_attr(sub->schema, n));
        return wrap([&] { return ara::select(std::move(attrs), sub); });
    }

    AraPtr parse_ren() {
        lex_.next();
        lex_.expect("{");
        std::vector<std::pair<Token, Token>> raw;
        if (!lex_.at("}")) {
            while (true) {
                Token from = lex_.expect_ident();
                lex_.expect("->");
                Token to = lex_.expect_ident();
                raw.push_back({from, to});
                if (!lex_.at(",")) break;
                lex_.next();
            }
        }
        lex_.expect("}");
        lex_.expect("(");
        AraPtr sub = expr();
        lex_.expect(")");
        std::vector<std::pair<Attribute, Attribute>> pairs;
        for (const auto& [from, to] : raw) {
            Attribute src = resolve_attr(sub->schema, from);
            pairs.push_back({src, Attribute{to.text, src.sort}}); // target inherits the sort
        }
        return wrap([&] { return ara::rename(AttrBijection(std::move(pairs)), sub); });
    }

    AraPtr parse_comp() {
        lex_.next();
        lex_.expect("{");
        Token attr = lex_.expect_ident();
        lex_.expect(",");
        Token bound = lex_.next();
        if (bound.kind != Token::Number)
            throw ParseError("expected the arity bound, got '" + bound.text + "'", bound.line,
                             bound.col);
        lex_.expect("}");
        lex_.expect("(");
        std::vector<AraPtr> args;
        args.push_back(expr());
        while (lex_.at(",")) {
            lex_.next();
            args.push_back(expr());
        }
        lex_.expect(")");
        Attribute a = resolve_attr(args[0]->schema, attr);
        return wrap([&] { return ara::compose(a, std::stoi(bound.text), std::move(args)); });
    }

    // converts SchemaError from the factories into a positioned ParseError
    AraPtr wrap(const std::function<AraPtr()>& build) {
        try {
            return build();
        } catch (const SchemaError& e) {
            throw ParseError(e.what(), lex_.peek().line, lex_.peek().col);
        }
    }

    Lexer lex_;
    const DatabaseSchema& schema_;
};

// ---------------------------------------------------------------------------
// Matrix expressions.

class MlParser {
public:
    MlParser(std::string_view text, const MatrixSchema& s) : lex_(text), schema_(s) {}

    MlPtr parse() {
        MlPtr e = expr();
        if (!lex_.at_end()) lex_.fail("unexpected trailing input '" + lex_.peek().text + "'");
        return e;
    }

private:
    MlPtr expr() {
        MlPtr e = term();
        while (lex_.at("+")) {
            lex_.next();
            e = wrap([&] { return ml::add(e, term()); });
        }
        return e;
    }

    MlPtr term() {
        MlPtr e = factor();
        while (lex_.at("*") || lex_.at(".*")) {
            bool pointwise = lex_.next().text == ".*";
            e = wrap([&] {
                return pointwise ? ml::hadamard(e, factor()) : ml::matmul(e, factor());
            });
        }
        return e;
    }

    MlPtr factor() {
        const Token& t = lex_.peek();
        if (t.text == "(") {
            lex_.next();
            MlPtr e = expr();
            lex_.expect(")");
            return e;
        }
        if (t.kind != Token::Ident) lex_.fail("expected an expression");
        if (t.text == "t" || t.text == "ones" || t.text == "diag") {
            Token fn = lex_.next();
            lex_.expect("(");
            MlPtr sub = expr();
            lex_.expect(")");
            return wrap([&]() -> MlPtr {
                if (fn.text == "t") return ml::transpose(sub);
                if (fn.text == "ones") return ml::ones(sub);
                return ml::diag(sub);
            });
        }
        Token name = lex_.next();
        auto it = schema_.vars.find(name.text);
        if (it == schema_.vars.end())
            throw ParseError("unknown matrix variable '" + name.text + "'", name.line, name.col);
        return ml::var(name.text, it->second);
    }

    MlPtr wrap(const std::function<MlPtr()>& build) {
        try {
            return build();
        } catch (const SchemaError& e) {
            throw ParseError(e.what(), lex_.peek().line, lex_.peek().col);
        }
    }

    Lexer lex_;
    const MatrixSchema& schema_;
};

// ---------------------------------------------------------------------------
// Printers. Precedence: union/add lowest, join/product next, atoms highest.

std::string ara_text(const AraPtr& e, int min_prec);

std::string attr_list(const std::vector<Attribute>& attrs) {
    std::string s;
    for (const auto& a : attrs) {
        if (!s.empty()) s += ",";
        s += a.name;
    }
    return s;
}

int ara_prec(const AraPtr& e) {
    switch (e->kind) {
    case AraKind::Union:
        return 0;
    case AraKind::Join:
        return 1;
    default:
        return 2;
    }
}

std::string ara_text(const AraPtr& e, int min_prec) {
    std::string s;
    switch (e->kind) {
    case AraKind::Rel:
        s = e->rel_name;
        break;
    case AraKind::One:
        s = "one(" + ara_text(e->args[0], 0) + ")";
        break;
    case AraKind::Union:
        s = ara_text(e->args[0], 0) + " + " + ara_text(e->args[1], 1);
        break;
    case AraKind::Project:
        s = "proj{" + attr_list(e->project_onto.attrs()) + "}(" + ara_text(e->args[0], 0) + ")";
        break;
    case AraKind::Select:
        s = "sel{" + attr_list(e->select_on) + "}(" + ara_text(e->args[0], 0) + ")";
        break;
    case AraKind::Rename: {
        std::string pairs;
        for (const auto& [from, to] : e->rename_map.pairs()) {
            if (!pairs.empty()) pairs += ",";
            pairs += from.name + "->" + to.name;
        }
        s = "ren{" + pairs + "}(" + ara_text(e->args[0], 0) + ")";
        break;
    }
    case AraKind::Join:
        s = ara_text(e->args[0], 1) + " join " + ara_text(e->args[1], 2);
        break;
    case AraKind::Compose: {
        s = "comp{" + e->compose_attr.name + "," + std::to_string(e->compose_bound) + "}(";
        for (std::size_t i = 0; i < e->args.size(); ++i) {
            if (i) s += ", ";
            s += ara_text(e->args[i], 0);
        }
        s += ")";
        break;
    }
    }
    return ara_prec(e) < min_prec ? "(" + s + ")" : s;
}

int ml_prec(const MlPtr& e) {
    switch (e->kind) {
    case MlKind::Add:
        return 0;
    case MlKind::MatMul:
    case MlKind::Hadamard:
        return 1;
    default:
        return 2;
    }
}

std::string ml_text(const MlPtr& e, int min_prec) {
    std::string s;
    switch (e->kind) {
    case MlKind::Var:
        s = e->var_name;
        break;
    case MlKind::Transpose:
        s = "t(" + ml_text(e->args[0], 0) + ")";
        break;
    case MlKind::Ones:
        s = "ones(" + ml_text(e->args[0], 0) + ")";
        break;
    case MlKind::Diag:
        s = "diag(" + ml_text(e->args[0], 0) + ")";
        break;
    case MlKind::MatMul:
        s = ml_text(e->args[0], 1) + " * " + ml_text(e->args[1], 2);
        break;
    case MlKind::Add:
        s = ml_text(e->args[0], 0) + " + " + ml_text(e->args[1], 1);
        break;
    case MlKind::Hadamard:
        s = ml_text(e->args[0], 1) + " .* " + ml_text(e->args[1], 2);
        break;
    }
    return ml_prec(e) < min_prec ? "(" + s + ")" : s;
}

// ---------------------------------------------------------------------------
// Line-oriented instance documents.

struct Line {
    std::string text;
    int number;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    int n = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        std::size_t first = 0;
        while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first])))
            ++first;
        line = line.substr(first);
        if (!line.empty()) out.push_back({line, n});
        ++n;
        start = end + 1;
        if (end == text.size()) break;
    }
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void doc_fail(const Line& line, const std::string& msg) {
    throw ParseError(msg, line.number, 1);
}

// splits "head(body)" and returns {head, body}; body may be empty
std::pair<std::string, std::string> split_call(const Line& line, const std::string& s) {
    std::size_t open = s.find('(');
    std::size_t close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        doc_fail(line, "expected 'name(...)'");
    return {trim(s.substr(0, open)), trim(s.substr(open + 1, close - open - 1))};
}

} // namespace

AraPtr parse_ara(std::string_view text, const DatabaseSchema& s) {
    return AraParser(text, s).parse();
}

std::string print_ara(const AraPtr& e) { return ara_text(e, 0); }

MlPtr parse_ml(std::string_view text, const MatrixSchema& s) { return MlParser(text, s).parse(); }

std::string print_ml(const MlPtr& e) { return ml_text(e, 0); }

std::string print_relation(const KRelation& r, const DomainAssignment* d) {
    std::vector<std::pair<Tuple, KValue>> rows;
    for (const auto& [t, v] : r.rows())
        if (!(v == r.semiring()->zero)) rows.push_back({t, v});

    if (d != nullptr) {
        auto key = [&](const Tuple& t) {
            std::vector<std::size_t> k;
            for (std::size_t i = 0; i < t.size(); ++i)
                k.push_back(d->index_of(r.schema().at(i).sort, t[i]));
            return k;
        };
        std::sort(rows.begin(), rows.end(),
                  [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
    }

    std::ostringstream os;
    for (const auto& a : r.schema()) os << a.name << " ";
    os << "| K\n";
    for (const auto& [t, v] : rows) {
        for (const auto& x : t) os << x.str() << " ";
        os << "| " << r.semiring()->print(v) << "\n";
    }
    return os.str();
}

std::string print_matrix(const Matrix& m) {
    std::ostringstream os;
    for (int i = 1; i <= m.rows(); ++i) {
        for (int j = 1; j <= m.cols(); ++j) {
            if (j > 1) os << " ";
            os << m.semiring()->print(m.at(i, j));
        }
        os << "\n";
    }
    return os.str();
}

Instance parse_rel_document(std::string_view text, const Semiring& k) {
    Instance I;
    I.semiring = k;
    std::map<std::string, std::string> attr_sorts; // name -> sort, for uniqueness
    for (const auto& line : split_lines(text)) {
        std::istringstream is(line.text);
        std::string word;
        is >> word;
        std::string rest = trim(line.text.substr(word.size()));
        if (word == "sort") {
            auto eq = rest.find('=');
            std::string name = trim(eq == std::string::npos ? rest : rest.substr(0, eq));
            if (name.empty()) doc_fail(line, "sort declaration needs a name");
            if (eq != std::string::npos) {
                std::vector<Atom> elems;
                for (const auto& piece : split_on(rest.substr(eq + 1), ',')) {
                    std::string p = trim(piece);
                    if (p.empty()) doc_fail(line, "empty domain element");
                    elems.push_back(Atom::parse(p));
                }
                try {
                    I.domains.set_domain(name, std::move(elems));
                } catch (const SchemaError& e) {
                    doc_fail(line, e.what());
                }
            }
        } else if (word == "rel") {
            auto [name, body] = split_call(line, rest);
            if (name.empty()) doc_fail(line, "relation declaration needs a name");
            std::vector<Attribute> attrs;
            if (!body.empty()) {
                for (const auto& piece : split_on(body, ',')) {
                    auto colon = piece.find(':');
                    if (colon == std::string::npos)
                        doc_fail(line, "expected 'attribute: sort' in relation declaration");
                    Attribute a{trim(piece.substr(0, colon)), trim(piece.substr(colon + 1))};
                    if (a.name.empty() || a.sort.empty())
                        doc_fail(line, "expected 'attribute: sort' in relation declaration");
                    auto [it, fresh] = attr_sorts.emplace(a.name, a.sort);
                    if (!fresh && it->second != a.sort)
                        doc_fail(line, "attribute '" + a.name + "' redeclared with sort '" +
                                           a.sort + "' (was '" + it->second + "')");
                    attrs.push_back(std::move(a));
                }
            }
            try {
                RelationSchema schema(std::move(attrs));
                I.schema.relations.emplace(name, schema);
                I.relations.emplace(name, KRelation(schema, k));
            } catch (const SchemaError& e) {
                doc_fail(line, e.what());
            }
        } else if (word == "tuple") {
            auto close = rest.rfind(')');
            if (close == std::string::npos) doc_fail(line, "expected 'tuple name(...) = value'");
            auto eq = rest.find('=', close);
            if (eq == std::string::npos) doc_fail(line, "tuple line is missing the annotation");
            auto [name, body] = split_call(line, rest.substr(0, close + 1));
            auto relIt = I.relations.find(name);
            if (relIt == I.relations.end())
                doc_fail(line, "tuple for undeclared relation '" + name + "'");
            const RelationSchema& schema = relIt->second.schema();
            Tuple t(schema.size());
            std::vector<bool> seen(schema.size(), false);
            if (!body.empty()) {
                for (const auto& piece : split_on(body, ',')) {
                    auto peq = piece.find('=');
                    if (peq == std::string::npos)
                        doc_fail(line, "expected 'attribute = value' in tuple");
                    std::string aname = trim(piece.substr(0, peq));
                    std::string aval = trim(piece.substr(peq + 1));
                    auto attr = schema.find(aname);
                    if (!attr)
                        doc_fail(line, "attribute '" + aname + "' not in relation '" + name + "'");
                    std::size_t idx = schema.index_of(*attr);
                    if (seen[idx]) doc_fail(line, "attribute '" + aname + "' listed twice");
                    seen[idx] = true;
                    Atom v = Atom::parse(aval);
                    if (!I.domains.has(attr->sort))
                        doc_fail(line, "sort '" + attr->sort + "' has no declared domain");
                    const auto& dom = I.domains.domain(attr->sort);
                    if (std::find(dom.begin(), dom.end(), v) == dom.end())
                        doc_fail(line, "value '" + aval + "' not in the domain of sort '" +
                                           attr->sort + "'");
                    t[idx] = v;
                }
            }
            for (std::size_t i = 0; i < schema.size(); ++i)
                if (!seen[i]) doc_fail(line, "tuple is missing attribute '" + schema.at(i).name + "'");
            try {
                relIt->second.set(std::move(t), k->parse(trim(rest.substr(eq + 1))));
            } catch (const Error& e) {
                doc_fail(line, e.what());
            }
        } else {
            doc_fail(line, "expected 'sort', 'rel' or 'tuple', got '" + word + "'");
        }
    }
    return I;
}

std::string write_rel_document(const Instance& I) {
    std::ostringstream os;
    for (const auto& [sort, elems] : I.domains.domains()) {
        os << "sort " << sort << " =";
        for (std::size_t i = 0; i < elems.size(); ++i)
            os << (i ? ", " : " ") << elems[i].str();
        os << "\n";
    }
    for (const auto& [name, schema] : I.schema.relations) {
        os << "rel " << name << "(";
        bool first = true;
        for (const auto& a : schema) {
            if (!first) os << ", ";
            os << a.name << ": " << a.sort;
            first = false;
        }
        os << ")\n";
    }
    for (const auto& [name, rel] : I.relations) {
        for (const auto& [t, v] : rel.rows()) {
            os << "tuple " << name << "(";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) os << ", ";
                os << rel.schema().at(i).name << " = " << t[i].str();
            }
            os << ") = " << I.semiring->print(v) << "\n";
        }
    }
    return os.str();
}

MatInstance parse_mat_document(std::string_view text, const Semiring& k) {
    MatInstance I;
    I.semiring = k;
    std::vector<Line> lines = split_lines(text);
    std::size_t li = 0;
    while (li < lines.size()) {
        const Line& line = lines[li];
        std::istringstream is(line.text);
        std::string word;
        is >> word;
        std::string rest = trim(line.text.substr(word.size()));
        if (word == "size") {
            auto eq = rest.find('=');
            if (eq == std::string::npos) doc_fail(line, "expected 'size name = n'");
            std::string name = trim(rest.substr(0, eq));
            std::string val = trim(rest.substr(eq + 1));
            try {
                I.sizes.set(name, std::stoi(val));
            } catch (const std::exception&) {
                doc_fail(line, "bad size value '" + val + "'");
            }
            ++li;
        } else if (word == "matrix") {
            auto colon = rest.find(':');
            if (colon == std::string::npos) doc_fail(line, "expected 'matrix name : rows x cols'");
            std::string name = trim(rest.substr(0, colon));
            std::string shape = trim(rest.substr(colon + 1));
            std::string grid;
            bool has_grid = false;
            if (auto eq = shape.find('='); eq != std::string::npos) {
                has_grid = true;
                grid = trim(shape.substr(eq + 1));
                shape = trim(shape.substr(0, eq));
            }
            std::istringstream ss(shape);
            std::string rows, x, cols;
            ss >> rows >> x >> cols;
            if (x != "x" || rows.empty() || cols.empty())
                doc_fail(line, "expected 'rows x cols' in matrix declaration");
            I.schema.vars[name] = SizePair{rows, cols};
            ++li;
            if (!has_grid) continue;
            // collect entry tokens until the closing bracket
            if (grid.empty() || grid.front() != '[')
                doc_fail(line, "expected '[' to open the entry grid");
            std::string entries = grid.substr(1);
            while (entries.find(']') == std::string::npos) {
                if (li >= lines.size()) doc_fail(line, "unterminated entry grid");
                entries += " " + lines[li].text;
                ++li;
            }
            entries.resize(entries.find(']'));
            int nr = 0, nc = 0;
            try {
                nr = I.sizes.value_of(rows);
                nc = I.sizes.value_of(cols);
            } catch (const SchemaError& e) {
                doc_fail(line, e.what());
            }
            Matrix m(nr, nc, k);
            std::istringstream es(entries);
            std::string tok;
            int idx = 0;
            while (es >> tok) {
                if (idx >= nr * nc) doc_fail(line, "too many entries in grid for '" + name + "'");
                try {
                    m.set(idx / nc + 1, idx % nc + 1, k->parse(tok));
                } catch (const Error& e) {
                    doc_fail(line, e.what());
                }
                ++idx;
            }
            if (idx != nr * nc)
                doc_fail(line, "grid for '" + name + "' has " + std::to_string(idx) +
                                   " entries, expected " + std::to_string(nr * nc));
            I.matrices.emplace(name, std::move(m));
        } else {
            doc_fail(line, "expected 'size' or 'matrix', got '" + word + "'");
        }
    }
    return I;
}

std::string write_mat_document(const MatInstance& I) {
    std::ostringstream os;
    for (const auto& [term, n] : I.sizes.sizes()) os << "size " << term << " = " << n << "\n";
    for (const auto& [name, s] : I.schema.vars) {
        os << "matrix " << name << " : " << s.rows << " x " << s.cols;
        auto it = I.matrices.find(name);
        if (it == I.matrices.end()) {
            os << "\n";
            continue;
        }
        os << " = [\n";
        for (int i = 1; i <= it->second.rows(); ++i) {
            os << " ";
            for (int j = 1; j <= it->second.cols(); ++j)
                os << " " << I.semiring->print(it->second.at(i, j));
            os << "\n";
        }
        os << "]\n";
    }
    return os.str();
}

} // namespace araml
