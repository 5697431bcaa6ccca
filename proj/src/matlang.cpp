#include "araml/matlang.hpp"

#include "araml/error.hpp"

namespace araml {

const SizePair& MatrixSchema::at(const std::string& name) const {
    auto it = vars.find(name);
    if (it == vars.end()) throw SchemaError("unknown matrix variable '" + name + "'");
    return it->second;
}

void SizeAssignment::set(const SizeTerm& term, int n) {
    if (term == kUnitSize) {
        if (n != 1) throw SchemaError("the unit size term is fixed to 1");
        return;
    }
    if (n < 1) throw SchemaError("size of '" + term + "' must be strictly positive");
    sizes_[term] = n;
}

int SizeAssignment::value_of(const SizeTerm& term) const {
    if (term == kUnitSize) return 1;
    auto it = sizes_.find(term);
    if (it == sizes_.end()) throw SchemaError("no size assigned to size term '" + term + "'");
    return it->second;
}

bool SizeAssignment::has(const SizeTerm& term) const {
    return term == kUnitSize || sizes_.count(term) != 0;
}

Matrix::Matrix(int rows, int cols, const Semiring& k) : rows_(rows), cols_(cols), k_(k) {
    if (rows < 1 || cols < 1) throw SchemaError("matrix dimensions must be strictly positive");
    cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), k->zero);
}

std::size_t Matrix::idx(int i, int j) const {
    if (i < 1 || i > rows_ || j < 1 || j > cols_)
        throw InvariantError("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                             ") out of range for " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j - 1);
}

bool Matrix::conforms_to(const SizePair& s, const SizeAssignment& sigma) const {
    return rows_ == sigma.value_of(s.rows) && cols_ == sigma.value_of(s.cols);
}

bool Matrix::equals(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && k_->name == o.k_->name && cells_ == o.cells_;
}

namespace ml {

MlPtr var(std::string name, SizePair schema) {
    auto e = std::make_shared<MlExpr>();
    e->kind = MlKind::Var;
    e->var_name = std::move(name);
    e->schema = std::move(schema);
    return e;
}

MlPtr var(std::string name, const MatrixSchema& s) {
    SizePair schema = s.at(name);
    return var(std::move(name), std::move(schema));
}

MlPtr transpose(MlPtr sub) {
    auto e = std::make_shared<MlExpr>();
    e->kind = MlKind::Transpose;
    e->schema = {sub->schema.cols, sub->schema.rows};
    e->args = {std::move(sub)};
    return e;
}

MlPtr ones(MlPtr sub) {
    auto e = std::make_shared<MlExpr>();
    e->kind = MlKind::Ones;
    e->schema = {sub->schema.rows, kUnitSize};
    e->args = {std::move(sub)};
    return e;
}

MlPtr diag(MlPtr sub) {
    if (sub->schema.cols != kUnitSize)
        throw SchemaError("diag needs a column vector, got " + sub->schema.str());
    auto e = std::make_shared<MlExpr>();
    e->kind = MlKind::Diag;
    e->schema = {sub->schema.rows, sub->schema.rows};
    e->args = {std::move(sub)};
    return e;
}

MlPtr matmul(MlPtr lhs, MlPtr rhs) {
    if (lhs->schema.cols != rhs->schema.rows)
        throw SchemaError("matrix product inner size terms differ: " + lhs->schema.str() +
                          " vs " + rhs->schema.str());
    auto e = std::make_shared<MlExpr>();
    e->kind = MlKind::MatMul;
    e->schema = {lhs->schema.rows, rhs->schema.cols};
    e->args = {std::move(lhs), std::move(rhs)};
    return e;
}

namespace {
MlPtr pointwise(MlKind kind, MlPtr lhs, MlPtr rhs, const char* what) {
    if (!(lhs->schema == rhs->schema))
        throw SchemaError(std::string(what) + " of matrices with different schemas: " +
                          lhs->schema.str() + " vs " + rhs->schema.str());
    auto e = std::make_shared<MlExpr>();
    e->kind = kind;
    e->schema = lhs->schema;
    e->args = {std::move(lhs), std::move(rhs)};
    return e;
}
} // namespace

MlPtr add(MlPtr lhs, MlPtr rhs) {
    return pointwise(MlKind::Add, std::move(lhs), std::move(rhs), "addition");
}

MlPtr hadamard(MlPtr lhs, MlPtr rhs) {
    return pointwise(MlKind::Hadamard, std::move(lhs), std::move(rhs), "Hadamard product");
}

} // namespace ml

const Matrix& MatInstance::at(const std::string& name) const {
    auto it = matrices.find(name);
    if (it == matrices.end()) throw SchemaError("instance has no matrix '" + name + "'");
    return it->second;
}

void MatInstance::validate() const {
    for (const auto& [name, s] : schema.vars) {
        auto it = matrices.find(name);
        if (it == matrices.end()) throw SchemaError("instance is missing matrix '" + name + "'");
        if (!it->second.conforms_to(s, sizes))
            throw SchemaError("matrix '" + name + "' does not conform to " + s.str());
    }
}

SizePair ml_infer_schema(const MlPtr& e, const MatrixSchema& s) {
    switch (e->kind) {
    case MlKind::Var:
        return s.at(e->var_name);
    case MlKind::Transpose: {
        SizePair sub = ml_infer_schema(e->args[0], s);
        return {sub.cols, sub.rows};
    }
    case MlKind::Ones:
        return {ml_infer_schema(e->args[0], s).rows, kUnitSize};
    case MlKind::Diag: {
        SizePair sub = ml_infer_schema(e->args[0], s);
        if (sub.cols != kUnitSize)
            throw SchemaError("diag needs a column vector, got " + sub.str());
        return {sub.rows, sub.rows};
    }
    case MlKind::MatMul: {
        SizePair l = ml_infer_schema(e->args[0], s);
        SizePair r = ml_infer_schema(e->args[1], s);
        if (l.cols != r.rows)
            throw SchemaError("matrix product inner size terms differ: " + l.str() + " vs " +
                              r.str());
        return {l.rows, r.cols};
    }
    case MlKind::Add:
    case MlKind::Hadamard: {
        SizePair l = ml_infer_schema(e->args[0], s);
        SizePair r = ml_infer_schema(e->args[1], s);
        if (!(l == r))
            throw SchemaError("pointwise operation on different schemas: " + l.str() + " vs " +
                              r.str());
        return l;
    }
    }
    throw InvariantError("unhandled expression kind");
}

Matrix ml_evaluate(const MlPtr& e, const MatInstance& I) {
    const Semiring& k = I.semiring;
    switch (e->kind) {
    case MlKind::Var:
        return I.at(e->var_name);
    case MlKind::Transpose: {
        Matrix sub = ml_evaluate(e->args[0], I);
        Matrix out(sub.cols(), sub.rows(), k);
        for (int i = 1; i <= sub.rows(); ++i)
            for (int j = 1; j <= sub.cols(); ++j) out.set(j, i, sub.at(i, j));
        return out;
    }
    case MlKind::Ones: {
        Matrix sub = ml_evaluate(e->args[0], I);
        Matrix out(sub.rows(), 1, k);
        for (int i = 1; i <= sub.rows(); ++i) out.set(i, 1, k->one);
        return out;
    }
    case MlKind::Diag: {
        Matrix sub = ml_evaluate(e->args[0], I);
        if (sub.cols() != 1) throw InvariantError("diag of a non-column matrix");
        Matrix out(sub.rows(), sub.rows(), k);
        for (int i = 1; i <= sub.rows(); ++i) out.set(i, i, sub.at(i, 1));
        return out;
    }
    case MlKind::MatMul: {
        Matrix l = ml_evaluate(e->args[0], I);
        Matrix r = ml_evaluate(e->args[1], I);
        if (l.cols() != r.rows()) throw InvariantError("matrix product dimension mismatch");
        Matrix out(l.rows(), r.cols(), k);
        for (int i = 1; i <= l.rows(); ++i)
            for (int j = 1; j <= r.cols(); ++j) {
                KValue acc = k->zero;
                for (int m = 1; m <= l.cols(); ++m)
                    acc = k->add(acc, k->mul(l.at(i, m), r.at(m, j)));
                out.set(i, j, std::move(acc));
            }
        return out;
    }
    case MlKind::Add:
    case MlKind::Hadamard: {
        Matrix l = ml_evaluate(e->args[0], I);
        Matrix r = ml_evaluate(e->args[1], I);
        if (l.rows() != r.rows() || l.cols() != r.cols())
            throw InvariantError("pointwise operation dimension mismatch");
        const auto& op = e->kind == MlKind::Add ? k->add : k->mul;
        Matrix out(l.rows(), l.cols(), k);
        for (int i = 1; i <= l.rows(); ++i)
            for (int j = 1; j <= l.cols(); ++j) out.set(i, j, op(l.at(i, j), r.at(i, j)));
        return out;
    }
    }
    throw InvariantError("unhandled expression kind");
}

bool equal(const MlPtr& a, const MlPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind || a->args.size() != b->args.size()) return false;
    if (a->kind == MlKind::Var && (a->var_name != b->var_name || !(a->schema == b->schema)))
        return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

std::size_t node_count(const MlPtr& e) {
    std::size_t n = 1;
    for (const auto& a : e->args) n += node_count(a);
    return n;
}

} // namespace araml
