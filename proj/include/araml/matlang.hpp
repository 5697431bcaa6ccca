#ifndef ARAML_MATLANG_HPP
#define ARAML_MATLANG_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "araml/semiring.hpp"

namespace araml {

/// Symbolic dimension name. "1" is the distinguished unit size.
using SizeTerm = std::string;
inline const SizeTerm kUnitSize = "1";

/// rows x cols as size terms.
struct SizePair {
    SizeTerm rows;
    SizeTerm cols;
    bool operator==(const SizePair&) const = default;
    std::string str() const { return rows + " x " + cols; }
};

/// Matrix variable -> size-term pair.
struct MatrixSchema {
    std::map<std::string, SizePair> vars;

    const SizePair& at(const std::string& name) const; // throws SchemaError
    bool operator==(const MatrixSchema&) const = default;
};

/// Size term -> strictly positive integer, with "1" pinned to 1.
class SizeAssignment {
public:
    void set(const SizeTerm& term, int n); // n >= 1, term != "1"
    int value_of(const SizeTerm& term) const; // throws if unset
    bool has(const SizeTerm& term) const;
    const std::map<SizeTerm, int>& sizes() const { return sizes_; }
    bool operator==(const SizeAssignment&) const = default;

private:
    std::map<SizeTerm, int> sizes_;
};

/// Dense row-major matrix of annotation values. Indices are 1-based to
/// match the usual matrix convention.
class Matrix {
public:
    Matrix(int rows, int cols, const Semiring& k); // filled with zero

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Semiring& semiring() const { return k_; }
    const KValue& at(int i, int j) const { return cells_[idx(i, j)]; }
    void set(int i, int j, KValue v) { cells_[idx(i, j)] = std::move(v); }

    bool conforms_to(const SizePair& s, const SizeAssignment& sigma) const;
    bool equals(const Matrix& o) const;

private:
    std::size_t idx(int i, int j) const;
    int rows_, cols_;
    Semiring k_;
    std::vector<KValue> cells_;
};

struct MlExpr;
using MlPtr = std::shared_ptr<const MlExpr>;

enum class MlKind { Var, Transpose, Ones, Diag, MatMul, Add, Hadamard };

/// A matrix-language expression node; immutable, carries its inferred
/// size-term schema. Build through the ml:: factories.
struct MlExpr {
    MlKind kind;
    std::string var_name; // Var
    std::vector<MlPtr> args;
    SizePair schema;      // inferred at construction
};

namespace ml {

MlPtr var(std::string name, SizePair schema);
MlPtr var(std::string name, const MatrixSchema& s);
MlPtr transpose(MlPtr sub);
/// The all-ones column vector with the row count of `sub`.
MlPtr ones(MlPtr sub);
/// Column vector to diagonal matrix; requires schema alpha x 1.
MlPtr diag(MlPtr sub);
MlPtr matmul(MlPtr lhs, MlPtr rhs); // inner size terms must match
MlPtr add(MlPtr lhs, MlPtr rhs);
MlPtr hadamard(MlPtr lhs, MlPtr rhs);

} // namespace ml

/// A matrix instance: one matrix per variable, plus the size assignment
/// and semiring. Matrices must conform to their schemas.
struct MatInstance {
    MatrixSchema schema;
    SizeAssignment sizes;
    Semiring semiring;
    std::map<std::string, Matrix> matrices;

    const Matrix& at(const std::string& name) const; // throws SchemaError
    void validate() const;
};

/// Re-derives the schema of `e` against `s`, revalidating every node.
SizePair ml_infer_schema(const MlPtr& e, const MatrixSchema& s);

/// Evaluates `e` on `I`. Inner products sum in ascending index order.
Matrix ml_evaluate(const MlPtr& e, const MatInstance& I);

bool equal(const MlPtr& a, const MlPtr& b);
std::size_t node_count(const MlPtr& e);

} // namespace araml

#endif
