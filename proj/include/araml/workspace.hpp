#ifndef ARAML_WORKSPACE_HPP
#define ARAML_WORKSPACE_HPP

#include <optional>
#include <string>

#include "araml/ara.hpp"
#include "araml/matlang.hpp"

namespace araml {

/// The files a command works against, loaded from one directory:
/// instance.ara or schema.ara for the relational side, instance.ml or
/// schema.ml for the matrix side. Instance files carry data; schema files
/// may declare sorts and shapes only.
struct Workspace {
    std::string dir;
    Semiring semiring;
    std::optional<Instance> rel;
    std::optional<MatInstance> mat;
    bool rel_has_data = false;
    bool mat_has_data = false;

    const DatabaseSchema& db_schema() const;    // throws when no .ara file loaded
    const Instance& instance() const;           // throws when only schema-level data exists
    const MatrixSchema& matrix_schema() const;  // throws when no .ml file loaded
    const MatInstance& mat_instance() const;
};

/// Loads whatever of the four files exists under `dir` and cross-checks
/// instance files against schema files when both are present.
Workspace load_workspace(const std::string& dir, const Semiring& k);

} // namespace araml

#endif
