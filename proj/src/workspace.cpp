#include "araml/workspace.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "araml/text.hpp"

namespace araml {

namespace {

std::optional<std::string> read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

const DatabaseSchema& Workspace::db_schema() const {
    if (!rel)
        throw Error("workspace '" + dir + "' has no relational file (instance.ara or schema.ara)");
    return rel->schema;
}

const Instance& Workspace::instance() const {
    if (!rel || !rel_has_data)
        throw Error("workspace '" + dir + "' has no relational instance (instance.ara)");
    return *rel;
}

const MatrixSchema& Workspace::matrix_schema() const {
    if (!mat)
        throw Error("workspace '" + dir + "' has no matrix file (instance.ml or schema.ml)");
    return mat->schema;
}

const MatInstance& Workspace::mat_instance() const {
    if (!mat || !mat_has_data)
        throw Error("workspace '" + dir + "' has no matrix instance (instance.ml)");
    return *mat;
}

Workspace load_workspace(const std::string& dir, const Semiring& k) {
    Workspace w;
    w.dir = dir;
    w.semiring = k;
    std::filesystem::path base(dir);

    auto rel_schema_text = read_file(base / "schema.ara");
    auto rel_instance_text = read_file(base / "instance.ara");
    if (rel_instance_text) {
        w.rel = parse_rel_document(*rel_instance_text, k);
        w.rel->validate();
        w.rel_has_data = true;
        if (rel_schema_text) {
            Instance declared = parse_rel_document(*rel_schema_text, k);
            if (!(declared.schema == w.rel->schema))
                throw Error("schema.ara and instance.ara declare different relation schemas");
        }
    } else if (rel_schema_text) {
        w.rel = parse_rel_document(*rel_schema_text, k);
    }

    auto mat_schema_text = read_file(base / "schema.ml");
    auto mat_instance_text = read_file(base / "instance.ml");
    if (mat_instance_text) {
        w.mat = parse_mat_document(*mat_instance_text, k);
        w.mat->validate();
        w.mat_has_data = true;
        if (mat_schema_text) {
            MatInstance declared = parse_mat_document(*mat_schema_text, k);
            if (!(declared.schema == w.mat->schema))
                throw Error("schema.ml and instance.ml declare different matrix schemas");
        }
    } else if (mat_schema_text) {
        w.mat = parse_mat_document(*mat_schema_text, k);
    }

    if (!w.rel && !w.mat)
        throw Error("workspace '" + dir +
                    "' has none of instance.ara, schema.ara, instance.ml, schema.ml");
    return w;
}

} // namespace araml
