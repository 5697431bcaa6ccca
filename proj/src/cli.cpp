#include "araml/cli.hpp"

#include <filesystem>
#include <fstream>

#include "CLI11.hpp"

#include "araml/bridge.hpp"
#include "araml/harness.hpp"
#include "araml/normalform.hpp"
#include "araml/text.hpp"
#include "araml/workspace.hpp"

namespace araml {

namespace {

struct Common {
    std::string workspace = ".";
    std::string semiring = "int";
    std::string tokens;

    Semiring ring() const {
        std::vector<std::string> alphabet;
        std::string cur;
        for (char c : tokens) {
            if (c == ',') {
                if (!cur.empty()) alphabet.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur += c;
            }
        }
        if (!cur.empty()) alphabet.push_back(cur);
        return semiring_by_name(semiring, alphabet);
    }
};

// drops mismatching subexpressions down to a minimal failing node
AraPtr shrink_expr(AraPtr e, const Instance& I) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& child : e->args) {
            if (!evaluate(child, I).equals(oracle_evaluate(child, I))) {
                e = child;
                changed = true;
                break;
            }
        }
    }
    return e;
}

// truncates domains while the kernel/oracle mismatch persists
Instance shrink_domains(const AraPtr& e, Instance I) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [sort, elems] : I.domains.domains()) {
            if (elems.size() <= 1) continue;
            Instance candidate = I;
            std::vector<Atom> fewer(elems.begin(), elems.end() - 1);
            candidate.domains.set_domain(sort, fewer);
            for (auto& [name, rel] : candidate.relations) {
                KRelation kept(rel.schema(), rel.semiring());
                for (const auto& [t, v] : rel.rows()) {
                    bool inside = true;
                    for (std::size_t i = 0; i < t.size(); ++i) {
                        const auto& dom =
                            candidate.domains.domain(rel.schema().at(i).sort);
                        if (std::find(dom.begin(), dom.end(), t[i]) == dom.end()) inside = false;
                    }
                    if (inside) kept.set(t, v);
                }
                rel = kept;
            }
            if (!evaluate(e, candidate).equals(oracle_evaluate(e, candidate))) {
                I = std::move(candidate);
                changed = true;
                break;
            }
        }
    }
    return I;
}

void write_text_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << text;
}

int cmd_eval_ara(const Common& c, const std::string& expr, std::ostream& out) {
    Workspace w = load_workspace(c.workspace, c.ring());
    const Instance& I = w.instance();
    AraPtr e = parse_ara(expr, I.schema);
    out << print_relation(evaluate(e, I), &I.domains);
    return 0;
}

int cmd_eval_ml(const Common& c, const std::string& expr, std::ostream& out) {
    Workspace w = load_workspace(c.workspace, c.ring());
    const MatInstance& I = w.mat_instance();
    MlPtr e = parse_ml(expr, I.schema);
    out << print_matrix(ml_evaluate(e, I));
    return 0;
}

int cmd_normalize(const Common& c, const std::string& expr, int k, std::ostream& out,
                  std::ostream& err) {
    Workspace w = load_workspace(c.workspace, c.ring());
    AraPtr e = parse_ara(expr, w.db_schema());
    NormalForm nf = normalize(e, k, c.ring());
    out << print_ara(denote(nf)) << "\n";
    err << "normalize: " << nf.branches.size() << " branch(es), input " << node_count(e)
        << " nodes, normal form " << node_count(nf) << " nodes\n";
    return 0;
}

int cmd_to_ara(const Common& c, const std::string& expr, int certify, std::uint64_t seed,
               bool naive, std::ostream& out, std::ostream& err) {
    Workspace w = load_workspace(c.workspace, c.ring());
    const MatrixSchema& s = w.matrix_schema();
    MlPtr e = parse_ml(expr, s);
    AraPtr t = translate_ml_to_ara(e, s, {!naive});
    out << print_ara(t) << "\n";
    if (certify > 0) {
        GenConfig cfg;
        Rng g(seed);
        Semiring k = c.ring();
        for (int i = 0; i < certify; ++i) {
            MatInstance I = gen_mat_instance(s, k, g, cfg);
            KRelation lhs = rel_encode(ml_evaluate(e, I), e->schema, I.sizes, k);
            KRelation rhs = evaluate(t, rel_encode(I));
            if (!lhs.equals(rhs)) {
                err << "certify: counterexample on sample " << i + 1 << "\n"
                    << write_mat_document(I);
                return 1;
            }
        }
        err << "certify: " << certify << "/" << certify << " samples agree\n";
    }
    return 0;
}

int cmd_to_ml(const Common& c, const std::string& expr, int certify, std::uint64_t seed,
              bool naive, bool pipeline, std::ostream& out, std::ostream& err) {
    Workspace w = load_workspace(c.workspace, c.ring());
    const DatabaseSchema& s = w.db_schema();
    AraPtr e = parse_ara(expr, s);
    MlPtr t = pipeline ? compile_ara3_to_ml(e, s, c.ring(), {!naive})
                       : translate_ara_to_ml(e, s, {!naive});
    out << print_ml(t) << "\n";
    if (certify > 0) {
        GenConfig cfg;
        Rng g(seed);
        Semiring k = c.ring();
        for (int i = 0; i < certify; ++i) {
            Instance I = gen_instance(s, k, g, cfg);
            Matrix lhs = mat_decode(evaluate(e, I), I.domains);
            Matrix rhs = ml_evaluate(t, mat_decode(I));
            if (!lhs.equals(rhs)) {
                err << "certify: counterexample on sample " << i + 1 << "\n"
                    << write_rel_document(I);
                return 1;
            }
        }
        err << "certify: " << certify << "/" << certify << " samples agree\n";
    }
    return 0;
}

int cmd_check_equiv(const Common& c, const std::string& lhs, const std::string& rhs, int samples,
                    std::uint64_t seed, std::ostream& out, std::ostream& err) {
    Workspace w = load_workspace(c.workspace, c.ring());
    const DatabaseSchema& s = w.db_schema();
    AraPtr e1 = parse_ara(lhs, s);
    AraPtr e2 = parse_ara(rhs, s);
    if (!(e1->schema == e2->schema)) {
        err << "not equivalent: the expressions have different schemas\n";
        return 1;
    }
    GenConfig cfg;
    Rng g(seed);
    Semiring k = c.ring();
    for (int i = 0; i < samples; ++i) {
        Instance I = gen_instance(s, k, g, cfg);
        if (!evaluate(e1, I).equals(evaluate(e2, I))) {
            err << "not equivalent: counterexample on sample " << i + 1 << "\n"
                << write_rel_document(I);
            return 1;
        }
    }
    out << "equivalent on " << samples << " random instance(s)\n";
    return 0;
}

int cmd_fuzz(const Common& c, std::uint64_t seed, int count, int k, int depth,
             bool with_composition, const std::string& out_dir, std::ostream& out,
             std::ostream& err) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = depth;
    cfg.max_schema_arity = std::min(k, 3);
    Rng g(seed);
    Semiring ring = c.ring();
    for (int i = 0; i < count; ++i) {
        DatabaseSchema s = gen_db_schema(g, cfg);
        Instance I = gen_instance(s, ring, g, cfg);
        AraPtr e = gen_ara_expr(s, k, with_composition, g, cfg);
        if (evaluate(e, I).equals(oracle_evaluate(e, I))) continue;

        AraPtr small = shrink_expr(e, I);
        Instance shrunk = shrink_domains(small, I);
        std::filesystem::create_directories(out_dir);
        write_text_file(std::filesystem::path(out_dir) / "instance.ara",
                        write_rel_document(shrunk));
        write_text_file(std::filesystem::path(out_dir) / "expr.ara", print_ara(small) + "\n");
        err << "fuzz: kernel and oracle disagree on case " << i + 1 << " (seed " << seed
            << ")\n"
            << "fuzz: replay with --workspace " << out_dir << " eval-ara \"$(cat " << out_dir
            << "/expr.ara)\"\n";
        return 1;
    }
    out << "fuzz: " << count << " case(s), kernel and oracle agree\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"semiring-annotated relational algebra and matrix query engine"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--workspace", common.workspace,
                   "directory with instance.ara / schema.ara / instance.ml / schema.ml")
        ->capture_default_str();
    app.add_option("--semiring", common.semiring,
                   "annotation semiring: nat, int, bool, tropical, prov or mat2")
        ->capture_default_str();
    app.add_option("--tokens", common.tokens,
                   "comma-separated provenance token alphabet (prov semiring)");

    std::string expr, expr2;
    int k_bound = 2, samples = 20, certify = 0, count = 100, depth = 5;
    std::uint64_t seed = 1;
    bool naive = false, with_composition = false;
    std::string out_dir = "fuzz-failure";

    auto* evalAra = app.add_subcommand("eval-ara", "evaluate a relational expression");
    evalAra->add_option("expr", expr)->required();

    auto* evalMl = app.add_subcommand("eval-ml", "evaluate a matrix expression");
    evalMl->add_option("expr", expr)->required();

    auto* normalizeCmd =
        app.add_subcommand("normalize", "rewrite into a union of selections of joins");
    normalizeCmd->add_option("expr", expr)->required();
    normalizeCmd->add_option("--k", k_bound, "arity bound of the target fragment")
        ->capture_default_str();

    auto* toAra = app.add_subcommand("to-ara", "translate a matrix expression");
    toAra->add_option("expr", expr)->required();
    toAra->add_option("--certify", certify, "differentially check n random instances");
    toAra->add_option("--seed", seed);
    toAra->add_flag("--naive-size", naive, "skip the linear-size adaptation");

    auto* toMl = app.add_subcommand("to-ml", "translate a bounded relational expression");
    toMl->add_option("expr", expr)->required();
    toMl->add_option("--certify", certify, "differentially check n random instances");
    toMl->add_option("--seed", seed);
    toMl->add_flag("--naive-size", naive, "skip the linear-size adaptation");

    auto* compileCmd = app.add_subcommand(
        "compile", "reduce an arity-bound-3 expression and translate it to matrices");
    compileCmd->add_option("expr", expr)->required();
    compileCmd->add_option("--certify", certify, "differentially check n random instances");
    compileCmd->add_option("--seed", seed);

    auto* checkEquiv =
        app.add_subcommand("check-equiv", "compare two expressions on random instances");
    checkEquiv->add_option("expr1", expr)->required();
    checkEquiv->add_option("expr2", expr2)->required();
    checkEquiv->add_option("--samples", samples)->capture_default_str();
    checkEquiv->add_option("--seed", seed);

    auto* fuzz = app.add_subcommand("fuzz", "differential campaign against the dense oracle");
    fuzz->add_option("--seed", seed)->capture_default_str();
    fuzz->add_option("--count", count)->capture_default_str();
    fuzz->add_option("--k", k_bound)->capture_default_str();
    fuzz->add_option("--depth", depth)->capture_default_str();
    fuzz->add_flag("--with-composition", with_composition);
    fuzz->add_option("--out", out_dir, "failure artifact directory")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (evalAra->parsed()) return cmd_eval_ara(common, expr, out);
        if (evalMl->parsed()) return cmd_eval_ml(common, expr, out);
        if (normalizeCmd->parsed()) return cmd_normalize(common, expr, k_bound, out, err);
        if (toAra->parsed()) return cmd_to_ara(common, expr, certify, seed, naive, out, err);
        if (toMl->parsed()) return cmd_to_ml(common, expr, certify, seed, naive, false, out, err);
        if (compileCmd->parsed())
            return cmd_to_ml(common, expr, certify, seed, false, true, out, err);
        if (checkEquiv->parsed())
            return cmd_check_equiv(common, expr, expr2, samples, seed, out, err);
        if (fuzz->parsed())
            return cmd_fuzz(common, seed, count, k_bound, depth, with_composition, out_dir, out,
                            err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand selected\n";
    return 2;
}

} // namespace araml
