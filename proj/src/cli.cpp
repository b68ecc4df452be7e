#include "autoloop/cli.hpp"

#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "autoloop/cayley_io.hpp"
#include "autoloop/extension.hpp"
#include "autoloop/infinite.hpp"
#include "autoloop/iso.hpp"
#include "autoloop/qrv.hpp"

namespace autoloop {

namespace {

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << content;
    else
        write_file_atomic(out_path, content);
}

Mat2 parse_mat2(std::int64_t p, const std::string& text) {
    // row-major "a,b;c,d"
    std::vector<std::int64_t> vals;
    std::string cur;
    try {
        for (char ch : text) {
            if (ch == ',' || ch == ';') {
                vals.push_back(std::stoll(cur));
                cur.clear();
            } else if (!isspace(static_cast<unsigned char>(ch))) {
                cur += ch;
            }
        }
        if (!cur.empty()) vals.push_back(std::stoll(cur));
    } catch (const std::exception&) {
        throw loop_error(errc::usage, "matrix entries must be integers: \"a,b;c,d\"");
    }
    if (vals.size() != 4) throw loop_error(errc::usage, "matrix text must have 4 entries: \"a,b;c,d\"");
    const PrimeField F{p};
    return mat2_make(F, vals[0], vals[1], vals[2], vals[3]);
}

FieldContext context_for(std::int64_t p, std::int64_t d_override) {
    if (d_override < 0) return make_quadratic_context(p);
    if (!is_prime(p)) throw loop_error(errc::non_prime, std::to_string(p) + " is not prime");
    const PrimeField F{p};
    if (p == 2) throw loop_error(errc::usage, "--d applies to odd p only");
    if (F.pow(d_override, (p - 1) / 2) != p - 1)
        throw loop_error(errc::invalid_param, std::to_string(d_override) + " is a square mod " + std::to_string(p));
    return make_context(p, Poly{{F.neg(d_override), 0, 1}});
}

SubspaceW subspace_for(const FieldContext& ctx, std::int64_t a) {
    for (auto& W : enumerate_admissible_W(ctx))
        if (W.param && *W.param == a) return W;
    throw loop_error(errc::usage, "--a must be in 0.." + std::to_string(ctx.p - 1));
}

CayleyFile construct_extension(std::int64_t p, std::int64_t a, std::int64_t d_override, size_t cap) {
    FieldContext ctx = context_for(p, d_override);
    SubspaceW W = subspace_for(ctx, a);
    FieldBackend B = make_field_backend(W);
    CayleyFile f;
    f.p = p;
    f.construction = "extension";
    f.parameters["a"] = a;
    f.parameters["d"] = ctx.d;
    f.parameters["modulus"] = ctx.modulus.coeffs();
    f.loop = realize_cayley(B, cap);
    return f;
}

CayleyFile construct_matrix(std::int64_t p, const Mat2& A, size_t cap) {
    PlaneResult plane = matrix_plane(p, A);
    CayleyFile f;
    f.p = p;
    f.construction = "matrix";
    f.parameters["matrix"] = {{A.e[0], A.e[1]}, {A.e[2], A.e[3]}};
    if (plane.bridge_param) f.parameters["bridge_a"] = *plane.bridge_param;
    f.loop = realize_cayley(*plane.loop, cap);
    return f;
}

CayleyFile construct_generic(const std::string& spec_path, size_t cap) {
    nlohmann::json spec;
    try {
        spec = nlohmann::json::parse(read_file(spec_path));
    } catch (const std::exception& e) {
        throw loop_error(errc::validation_failed, std::string("spec parse error: ") + e.what());
    }
    CayleyFile f;
    f.construction = "generic";
    f.parameters["spec"] = spec;
    try {
        const std::string variant = spec.at("variant").get<std::string>();
        f.p = spec.at("p").get<std::int64_t>();
        if (variant == "field-mult") {
            FieldContext ctx = spec.contains("modulus")
                                   ? make_context(f.p, Poly{spec["modulus"].get<std::vector<std::int64_t>>()})
                                   : make_quadratic_context(f.p);
            std::vector<ExtElem> basis;
            for (const auto& row : spec.at("basis"))
                basis.push_back(ext_from_coeffs(ctx, row.get<std::vector<std::int64_t>>()));
            f.loop = realize_cayley(FieldBackend::make(ctx, basis), cap);
        } else if (variant == "matrix") {
            int dim = spec.at("dim").get<int>();
            if (dim < 1) throw loop_error(errc::invalid_param, "dim must be >= 1");
            const PrimeField F{f.p};
            std::vector<MatN> basis;
            for (const auto& row : spec.at("basis")) {
                auto entries = row.get<std::vector<std::int64_t>>();
                if (static_cast<int>(entries.size()) != dim * dim)
                    throw loop_error(errc::invalid_param, "matrix basis entry count must be dim*dim");
                MatN m = matn_zero(dim);
                for (size_t i = 0; i < entries.size(); ++i) m.e[i] = F.reduce(entries[i]);
                basis.push_back(std::move(m));
            }
            f.loop = realize_cayley(MatrixBackend::make(f.p, dim, basis), cap);
        } else {
            throw loop_error(errc::usage, "spec variant must be field-mult or matrix");
        }
    } catch (const loop_error&) {
        throw;
    } catch (const std::exception& e) {
        throw loop_error(errc::validation_failed, std::string("malformed backend spec: ") + e.what());
    }
    return f;
}

int cmd_verify(const std::string& path, std::ostream& out) {
    CayleyFile f = cayley_from_string(read_file(path));
    const FiniteLoop& Q = f.loop;
    out << "order: " << Q.order() << "\n";
    out << "identity: " << Q.identity() << " " << Q.label(Q.identity()) << "\n";
    out << "latin: ok\n";
    AutomorphicReport rep = is_automorphic(Q);
    if (rep.automorphic) {
        out << "automorphic: yes\n";
    } else {
        out << "automorphic: no (" << rep.kind << " at x=" << rep.x;
        if (rep.y >= 0) out << " y=" << rep.y;
        out << " breaks product " << rep.u << "*" << rep.v << ")\n";
    }
    LoopInvariants inv = loop_invariants(Q);
    out << "commutative: " << (inv.is_commutative ? "yes" : "no") << "\n";
    out << "group: " << (inv.is_group ? "yes" : "no") << "\n";
    out << "power_associative: " << (inv.power_associative ? "yes" : "no") << "\n";
    if (inv.power_associative) out << "exponent: " << inv.exponent << "\n";
    out << "center_size: " << inv.center.size() << "\n";
    out << "asc_size: " << associator_subloop(Q).members.size() << "\n";
    return 0;
}

// Distinguishing invariant between two loops already known non-isomorphic,
// or "none found".
std::string distinguishing_invariant(const FiniteLoop& A, const FiniteLoop& B) {
    if (A.order() != B.order()) return "order";
    LoopInvariants ia = loop_invariants(A), ib = loop_invariants(B);
    if (ia.is_group != ib.is_group) return "is_group";
    if (ia.is_commutative != ib.is_commutative) return "is_commutative";
    if (ia.center.size() != ib.center.size()) return "center_size";
    if (ia.power_associative && ib.power_associative) {
        if (ia.exponent != ib.exponent) return "exponent";
        auto oa = ia.element_orders, ob = ib.element_orders;
        std::sort(oa.begin(), oa.end());
        std::sort(ob.begin(), ob.end());
        if (oa != ob) return "element_order_multiset";
    }
    if (associator_subloop(A).members.size() != associator_subloop(B).members.size()) return "asc_size";
    long long aa = automorphism_count(A), ab = automorphism_count(B);
    if (aa != ab) return "aut_order (" + std::to_string(aa) + " vs " + std::to_string(ab) + ")";
    return "none found (exhaustive search)";
}

int cmd_iso(const std::string& path1, const std::string& path2, std::ostream& out) {
    CayleyFile f1 = cayley_from_string(read_file(path1));
    CayleyFile f2 = cayley_from_string(read_file(path2));
    IsoResult res = find_isomorphisms(f1.loop, f2.loop, IsoMode::first);
    if (res.found()) {
        out << "isomorphic\n";
        out << "bijection:";
        for (int v : res.maps.front()) out << " " << v;
        out << "\n";
        return 0;
    }
    out << "non-isomorphic\n";
    out << "distinguishing_invariant: " << distinguishing_invariant(f1.loop, f2.loop) << "\n";
    return 0;
}

int cmd_aut(const std::string& path, bool force, std::ostream& out) {
    CayleyFile f = cayley_from_string(read_file(path));
    const bool oracle_ok = force || f.loop.order() <= 27;
    long long oracle = -1;
    if (oracle_ok) {
        oracle = automorphism_count(f.loop);
        out << "aut_order_oracle: " << oracle << "\n";
    } else {
        out << "aut_order_oracle: skipped (order " << f.loop.order() << " > 27; use --force)\n";
    }
    if (f.construction == "extension") {
        FieldContext ctx = make_context(f.p, Poly{f.parameters.at("modulus").get<std::vector<std::int64_t>>()});
        SubspaceW W = subspace_for(ctx, f.parameters.at("a").get<std::int64_t>());
        long long theory = theory_aut_order(ctx, W);
        out << "aut_order_theory: " << theory << "\n";
        if (oracle >= 0) {
            bool agree = oracle == theory;
            out << "agreement: " << (agree ? "yes" : "no") << "\n";
            if (!agree) throw loop_error(errc::validation_failed, "oracle and theory |Aut| disagree");
        }
    }
    return 0;
}

int cmd_infinite(std::int64_t p, int depth, size_t budget, bool json, std::ostream& out) {
    std::vector<IdentityCheck> checks = verify_infinite_identities(p);
    LaurentLoop L(p);
    const PrimeField F{p};
    std::vector<RatLoopElement> gens = {{1, RatFun()}, {0, RatFun::constant(F, 1)}};
    BfsReport bfs = bfs_closure(p, gens, depth, budget);

    const RatFun t = RatFun::t(F);
    const RatFun t2 = rat_mul(F, t, t);
    std::vector<std::pair<std::string, RatLoopElement>> targets;
    if (p == 2) {
        targets.push_back({"(0,t^2)", {0, t2}});
        targets.push_back({"(0,1/(1+t^2))", {0, rat_inv(F, RatFun::from_poly(Poly{{1, 0, 1}}))}});
    } else {
        targets.push_back({"(0,t)", {0, t}});
        targets.push_back({"(0,t^2)", {0, t2}});
    }

    bool all_pass = true;
    for (const auto& c : checks)
        if (!c.pass) all_pass = false;
    bool targets_ok = true;
    for (const auto& [name, el] : targets)
        if (!bfs.depth_of.count(el)) targets_ok = false;

    if (json) {
        nlohmann::ordered_json j;
        j["format"] = "infinite-report-v1";
        j["p"] = p;
        j["identities"] = nlohmann::ordered_json::array();
        for (const auto& c : checks)
            j["identities"].push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}});
        j["bfs"] = {{"depth", depth},
                    {"depth_completed", bfs.depth_completed},
                    {"elements", bfs.element_count},
                    {"budget_exceeded", bfs.budget_exceeded},
                    {"violations", bfs.violations.size()}};
        j["bfs"]["targets"] = nlohmann::ordered_json::object();
        for (const auto& [name, el] : targets) {
            auto it = bfs.depth_of.find(el);
            j["bfs"]["targets"][name] = it == bfs.depth_of.end() ? -1 : it->second;
        }
        out << j.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            out << (c.pass ? "ok   " : "FAIL ") << c.name;
            if (!c.pass) out << "  lhs=" << c.lhs << " rhs=" << c.rhs;
            out << "\n";
        }
        out << "bfs: depth " << depth << " (completed " << bfs.depth_completed << "), " << bfs.element_count
            << " elements, " << bfs.violations.size() << " membership violations"
            << (bfs.budget_exceeded ? ", budget exceeded" : "") << "\n";
        for (const auto& [name, el] : targets) {
            auto it = bfs.depth_of.find(el);
            if (it != bfs.depth_of.end())
                out << "reached " << name << " at depth " << it->second << "\n";
            else
                out << "MISSING " << name << "\n";
        }
    }
    return (all_pass && targets_ok && bfs.violations.empty()) ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"autoloop: automorphic loops from module endomorphisms"};
    app.require_subcommand(1);

    std::int64_t p = 0, a = -1, d_override = -1;
    std::string matrix_text, spec_path, out_path, file1, file2;
    bool oracle = false, force = false, json = false;
    int depth = 8;
    std::int64_t budget = 200000;

    auto* c_construct = app.add_subcommand("construct", "build a loop and emit a cayley-v1 file");
    c_construct->add_option("--p", p, "prime modulus");
    c_construct->add_option("--a", a, "extension parameter a (W_a)");
    c_construct->add_option("--d", d_override, "override the non-residue d (odd p)");
    c_construct->add_option("--matrix", matrix_text, "2x2 matrix, row-major \"a,b;c,d\"");
    c_construct->add_option("--spec", spec_path, "generic backend spec (JSON)");
    c_construct->add_option("--out", out_path, "output path (default stdout)");
    c_construct->add_flag("--force", force, "lift the realization size cap");

    auto* c_verify = app.add_subcommand("verify", "validate a table and report its invariants");
    c_verify->add_option("file", file1, "cayley-v1 file")->required();

    auto* c_classify = app.add_subcommand("classify", "classify order-p^3 extension loops");
    c_classify->add_option("--p", p, "prime modulus")->required();
    c_classify->add_flag("--oracle", oracle, "confirm by brute force");
    c_classify->add_option("--out", out_path, "CSV output path (default stdout)");
    c_classify->add_flag("--force", force, "lift oracle caps");

    auto* c_iso = app.add_subcommand("iso", "decide isomorphism of two tables");
    c_iso->add_option("file1", file1, "first table")->required();
    c_iso->add_option("file2", file2, "second table")->required();

    auto* c_aut = app.add_subcommand("aut", "automorphism group order (oracle and theory)");
    c_aut->add_option("file", file1, "cayley-v1 file")->required();
    c_aut->add_flag("--force", force, "run the oracle regardless of order");

    auto* c_infinite = app.add_subcommand("infinite", "verify the rational-function loop identities");
    c_infinite->add_option("--p", p, "prime modulus")->required();
    c_infinite->add_option("--depth", depth, "BFS derivation depth");
    c_infinite->add_option("--budget", budget, "BFS element budget");
    c_infinite->add_flag("--json", json, "emit a JSON report");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error code=Usage detail=" << nlohmann::json(std::string(e.what())).dump() << "\n";
        return 2;
    }

    try {
        const size_t cap = force ? (1u << 20) : 2048;
        if (c_construct->parsed()) {
            CayleyFile f;
            const int modes = (a >= 0 ? 1 : 0) + (!matrix_text.empty() ? 1 : 0) + (!spec_path.empty() ? 1 : 0);
            if (modes != 1)
                throw loop_error(errc::usage, "construct needs exactly one of --a, --matrix, --spec");
            if (a >= 0) {
                if (p <= 0) throw loop_error(errc::usage, "--p is required");
                f = construct_extension(p, a, d_override, cap);
            } else if (!matrix_text.empty()) {
                if (p <= 0) throw loop_error(errc::usage, "--p is required");
                f = construct_matrix(p, parse_mat2(p, matrix_text), cap);
            } else {
                f = construct_generic(spec_path, cap);
            }
            emit(cayley_to_string(f), out_path, out);
            return 0;
        }
        if (c_verify->parsed()) return cmd_verify(file1, out);
        if (c_classify->parsed()) {
            ClassifyOptions opts;
            opts.oracle = oracle;
            if (force) {
                opts.iso_oracle_cap = p;
                opts.aut_oracle_cap = p;
            }
            ClassificationTable t = classify_p3(p, opts);
            emit(classification_csv(t), out_path, out);
            return 0;
        }
        if (c_iso->parsed()) return cmd_iso(file1, file2, out);
        if (c_aut->parsed()) return cmd_aut(file1, force, out);
        if (c_infinite->parsed()) return cmd_infinite(p, depth, static_cast<size_t>(budget), json, out);
        throw loop_error(errc::usage, "no subcommand");
    } catch (const loop_error& e) {
        err << "error code=" << e.code_name() << " detail=" << nlohmann::json(e.detail()).dump() << "\n";
        return e.code() == errc::usage ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error code=Internal detail=" << nlohmann::json(std::string(e.what())).dump() << "\n";
        return 1;
    }
}

} // namespace autoloop
