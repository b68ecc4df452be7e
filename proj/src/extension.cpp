#include "autoloop/extension.hpp"

#include <algorithm>
#include <set>

#include "autoloop/iso.hpp"

namespace autoloop {

std::vector<ExtElem> subspace_elements(const SubspaceW& W) {
    const FieldContext& K = W.ctx;
    std::vector<ExtElem> out;
    std::vector<std::int64_t> coeff(W.basis.size(), 0);
    while (true) {
        ExtElem cur = ext_zero(K);
        for (size_t i = 0; i < W.basis.size(); ++i)
            if (coeff[i] != 0) cur = ext_add(K, cur, ext_scale(K, W.basis[i], coeff[i]));
        out.push_back(cur);
        int i;
        for (i = static_cast<int>(W.basis.size()) - 1; i >= 0; --i) {
            if (++coeff[static_cast<size_t>(i)] < K.p) break;
            coeff[static_cast<size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

std::vector<SubspaceW> enumerate_admissible_W(const FieldContext& ctx) {
    if (ctx.n != 2) throw loop_error(errc::invalid_param, "admissible-W enumeration requires a quadratic context");
    std::vector<SubspaceW> out;
    ExtElem gen = ext_gen(ctx);
    if (ctx.p == 2) {
        out.push_back({ctx, {gen}, 0});                                // F_2 w
        out.push_back({ctx, {ext_add(ctx, ext_one(ctx), gen)}, 1});    // F_2 (1+w)
        return out;
    }
    // W_0 = k sqrt(d), W_a = k(1 + a sqrt(d))
    out.push_back({ctx, {gen}, 0});
    for (std::int64_t a = 1; a < ctx.p; ++a)
        out.push_back({ctx, {ext_add(ctx, ext_one(ctx), ext_scale(ctx, gen, a))}, a});
    return out;
}

bool tame_check(const FieldContext& ctx, const SubspaceW& W) {
    // close {1} u W under +, *, inverse; tame iff the closure is all of K
    std::set<ExtElem> S;
    S.insert(ext_one(ctx));
    for (const auto& w : subspace_elements(W)) S.insert(w);
    bool grew = true;
    const size_t full = static_cast<size_t>(ctx.order());
    while (grew && S.size() < full) {
        grew = false;
        std::vector<ExtElem> cur(S.begin(), S.end());
        for (const auto& a : cur) {
            if (!a.is_zero() && S.insert(ext_inv(ctx, a)).second) grew = true;
            for (const auto& b : cur) {
                if (S.insert(ext_add(ctx, a, b)).second) grew = true;
                if (S.insert(ext_mul(ctx, a, b)).second) grew = true;
            }
        }
    }
    return S.size() == full;
}

namespace {

std::set<ExtElem> subspace_set(const SubspaceW& W) {
    auto v = subspace_elements(W);
    return std::set<ExtElem>(v.begin(), v.end());
}

} // namespace

std::optional<int> theory_iso(const FieldContext& ctx, const SubspaceW& W0, const SubspaceW& W1) {
    if (!tame_check(ctx, W0) || !tame_check(ctx, W1))
        throw loop_error(errc::not_tame, "theory_iso requires tame triples");
    std::set<ExtElem> target = subspace_set(W1);
    for (int i = 0; i < ctx.n; ++i) {
        std::set<ExtElem> image;
        for (const auto& w : subspace_elements(W0)) image.insert(frobenius_pow(ctx, w, i));
        if (image == target) return i;
    }
    return std::nullopt;
}

MatN mult_matrix(const FieldContext& ctx, const ExtElem& a) {
    MatN M = matn_zero(ctx.n);
    for (int r = 0; r < ctx.n; ++r) {
        ExtElem xr = ext_from_poly(ctx, Poly::monomial(ctx.base(), 1, r));
        ExtElem img = ext_mul(ctx, xr, a);
        for (int c = 0; c < ctx.n; ++c) M.at(r, c) = img.c[static_cast<size_t>(c)];
    }
    return M;
}

MatN frobenius_matrix(const FieldContext& ctx, int i) {
    MatN M = matn_zero(ctx.n);
    for (int r = 0; r < ctx.n; ++r) {
        ExtElem xr = ext_from_poly(ctx, Poly::monomial(ctx.base(), 1, r));
        ExtElem img = frobenius_pow(ctx, xr, i);
        for (int c = 0; c < ctx.n; ++c) M.at(r, c) = img.c[static_cast<size_t>(c)];
    }
    return M;
}

std::vector<int> stabilizing_frobenius_powers(const FieldContext& ctx, const SubspaceW& W) {
    std::vector<int> powers;
    std::set<ExtElem> ws = subspace_set(W);
    for (int i = 0; i < ctx.n; ++i) {
        std::set<ExtElem> image;
        for (const auto& w : ws) image.insert(frobenius_pow(ctx, w, i));
        if (image == ws) powers.push_back(i);
    }
    return powers;
}

ExtElem conj_action(const FieldContext& ctx, const MatN& A, const ExtElem& a) {
    const PrimeField F = ctx.base();
    MatN conj = matn_mul(F, matn_mul(F, matn_inv(F, A), mult_matrix(ctx, a)), A);
    // a multiplication map M_b has row 0 = coeffs of b
    ExtElem b;
    b.c.assign(conj.e.begin(), conj.e.begin() + ctx.n);
    if (conj != mult_matrix(ctx, b))
        throw loop_error(errc::not_in_s, "conjugate of M_a is not a multiplication map");
    return b;
}

std::vector<MatN> build_S_W(const FieldContext& ctx, const SubspaceW& W0, const SubspaceW& W1) {
    if (!tame_check(ctx, W0) || !tame_check(ctx, W1))
        throw loop_error(errc::not_tame, "S(W0,W1) requires tame triples");
    const PrimeField F = ctx.base();
    std::vector<MatN> out;
    std::set<ExtElem> target = subspace_set(W1);
    std::set<ExtElem> source = subspace_set(W0);
    for (int i = 0; i < ctx.n; ++i) {
        std::set<ExtElem> image;
        for (const auto& w : source) image.insert(frobenius_pow(ctx, w, i));
        if (image != target) continue;
        MatN Phi = frobenius_matrix(ctx, i);
        for (const auto& c : ext_all_elements(ctx)) {
            if (c.is_zero()) continue;
            MatN A = matn_mul(F, Phi, mult_matrix(ctx, c)); // u |-> (u phi) c
            // verify A^{-1} M_{W0} A = M_{W1} on the basis
            for (const auto& w : W0.basis) {
                ExtElem img = conj_action(ctx, A, w);
                if (!target.count(img))
                    throw loop_error(errc::not_in_s, "conjugation does not land in W1");
            }
            out.push_back(std::move(A));
        }
    }
    // no duplicates by construction; assert anyway at desk scale
    std::vector<MatN> sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw loop_error(errc::not_in_s, "duplicate maps in S(W0,W1)");
    return out;
}

std::vector<MatN> build_S_W(const FieldContext& ctx, const SubspaceW& W) {
    return build_S_W(ctx, W, W);
}

FieldBackend make_field_backend(const SubspaceW& W) {
    return FieldBackend::make(W.ctx, W.basis);
}

namespace {

ExtElem apply_matrix(const FieldContext& ctx, const ExtElem& u, const MatN& A) {
    return ExtElem{matn_apply_row(ctx.base(), u.c, A)};
}

} // namespace

namespace {

Perm psi_map_on(const FieldBackend& B0, const FieldBackend& B1, const FiniteLoop& Q0, const FiniteLoop& Q1,
                const IsoDescriptor& desc) {
    const FieldContext& ctx = B0.ctx();
    const int n = Q0.order();
    std::map<ExtElem, ExtElem> conj_cache;
    for (const auto& a : B0.w_elements()) conj_cache[a] = conj_action(ctx, desc.A, a);
    Perm f(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto e = realized_element(B0, i);
        const ExtElem& abar = conj_cache.at(e.a);
        ExtElem u1 = ext_add(ctx, ext_mul(ctx, desc.c, abar), apply_matrix(ctx, e.u, desc.A));
        f[static_cast<size_t>(i)] = realized_index(B1, {abar, u1});
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (f[static_cast<size_t>(Q0.mul(x, y))] != Q1.mul(f[static_cast<size_t>(x)], f[static_cast<size_t>(y)]))
                throw loop_error(errc::not_iso, "psi map failed the homomorphism check");
    return f;
}

} // namespace

Perm psi_map(const FieldBackend& B0, const FieldBackend& B1, const IsoDescriptor& desc) {
    FiniteLoop Q0 = realize_cayley(B0);
    FiniteLoop Q1 = realize_cayley(B1);
    return psi_map_on(B0, B1, Q0, Q1, desc);
}

IsoDescriptor extract_descriptor(const FieldBackend& B0, const FieldBackend& B1, const Perm& f) {
    const FieldContext& ctx = B0.ctx();
    if (B0.w_basis().empty())
        throw loop_error(errc::invalid_param, "descriptor extraction needs W != 0");
    IsoDescriptor desc;
    desc.A = matn_zero(ctx.n);
    // A from the restriction to 0 x K: (0, x^r) f = (0, x^r A)
    for (int r = 0; r < ctx.n; ++r) {
        ExtElem xr = ext_from_poly(ctx, Poly::monomial(ctx.base(), 1, r));
        int img = f[static_cast<size_t>(realized_index(B0, {ext_zero(ctx), xr}))];
        auto e = realized_element(B1, img);
        if (!e.a.is_zero())
            throw loop_error(errc::not_iso, "bijection does not preserve 0 x K");
        for (int c = 0; c < ctx.n; ++c) desc.A.at(r, c) = e.u.c[static_cast<size_t>(c)];
    }
    if (!matn_invertible(ctx.base(), desc.A))
        throw loop_error(errc::not_iso, "restriction to 0 x K is not bijective");
    // c from (w, 0) f = (w Abar, c * w Abar), w the first nonzero basis element
    const ExtElem w = B0.w_basis().at(0);
    {
        int img = f[static_cast<size_t>(realized_index(B0, {w, ext_zero(ctx)}))];
        auto e = realized_element(B1, img);
        ExtElem wbar = conj_action(ctx, desc.A, w); // throws NotInS if A fails
        if (!(e.a == wbar))
            throw loop_error(errc::not_iso, "W-component image disagrees with the conjugation action");
        desc.c = ext_div(ctx, e.u, wbar);
    }
    // full fidelity: f must equal Psi(A, c)
    Perm check = psi_map(B0, B1, desc);
    if (check != f) throw loop_error(errc::not_iso, "bijection is not of the (A,c) form");
    return desc;
}

long long theory_aut_order(const FieldContext& ctx, const SubspaceW& W) {
    const long long q = ctx.order();
    const long long iw = static_cast<long long>(stabilizing_frobenius_powers(ctx, W).size());
    return iw * (q - 1) * q;
}

TheoryAut aut_group_by_theory(const FieldContext& ctx, const SubspaceW& W) {
    TheoryAut out;
    FieldBackend B = make_field_backend(W);
    FiniteLoop Q = realize_cayley(B);
    std::vector<MatN> SW = build_S_W(ctx, W);
    for (const auto& A : SW)
        for (const auto& c : ext_all_elements(ctx)) {
            IsoDescriptor d{A, c};
            out.maps.push_back(psi_map_on(B, B, Q, Q, d)); // verified inside
            out.descriptors.push_back(std::move(d));
        }
    out.order = static_cast<long long>(out.maps.size());
    if (out.order != theory_aut_order(ctx, W))
        throw loop_error(errc::validation_failed, "emitted automorphism count disagrees with |I(W)|(p^n-1)p^n");

    // semidirect product law (A,c)(B,d) = (AB, cB + d): compose the first
    // descriptor with every other one
    const PrimeField F = ctx.base();
    for (size_t j = 0; j < out.descriptors.size(); ++j) {
        const auto& d1 = out.descriptors.front();
        const auto& d2 = out.descriptors[j];
        Perm composed = perm_compose(out.maps.front(), out.maps[j]);
        IsoDescriptor prod{matn_mul(F, d1.A, d2.A),
                           ext_add(ctx, apply_matrix(ctx, d1.c, d2.A), d2.c)};
        if (composed != psi_map_on(B, B, Q, Q, prod))
            throw loop_error(errc::validation_failed, "semidirect product law violated");
    }
    return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> isotropic_witness(std::int64_t p, const Mat2& A) {
    const PrimeField F{p};
    const Mat2 I = mat2_identity(F);
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b) {
            if (a == 0 && b == 0) continue;
            if (mat2_det(F, mat2_add(F, mat2_scale(F, I, a), mat2_scale(F, A, b))) == 0)
                return std::make_pair(a, b);
        }
    return std::nullopt;
}

PlaneResult matrix_plane(std::int64_t p, const Mat2& A) {
    if (!is_prime(p)) throw loop_error(errc::non_prime, std::to_string(p) + " is not prime");
    const PrimeField F{p};
    if (A.e[1] == 0 && A.e[2] == 0 && A.e[0] == A.e[3])
        throw loop_error(errc::scalar_matrix, "A lies in kI");
    if (auto w = isotropic_witness(p, A))
        throw loop_error(errc::not_anisotropic,
                         "det(aI+bA) = 0 at (a,b) = (" + std::to_string(w->first) + "," + std::to_string(w->second) + ")");

    PlaneResult res;
    res.anisotropic = true;

    // Q_k(A): W = kA acting on V = k^2
    res.loop = MatrixBackend::make(p, 2, {matn_from_mat2(A)});

    // theta in F_{p^2} with theta^2 = e + f theta, e = -det(A), f = tr(A)
    const std::int64_t e = F.neg(mat2_det(F, A));
    const std::int64_t fc = mat2_trace(F, A);
    FieldContext ctx = make_quadratic_context(p);
    bool found = false;
    for (const auto& th : ext_all_elements(ctx)) {
        if (ext_in_prime_field(th)) continue;
        ExtElem rhs = ext_add(ctx, ext_from_base(ctx, e), ext_scale(ctx, th, fc));
        if (ext_mul(ctx, th, th) == rhs) {
            res.theta = th;
            found = true;
            break;
        }
    }
    if (!found)
        throw loop_error(errc::not_anisotropic, "x^2 - tr(A) x + det(A) splits over F_p");

    res.target = SubspaceW{ctx, {res.theta}, std::nullopt};
    // canonical parameter: k theta with theta = alpha + beta sqrt(d) equals
    // W_0 when alpha = 0, else W_{alpha^{-1} beta}
    if (p > 2) {
        std::int64_t alpha = res.theta.c[0], beta = res.theta.c[1];
        res.bridge_param = (alpha == 0) ? 0 : F.mul(beta, F.inv(alpha));
    } else {
        for (const auto& Wcand : enumerate_admissible_W(ctx))
            if (subspace_set(Wcand) == subspace_set(res.target)) res.bridge_param = Wcand.param;
    }

    // explicit bridge (a, (u0,u1)) |-> (a theta, u0 + u1 theta), verified
    FieldBackend Bt = make_field_backend(res.target);
    FiniteLoop Qm = realize_cayley(*res.loop);
    FiniteLoop Qt = realize_cayley(Bt);
    const int n = Qm.order();
    res.bridge.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto el = realized_element(*res.loop, i);
        // W-coordinate of el.a w.r.t. basis {A}: matrix backends enumerate
        // the span with the first basis coefficient as the (only) digit
        std::int64_t coeff = -1;
        for (std::int64_t c = 0; c < p; ++c)
            if (matn_scale(F, matn_from_mat2(A), c) == el.a) {
                coeff = c;
                break;
            }
        ExtElem atheta = ext_scale(ctx, res.theta, coeff);
        ExtElem u = ext_add(ctx, ext_from_base(ctx, el.u[0]), ext_scale(ctx, res.theta, el.u[1]));
        res.bridge[static_cast<size_t>(i)] = realized_index(Bt, {atheta, u});
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (res.bridge[static_cast<size_t>(Qm.mul(x, y))] !=
                Qt.mul(res.bridge[static_cast<size_t>(x)], res.bridge[static_cast<size_t>(y)]))
                throw loop_error(errc::not_iso, "bridge map failed the homomorphism check");
    return res;
}

ClassificationTable classify_p3(std::int64_t p, const ClassifyOptions& opts) {
    if (!is_prime(p)) throw loop_error(errc::non_prime, std::to_string(p) + " is not prime");
    FieldContext ctx = make_quadratic_context(p);
    std::vector<SubspaceW> all = enumerate_admissible_W(ctx);

    std::vector<SubspaceW> reps;
    if (p == 2) {
        reps.push_back(all[0]);
    } else {
        for (const auto& W : all)
            if (*W.param <= (p - 1) / 2) reps.push_back(W);
    }

    ClassificationTable table;
    table.p = p;

    std::vector<FiniteLoop> rep_loops;
    for (const auto& W : reps) {
        FieldBackend B = make_field_backend(W);
        FiniteLoop Q = realize_cayley(B);
        LoopInvariants inv = loop_invariants(Q);
        Subloop asc = associator_subloop(Q);
        ClassRow row;
        row.rep_a = W.param.value_or(0);
        row.order = Q.order();
        row.exponent = inv.exponent;
        row.center_size = static_cast<int>(inv.center.size());
        row.asc_size = static_cast<int>(asc.members.size());
        row.aut_order = theory_aut_order(ctx, W);
        table.rows.push_back(row);
        rep_loops.push_back(std::move(Q));
    }

    const bool iso_oracle = opts.oracle && p <= opts.iso_oracle_cap;
    const bool aut_oracle = opts.oracle && p <= opts.aut_oracle_cap;
    if (iso_oracle) {
        // reps pairwise non-isomorphic
        for (size_t i = 0; i < rep_loops.size(); ++i)
            for (size_t j = i + 1; j < rep_loops.size(); ++j)
                if (find_isomorphisms(rep_loops[i], rep_loops[j], IsoMode::first).found())
                    throw loop_error(errc::validation_failed,
                                     "oracle found an isomorphism between distinct class representatives");
        // every non-representative W_a is isomorphic to W_{p-a}
        for (const auto& W : all) {
            if (p == 2) {
                if (W.param == all[0].param) continue;
                FiniteLoop Q = realize_cayley(make_field_backend(W));
                if (!find_isomorphisms(Q, rep_loops[0], IsoMode::first).found())
                    throw loop_error(errc::validation_failed, "p=2: the two admissible loops are not isomorphic");
                continue;
            }
            if (*W.param <= (p - 1) / 2) continue;
            std::int64_t partner = p - *W.param;
            FiniteLoop Q = realize_cayley(make_field_backend(W));
            if (!find_isomorphisms(Q, rep_loops[static_cast<size_t>(partner)], IsoMode::first).found())
                throw loop_error(errc::validation_failed,
                                 "oracle failed to confirm W_a ~ W_{p-a} for a = " + std::to_string(*W.param));
        }
        for (auto& row : table.rows) row.oracle_confirmed = true;
    }
    if (aut_oracle) {
        for (size_t i = 0; i < reps.size(); ++i) {
            long long brute = automorphism_count(rep_loops[i]);
            if (brute != table.rows[i].aut_order)
                throw loop_error(errc::validation_failed,
                                 "oracle |Aut| = " + std::to_string(brute) + " disagrees with theory " +
                                     std::to_string(table.rows[i].aut_order));
        }
    }
    return table;
}

} // namespace autoloop
