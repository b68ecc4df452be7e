#ifndef AUTOLOOP_EXTENSION_HPP
#define AUTOLOOP_EXTENSION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autoloop/ext.hpp"
#include "autoloop/mat.hpp"
#include "autoloop/qrv.hpp"

namespace autoloop {

/// A k-subspace W of K with k1 n W = 0; param is the a of the quadratic
/// parametrization W_a (W_0 = k*sqrt(d), W_a = k(1 + a*sqrt(d))).
struct SubspaceW {
    FieldContext ctx;
    std::vector<ExtElem> basis;
    std::optional<std::int64_t> param;
};

/// All elements of the subspace, lexicographic by basis coordinates.
std::vector<ExtElem> subspace_elements(const SubspaceW& W);

/// The W_a family for odd p (ascending a), or the two admissible lines of
/// F_4 for p = 2.
std::vector<SubspaceW> enumerate_admissible_W(const FieldContext& ctx);

/// k prime (by construction), W generates K as a field, K perfect (finite).
bool tame_check(const FieldContext& ctx, const SubspaceW& W);

/// Field automorphism (power of Frobenius) with W0*phi = W1, if any.
std::optional<int> theory_iso(const FieldContext& ctx, const SubspaceW& W0, const SubspaceW& W1);

/// Multiplication matrix of a in the power basis (rows act on row vectors).
MatN mult_matrix(const FieldContext& ctx, const ExtElem& a);

/// Matrix of the i-th Frobenius power in the power basis.
MatN frobenius_matrix(const FieldContext& ctx, int i);

/// Isomorphism descriptor per the S(W0,W1) x K correspondence: an additive
/// bijection A of K together with c in K.
struct IsoDescriptor {
    MatN A;
    ExtElem c;
};

/// Frobenius powers preserving W setwise (the group I(W)).
std::vector<int> stabilizing_frobenius_powers(const FieldContext& ctx, const SubspaceW& W);

/// All A in S(W0,W1) = { phi o M_c : phi in Aut(K), W0 phi = W1, c in K* },
/// each verified to satisfy A^{-1} M_{W0} A = M_{W1}. For W0 = W1 this is
/// S(W) with |S(W)| = |I(W)| (p^n - 1).
std::vector<MatN> build_S_W(const FieldContext& ctx, const SubspaceW& W0, const SubspaceW& W1);
std::vector<MatN> build_S_W(const FieldContext& ctx, const SubspaceW& W);

/// Conjugation action: the element a-bar-A with A^{-1} M_a A = M_{aA}.
/// Throws NotInS when the conjugate is not a multiplication map or lands
/// outside W1.
ExtElem conj_action(const FieldContext& ctx, const MatN& A, const ExtElem& a);

FieldBackend make_field_backend(const SubspaceW& W);

/// Psi: the loop map (a,u) |-> (a Abar, c * a Abar + u A) as an index
/// bijection between the realized tables of B0 and B1. Verified to be an
/// isomorphism (NotInS / NotIso on failure).
Perm psi_map(const FieldBackend& B0, const FieldBackend& B1, const IsoDescriptor& desc);

/// Phi: recovers (A, c) from a loop isomorphism given as an index map.
IsoDescriptor extract_descriptor(const FieldBackend& B0, const FieldBackend& B1, const Perm& f);

struct TheoryAut {
    std::vector<IsoDescriptor> descriptors;
    std::vector<Perm> maps; // parallel to descriptors
    long long order = 0;    // |I(W)| (p^n - 1) p^n
};

/// All automorphisms of Q_{k<K}(W) by theory: Psi over S(W) x K, each
/// verified as a table automorphism, with the semidirect product law
/// (A,c)(B,d) = (AB, cB+d) checked on generator pairs.
TheoryAut aut_group_by_theory(const FieldContext& ctx, const SubspaceW& W);

/// Theory |Aut| without materializing maps.
long long theory_aut_order(const FieldContext& ctx, const SubspaceW& W);

struct PlaneResult {
    bool anisotropic = false;
    std::optional<std::pair<std::int64_t, std::int64_t>> witness; // isotropic (a,b)
    std::optional<MatrixBackend> loop;                            // Q_k(A) backend
    ExtElem theta;                                                // theta with theta^2 = e + f theta
    std::optional<std::int64_t> bridge_param;                     // W_a containing k*theta
    Perm bridge;                                                  // iso Q_k(A) -> Q_{k<K}(k theta)
    SubspaceW target;                                             // k theta
};

/// Non-throwing anisotropy probe: the first isotropic pair, if any.
std::optional<std::pair<std::int64_t, std::int64_t>> isotropic_witness(std::int64_t p, const Mat2& A);

/// Checks kI + kA is an anisotropic plane, builds Q_k(A) on k x k^2, and
/// constructs the explicit isomorphism onto Q_{k<K}(k theta) with
/// theta^2 = -det(A) + tr(A) theta. Throws ScalarMatrix / NotAnisotropic.
PlaneResult matrix_plane(std::int64_t p, const Mat2& A);

struct ClassRow {
    std::int64_t rep_a = 0;
    int order = 0;
    int exponent = 0;
    int center_size = 0;
    int asc_size = 0;
    long long aut_order = 0;
    bool oracle_confirmed = false;
};

struct ClassificationTable {
    std::int64_t p = 0;
    std::vector<ClassRow> rows;
    size_t class_count() const { return rows.size(); }
};

struct ClassifyOptions {
    bool oracle = false;
    std::int64_t iso_oracle_cap = 5; // brute-force isomorphism checks for p <= cap
    std::int64_t aut_oracle_cap = 3; // brute-force |Aut| enumeration for p <= cap
};

/// Theorem-level classification of the loops Q_{F_p < F_{p^2}}(W) of order
/// p^3: representatives a in {0..(p-1)/2} for odd p, one class for p = 2.
/// With oracle on, every iso/non-iso claim and (for small p) |Aut| is
/// confirmed by brute force; a disagreement throws ValidationFailed.
ClassificationTable classify_p3(std::int64_t p, const ClassifyOptions& opts = {});

} // namespace autoloop

#endif
