#ifndef AUTOLOOP_LOOP_HPP
#define AUTOLOOP_LOOP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autoloop/errors.hpp"

namespace autoloop {

using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    return p;
}

/// Composition acting left-to-right: (a*b)(x) = b(a(x)), matching the
/// right-action convention x(fg) = (xf)g.
inline Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<size_t>(a[i])];
    return r;
}

inline Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[static_cast<size_t>(a[i])] = static_cast<int>(i);
    return r;
}

/// Validated Cayley-table loop. Rows and columns are permutations, there is
/// a two-sided identity, and both division tables are precomputed.
class FiniteLoop {
public:
    FiniteLoop() = default;

    /// Validates the Latin property and locates the identity.
    /// Throws NotLatin / NoIdentity.
    static FiniteLoop from_table(std::vector<std::string> labels, std::vector<std::vector<int>> table);

    int order() const { return n_; }
    int identity() const { return id_; }
    const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }

    int mul(int x, int y) const { return table_[static_cast<size_t>(x) * static_cast<size_t>(n_) + static_cast<size_t>(y)]; }
    /// z with x*z = y.
    int left_div(int x, int y) const { return ldiv_[static_cast<size_t>(x) * static_cast<size_t>(n_) + static_cast<size_t>(y)]; }
    /// z with z*x = y.
    int right_div(int x, int y) const { return rdiv_[static_cast<size_t>(x) * static_cast<size_t>(n_) + static_cast<size_t>(y)]; }

    std::vector<std::vector<int>> table_rows() const;

private:
    int n_ = 0;
    int id_ = -1;
    std::vector<std::string> labels_;
    std::vector<int> table_, ldiv_, rdiv_;
};

/// y |-> x*y.
Perm translation_L(const FiniteLoop& Q, int x);
/// y |-> y*x.
Perm translation_R(const FiniteLoop& Q, int x);

/// T_x = R_x L_x^{-1}: y |-> x \ (y*x).
Perm inner_T(const FiniteLoop& Q, int x);
/// L_{x,y} = L_x L_y L_{yx}^{-1}: z |-> (yx) \ (y*(x*z)).
Perm inner_L(const FiniteLoop& Q, int x, int y);
/// R_{x,y} = R_x R_y R_{xy}^{-1}: z |-> ((z*x)*y) / (xy).
Perm inner_R(const FiniteLoop& Q, int x, int y);

struct InnerGen {
    char kind; // 'T', 'L' or 'R'
    int x = -1, y = -1;
    Perm perm;
};

/// All T_x, all L_{x,y}, all R_{x,y}; each fixes the identity.
std::vector<InnerGen> inner_generators(const FiniteLoop& Q);

bool is_homomorphism(const FiniteLoop& Q, const Perm& f);

struct AutomorphicReport {
    bool automorphic = true;
    // witness when not: the inner mapping and the product pair it breaks
    char kind = 0;
    int x = -1, y = -1;
    int u = -1, v = -1;
};

/// Checks every T_x and R_{x,y} against every product pair.
/// Honors AUTOLOOP_THREADS; the reported witness is the first in scan order
/// regardless of thread count.
AutomorphicReport is_automorphic(const FiniteLoop& Q);

/// The unique a with (xy)z = a*(x(yz)).
int associator(const FiniteLoop& Q, int x, int y, int z);

struct Subloop {
    std::vector<int> members; // sorted
    bool is_normal = false;
};

/// Least subloop containing gens: closed under product and both divisions.
Subloop subloop_generated(const FiniteLoop& Q, const std::vector<int>& gens);

/// Smallest normal subloop containing all associators: alternates subloop
/// closure with saturation under all inner generators.
Subloop associator_subloop(const FiniteLoop& Q);

struct LoopInvariants {
    std::vector<int> center; // sorted indices
    bool power_associative = false;
    int exponent = 0; // valid only when power_associative
    bool is_group = false;
    bool is_commutative = false;
    std::vector<int> element_orders; // per element, valid only when power_associative
};

LoopInvariants loop_invariants(const FiniteLoop& Q);

/// Order of x: least m > 0 with x^m = e, left-bracketed powers.
/// Returns nullopt if no power hits the identity within the loop order.
std::optional<int> element_order(const FiniteLoop& Q, int x);

struct PermClosure {
    std::vector<Perm> elements;
    bool truncated = false;
};

/// Closure of a permutation set under composition, capped by budget.
PermClosure close_permutations(const std::vector<Perm>& gens, size_t budget = 20000);

} // namespace autoloop

#endif
