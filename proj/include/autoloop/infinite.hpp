#ifndef AUTOLOOP_INFINITE_HPP
#define AUTOLOOP_INFINITE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autoloop/ratfun.hpp"

namespace autoloop {

/// Element of the structured loop on W x F_p(t) with W = F_p t: the first
/// coordinate is i*t stored as the scalar i, the second an exact reduced
/// rational function.
struct RatLoopElement {
    std::int64_t i = 0;
    RatFun u;

    bool operator==(const RatLoopElement& o) const { return i == o.i && u == o.u; }
    bool operator!=(const RatLoopElement& o) const { return !(*this == o); }
    bool operator<(const RatLoopElement& o) const {
        if (i != o.i) return i < o.i;
        if (u.num().coeffs() != o.u.num().coeffs()) return u.num().coeffs() < o.u.num().coeffs();
        return u.den().coeffs() < o.u.den().coeffs();
    }
};

/// The loop Q_{k<K}(F_p t) with exact F_p(t) arithmetic; every element the
/// Section-5 lemmas touch lies in F_p(t), so no series truncation occurs.
class LaurentLoop {
public:
    explicit LaurentLoop(std::int64_t p);

    std::int64_t p() const { return p_; }
    RatLoopElement identity() const { return {}; }

    RatLoopElement mul(const RatLoopElement& x, const RatLoopElement& y) const;
    /// x \ y
    RatLoopElement left_div(const RatLoopElement& x, const RatLoopElement& y) const;
    /// y / x
    RatLoopElement right_div(const RatLoopElement& x, const RatLoopElement& y) const;
    RatLoopElement inverse(const RatLoopElement& x) const;
    /// Left-bracketed m-th power, m >= 0.
    RatLoopElement power(const RatLoopElement& x, int m) const;

    std::string to_string(const RatLoopElement& x) const;

private:
    RatFun one_plus(std::int64_t j) const;  // 1 + j t
    RatFun one_minus(std::int64_t j) const; // 1 - j t
    std::int64_t p_;
    PrimeField F_;
};

struct MembershipReport {
    bool in_u = false;
    /// odd p: denominator factorization into (1 + c t)^k, as (c, k) pairs
    std::vector<std::pair<std::int64_t, int>> factors;
    std::string note;
};

/// Membership in the localization U: for odd p, the denominator must split
/// into factors 1 + c t with c in F_p^*; for p = 2, U is F_2[t^2] localized
/// at 1 + t^2, i.e. an even-coefficient numerator over an even power of 1+t.
MembershipReport membership_U(std::int64_t p, const RatFun& f);

/// Predicted-form membership for BFS output: odd p requires u in U
/// (L = W x U); p = 2 requires the (i t, f (1+t)^i) shape with f in U.
bool membership_L(std::int64_t p, const RatLoopElement& e);

struct BfsReport {
    std::map<RatLoopElement, int> depth_of; // element -> minimal derivation size
    std::vector<RatLoopElement> violations; // elements failing membership_L
    bool budget_exceeded = false;
    size_t element_count = 0;
    int depth_completed = 0;
};

/// Closes gens under mul and both divisions, breadth-first on derivation
/// size (number of binary operations). The identity is seeded at depth 0.
BfsReport bfs_closure(std::int64_t p, const std::vector<RatLoopElement>& gens, int depth, size_t budget = 200000);

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::string lhs, rhs;
};

/// Every identity used in the Section-5 proofs, with exact arithmetic:
/// the auxiliary power identity for m <= 10, the power rule, the
/// nonassociativity witness, the localization descent step, and for p = 2
/// the four closure identities plus the generator identity.
std::vector<IdentityCheck> verify_infinite_identities(std::int64_t p);

} // namespace autoloop

#endif
