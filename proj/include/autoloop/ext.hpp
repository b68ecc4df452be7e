#ifndef AUTOLOOP_EXT_HPP
#define AUTOLOOP_EXT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "autoloop/poly.hpp"

namespace autoloop {

/// A prime field F_p together with the extension K = F_p[x]/(modulus).
/// For odd p the canonical quadratic modulus is x^2 - d with d the least
/// positive non-residue; for p = 2 it is x^2 + x + 1. d = -1 when the
/// modulus is not of the x^2 - d shape.
struct FieldContext {
    std::int64_t p = 0;
    int n = 0;
    Poly modulus;
    std::int64_t d = -1;

    PrimeField base() const { return PrimeField{p}; }
    std::int64_t order() const {
        std::int64_t r = 1;
        for (int i = 0; i < n; ++i) r *= p;
        return r;
    }
};

/// Element of K in the power basis 1, x, ..., x^{n-1}; coefficients reduced.
struct ExtElem {
    std::vector<std::int64_t> c;

    bool operator==(const ExtElem& o) const { return c == o.c; }
    bool operator!=(const ExtElem& o) const { return c != o.c; }
    bool operator<(const ExtElem& o) const { return c < o.c; }
    bool is_zero() const {
        for (auto x : c)
            if (x != 0) return false;
        return true;
    }
};

inline ExtElem ext_zero(const FieldContext& ctx) {
    return ExtElem{std::vector<std::int64_t>(static_cast<size_t>(ctx.n), 0)};
}

inline ExtElem ext_from_base(const FieldContext& ctx, std::int64_t v) {
    ExtElem e = ext_zero(ctx);
    e.c[0] = ctx.base().reduce(v);
    return e;
}

inline ExtElem ext_one(const FieldContext& ctx) { return ext_from_base(ctx, 1); }

/// The adjoined root x (generator of the power basis).
inline ExtElem ext_gen(const FieldContext& ctx) {
    ExtElem e = ext_zero(ctx);
    if (ctx.n < 2) throw loop_error(errc::invalid_param, "extension of degree < 2 has no generator x");
    e.c[1] = 1;
    return e;
}

inline ExtElem ext_from_coeffs(const FieldContext& ctx, std::vector<std::int64_t> coeffs) {
    if (coeffs.size() > static_cast<size_t>(ctx.n))
        throw loop_error(errc::invalid_param, "coefficient vector longer than the extension degree");
    const PrimeField F = ctx.base();
    coeffs.resize(static_cast<size_t>(ctx.n), 0);
    for (auto& x : coeffs) x = F.reduce(x);
    return ExtElem{std::move(coeffs)};
}

inline Poly ext_to_poly(const ExtElem& a) { return Poly{a.c}; }

inline ExtElem ext_from_poly(const FieldContext& ctx, const Poly& q) {
    Poly r = poly_rem(ctx.base(), q, ctx.modulus);
    std::vector<std::int64_t> c(static_cast<size_t>(ctx.n), 0);
    for (int i = 0; i <= r.deg(); ++i) c[static_cast<size_t>(i)] = r.coeff(i);
    return ExtElem{std::move(c)};
}

inline ExtElem ext_add(const FieldContext& ctx, const ExtElem& a, const ExtElem& b) {
    const PrimeField F = ctx.base();
    ExtElem r = a;
    for (int i = 0; i < ctx.n; ++i) r.c[static_cast<size_t>(i)] = F.add(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(i)]);
    return r;
}

inline ExtElem ext_neg(const FieldContext& ctx, const ExtElem& a) {
    const PrimeField F = ctx.base();
    ExtElem r = a;
    for (auto& x : r.c) x = F.neg(x);
    return r;
}

inline ExtElem ext_sub(const FieldContext& ctx, const ExtElem& a, const ExtElem& b) {
    return ext_add(ctx, a, ext_neg(ctx, b));
}

inline ExtElem ext_mul(const FieldContext& ctx, const ExtElem& a, const ExtElem& b) {
    return ext_from_poly(ctx, poly_mul(ctx.base(), ext_to_poly(a), ext_to_poly(b)));
}

inline ExtElem ext_scale(const FieldContext& ctx, const ExtElem& a, std::int64_t s) {
    const PrimeField F = ctx.base();
    ExtElem r = a;
    s = F.reduce(s);
    for (auto& x : r.c) x = F.mul(x, s);
    return r;
}

inline ExtElem ext_inv(const FieldContext& ctx, const ExtElem& a) {
    if (a.is_zero()) throw loop_error(errc::division_by_zero, "inverse of 0 in K");
    auto [g, s, t] = poly_ext_gcd(ctx.base(), ext_to_poly(a), ctx.modulus);
    (void)t;
    if (g.deg() != 0) throw loop_error(errc::not_irreducible, "modulus not irreducible (gcd found)");
    return ext_from_poly(ctx, s);
}

inline ExtElem ext_div(const FieldContext& ctx, const ExtElem& a, const ExtElem& b) {
    return ext_mul(ctx, a, ext_inv(ctx, b));
}

inline ExtElem ext_pow(const FieldContext& ctx, const ExtElem& a, std::int64_t e) {
    return ext_from_poly(ctx, poly_powmod(ctx.base(), ext_to_poly(a), e, ctx.modulus));
}

/// x |-> x^p. For odd p, n = 2 with modulus x^2 - d this is conjugation
/// a + b sqrt(d) |-> a - b sqrt(d).
inline ExtElem frobenius(const FieldContext& ctx, const ExtElem& a) {
    return ext_pow(ctx, a, ctx.p);
}

inline ExtElem frobenius_pow(const FieldContext& ctx, ExtElem a, int i) {
    for (int k = 0; k < i; ++k) a = frobenius(ctx, a);
    return a;
}

/// True scalar test: lies in F_p * 1.
inline bool ext_in_prime_field(const ExtElem& a) {
    for (size_t i = 1; i < a.c.size(); ++i)
        if (a.c[i] != 0) return false;
    return true;
}

/// All p^n elements in lexicographic coefficient order (c0 fastest).
inline std::vector<ExtElem> ext_all_elements(const FieldContext& ctx) {
    std::vector<ExtElem> out;
    out.reserve(static_cast<size_t>(ctx.order()));
    ExtElem cur = ext_zero(ctx);
    while (true) {
        out.push_back(cur);
        int i;
        for (i = ctx.n - 1; i >= 0; --i) {
            if (++cur.c[static_cast<size_t>(i)] < ctx.p) break;
            cur.c[static_cast<size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

inline bool poly_is_irreducible(const PrimeField& F, const Poly& m) {
    int n = m.deg();
    if (n < 1) return false;
    if (n == 1) return true;
    // no irreducible factor of degree <= n/2 iff gcd(m, x^{p^i} - x) = 1
    Poly x = Poly::monomial(F, 1, 1);
    Poly xq = x;
    for (int i = 1; i <= n / 2; ++i) {
        xq = poly_powmod(F, xq, F.p, m);
        Poly g = poly_gcd(F, poly_sub(F, xq, poly_rem(F, x, m)), m);
        if (g.deg() != 0) return false;
    }
    return true;
}

/// Canonical quadratic context for F_{p^2}: x^2 - d (least non-residue d)
/// for odd p, x^2 + x + 1 for p = 2.
inline FieldContext make_quadratic_context(std::int64_t p) {
    if (!is_prime(p)) throw loop_error(errc::non_prime, std::to_string(p) + " is not prime");
    FieldContext ctx;
    ctx.p = p;
    ctx.n = 2;
    if (p == 2) {
        ctx.modulus = Poly{{1, 1, 1}};
        ctx.d = -1;
    } else {
        ctx.d = least_nonresidue(p);
        ctx.modulus = Poly{{PrimeField{p}.neg(ctx.d), 0, 1}};
    }
    return ctx;
}

/// General extension with a user-supplied monic modulus.
inline FieldContext make_context(std::int64_t p, const Poly& modulus) {
    if (!is_prime(p)) throw loop_error(errc::non_prime, std::to_string(p) + " is not prime");
    if (modulus.deg() < 1 || modulus.lead() != 1)
        throw loop_error(errc::invalid_param, "modulus must be monic of degree >= 1");
    PrimeField F{p};
    for (int i = 0; i <= modulus.deg(); ++i)
        if (modulus.coeff(i) < 0 || modulus.coeff(i) >= p)
            throw loop_error(errc::invalid_param, "modulus coefficients must be reduced mod p");
    if (!poly_is_irreducible(F, modulus))
        throw loop_error(errc::not_irreducible, "modulus is reducible over F_p");
    FieldContext ctx;
    ctx.p = p;
    ctx.n = modulus.deg();
    ctx.modulus = modulus;
    if (ctx.n == 2 && modulus.coeff(1) == 0 && p != 2)
        ctx.d = F.neg(modulus.coeff(0));
    return ctx;
}

/// Prints in the power basis with generator symbol "w": "1+2w".
inline std::string ext_to_string(const FieldContext& ctx, const ExtElem& a, const std::string& var = "w") {
    (void)ctx;
    return poly_to_string(ext_to_poly(a), var);
}

} // namespace autoloop

#endif
