#ifndef AUTOLOOP_QRV_HPP
#define AUTOLOOP_QRV_HPP

#include <concepts>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "autoloop/ext.hpp"
#include "autoloop/loop.hpp"
#include "autoloop/mat.hpp"

namespace autoloop {

/// Backends expose a commuting set W of module endomorphisms with all 1+a
/// invertible, and the module V they act on. The loop formulas below are
/// generic over this surface.
template <class B>
concept EndoSpace = requires(const B& b, const typename B::Endo& a, const typename B::Vec& v, std::int64_t s) {
    { b.endo_add(a, a) } -> std::same_as<typename B::Endo>;
    { b.endo_neg(a) } -> std::same_as<typename B::Endo>;
    { b.endo_compose(a, a) } -> std::same_as<typename B::Endo>;
    { b.endo_inv(a) } -> std::same_as<typename B::Endo>;
    { b.endo_zero() } -> std::same_as<typename B::Endo>;
    { b.endo_one() } -> std::same_as<typename B::Endo>;
    { b.endo_is_zero(a) } -> std::same_as<bool>;
    { b.apply(v, a) } -> std::same_as<typename B::Vec>;
    { b.vec_add(v, v) } -> std::same_as<typename B::Vec>;
    { b.vec_neg(v) } -> std::same_as<typename B::Vec>;
    { b.vec_scale(v, s) } -> std::same_as<typename B::Vec>;
    { b.vec_zero() } -> std::same_as<typename B::Vec>;
    { b.commutes_with_w(a) } -> std::same_as<bool>;
};

/// Construction over a field extension k < K: W is a k-subspace of K with
/// k1 and W intersecting trivially, embedded by a |-> M_a (multiplication).
class FieldBackend {
public:
    using Endo = ExtElem;
    using Vec = ExtElem;
    struct Elem {
        ExtElem a, u;
        bool operator==(const Elem& o) const { return a == o.a && u == o.u; }
    };

    /// Validates k1 n W = 0 (equivalently 1+a invertible for all a in W)
    /// and basis independence; caches I_a^{-1}, J_a^{-1} for every a in W.
    static FieldBackend make(FieldContext ctx, std::vector<ExtElem> basis);

    const FieldContext& ctx() const { return ctx_; }
    const std::vector<ExtElem>& w_basis() const { return basis_; }
    const std::vector<ExtElem>& w_elements() const { return welems_; }
    const std::vector<ExtElem>& v_elements() const { return velems_; }

    Endo endo_add(const Endo& a, const Endo& b) const { return ext_add(ctx_, a, b); }
    Endo endo_neg(const Endo& a) const { return ext_neg(ctx_, a); }
    Endo endo_compose(const Endo& a, const Endo& b) const { return ext_mul(ctx_, a, b); }
    Endo endo_inv(const Endo& a) const { return ext_inv(ctx_, a); }
    Endo endo_zero() const { return ext_zero(ctx_); }
    Endo endo_one() const { return ext_one(ctx_); }
    bool endo_is_zero(const Endo& a) const { return a.is_zero(); }
    Vec apply(const Vec& v, const Endo& a) const { return ext_mul(ctx_, v, a); }
    Vec vec_add(const Vec& x, const Vec& y) const { return ext_add(ctx_, x, y); }
    Vec vec_neg(const Vec& x) const { return ext_neg(ctx_, x); }
    Vec vec_scale(const Vec& x, std::int64_t s) const { return ext_scale(ctx_, x, s); }
    Vec vec_zero() const { return ext_zero(ctx_); }
    bool commutes_with_w(const Endo&) const { return true; } // K is commutative

    /// Cached inverse of 1+a / 1-a for a in W.
    Endo inv_I(const Endo& a) const { return inv_i_.at(a); }
    Endo inv_J(const Endo& a) const { return inv_j_.at(a); }

    std::string endo_label(const Endo& a) const { return ext_to_string(ctx_, a); }
    std::string vec_label(const Vec& v) const { return ext_to_string(ctx_, v); }

private:
    FieldContext ctx_;
    std::vector<ExtElem> basis_, welems_, velems_;
    std::map<ExtElem, ExtElem> inv_i_, inv_j_;
};

/// Construction over V = F_p^dim with W a commuting set of dim x dim
/// matrices, all I + M invertible. Vectors are rows, acted on the right.
class MatrixBackend {
public:
    using Endo = MatN;
    using Vec = std::vector<std::int64_t>;
    struct Elem {
        MatN a;
        Vec u;
        bool operator==(const Elem& o) const { return a == o.a && u == o.u; }
    };

    /// Validates (A1) on basis pairs and (A2) on every element of the span.
    static MatrixBackend make(std::int64_t p, int dim, std::vector<MatN> basis);

    std::int64_t p() const { return p_; }
    int dim() const { return dim_; }
    PrimeField field() const { return PrimeField{p_}; }
    const std::vector<MatN>& w_basis() const { return basis_; }
    const std::vector<MatN>& w_elements() const { return welems_; }
    const std::vector<Vec>& v_elements() const { return velems_; }

    Endo endo_add(const Endo& a, const Endo& b) const { return matn_add(field(), a, b); }
    Endo endo_neg(const Endo& a) const { return matn_neg(field(), a); }
    Endo endo_compose(const Endo& a, const Endo& b) const { return matn_mul(field(), a, b); }
    Endo endo_inv(const Endo& a) const { return matn_inv(field(), a); }
    Endo endo_zero() const { return matn_zero(dim_); }
    Endo endo_one() const { return matn_identity(dim_); }
    bool endo_is_zero(const Endo& a) const { return a.is_zero(); }
    Vec apply(const Vec& v, const Endo& a) const { return matn_apply_row(field(), v, a); }
    Vec vec_add(const Vec& x, const Vec& y) const {
        Vec r(x.size());
        for (size_t i = 0; i < x.size(); ++i) r[i] = field().add(x[i], y[i]);
        return r;
    }
    Vec vec_neg(const Vec& x) const {
        Vec r(x.size());
        for (size_t i = 0; i < x.size(); ++i) r[i] = field().neg(x[i]);
        return r;
    }
    Vec vec_scale(const Vec& x, std::int64_t s) const {
        Vec r(x.size());
        s = field().reduce(s);
        for (size_t i = 0; i < x.size(); ++i) r[i] = field().mul(x[i], s);
        return r;
    }
    Vec vec_zero() const { return Vec(static_cast<size_t>(dim_), 0); }
    bool commutes_with_w(const Endo& d) const {
        for (const auto& b : basis_)
            if (matn_mul(field(), d, b) != matn_mul(field(), b, d)) return false;
        return true;
    }

    Endo inv_I(const Endo& a) const { return inv_i_.at(a); }
    Endo inv_J(const Endo& a) const { return inv_j_.at(a); }

    std::string endo_label(const Endo& a) const;
    std::string vec_label(const Vec& v) const;

private:
    std::int64_t p_ = 0;
    int dim_ = 0;
    std::vector<MatN> basis_, welems_;
    std::vector<Vec> velems_;
    std::map<MatN, MatN> inv_i_, inv_j_;
};

/// (a,u)(b,v) = (a+b, u I_b + v J_a)  with I_x = 1+x, J_x = 1-x.
template <EndoSpace B>
typename B::Elem qrv_mul(const B& b, const typename B::Elem& x, const typename B::Elem& y) {
    auto Ib = b.endo_add(b.endo_one(), y.a);
    auto Ja = b.endo_add(b.endo_one(), b.endo_neg(x.a));
    return {b.endo_add(x.a, y.a), b.vec_add(b.apply(x.u, Ib), b.apply(y.u, Ja))};
}

/// (a,u) \ (b,v) = (b-a, (v - u I_{b-a}) J_a^{-1}).
template <EndoSpace B>
typename B::Elem qrv_left_divide(const B& b, const typename B::Elem& x, const typename B::Elem& y) {
    auto diff = b.endo_add(y.a, b.endo_neg(x.a));
    auto Idiff = b.endo_add(b.endo_one(), diff);
    auto t = b.vec_add(y.u, b.vec_neg(b.apply(x.u, Idiff)));
    return {diff, b.apply(t, b.inv_J(x.a))};
}

/// (b,v) / (a,u) = (b-a, (v - u J_{b-a}) I_a^{-1}).
template <EndoSpace B>
typename B::Elem qrv_right_divide(const B& b, const typename B::Elem& x, const typename B::Elem& y) {
    auto diff = b.endo_add(y.a, b.endo_neg(x.a));
    auto Jdiff = b.endo_add(b.endo_one(), b.endo_neg(diff));
    auto t = b.vec_add(y.u, b.vec_neg(b.apply(x.u, Jdiff)));
    return {diff, b.apply(t, b.inv_I(x.a))};
}

template <EndoSpace B>
typename B::Elem qrv_identity(const B& b) {
    return {b.endo_zero(), b.vec_zero()};
}

template <EndoSpace B>
typename B::Elem qrv_inverse(const B& b, const typename B::Elem& x) {
    return {b.endo_neg(x.a), b.vec_neg(x.u)};
}

/// Parametrized automorphism f_{(d,x)}: (a,u) |-> (a, xa + ud),
/// d in C_E(W) invertible, x in V.
template <class B>
struct ParamAut {
    typename B::Endo d;
    typename B::Vec x;
};

template <EndoSpace B>
ParamAut<B> make_param_aut(const B& b, typename B::Endo d, typename B::Vec x) {
    if (!b.commutes_with_w(d)) throw loop_error(errc::invalid_param, "d does not commute with W");
    try {
        (void)b.endo_inv(d);
    } catch (const loop_error&) {
        throw loop_error(errc::invalid_param, "d is not invertible");
    }
    return {std::move(d), std::move(x)};
}

template <EndoSpace B>
typename B::Elem param_aut_apply(const B& b, const ParamAut<B>& f, const typename B::Elem& e) {
    return {e.a, b.vec_add(b.apply(f.x, e.a), b.apply(e.u, f.d))};
}

/// T_{(a,u)} = f_{(d,x)} with d = I_a J_a^{-1}, x = -2u J_a^{-1}.
template <EndoSpace B>
ParamAut<B> inner_formula_T(const B& b, const typename B::Elem& at) {
    auto Ia = b.endo_add(b.endo_one(), at.a);
    auto Jainv = b.inv_J(at.a);
    return {b.endo_compose(Ia, Jainv), b.apply(b.vec_scale(at.u, -2), Jainv)};
}

/// L_{(a,u),(b,v)} = f_{(d,x)} with d = J_a J_b J_{b+a}^{-1}, x = -v a J_{b+a}^{-1}.
template <EndoSpace B>
ParamAut<B> inner_formula_L(const B& b, const typename B::Elem& x1, const typename B::Elem& x2) {
    auto Ja = b.endo_add(b.endo_one(), b.endo_neg(x1.a));
    auto Jb = b.endo_add(b.endo_one(), b.endo_neg(x2.a));
    auto Jsuminv = b.inv_J(b.endo_add(x1.a, x2.a));
    auto d = b.endo_compose(b.endo_compose(Ja, Jb), Jsuminv);
    auto x = b.apply(b.apply(b.vec_neg(x2.u), x1.a), Jsuminv);
    return {d, x};
}

/// [(a,u),(b,v),(c,w)] = (0, (ubc - wab) I_{a+b+c}^{-1}).
template <EndoSpace B>
typename B::Elem qrv_associator(const B& b, const typename B::Elem& x, const typename B::Elem& y,
                                const typename B::Elem& z) {
    auto ubc = b.apply(b.apply(x.u, y.a), z.a);
    auto wab = b.apply(b.apply(z.u, x.a), y.a);
    auto sum = b.endo_add(b.endo_add(x.a, y.a), z.a);
    return {b.endo_zero(), b.apply(b.vec_add(ubc, b.vec_neg(wab)), b.inv_I(sum))};
}

/// Q is a group iff W^2 = 0; checked on basis pairs (bilinear).
template <EndoSpace B>
bool group_criterion(const B& b) {
    for (const auto& x : b.w_basis())
        for (const auto& y : b.w_basis())
            if (!b.endo_is_zero(b.endo_compose(x, y))) return false;
    return true;
}

/// Cayley table over all (a,u), a lexicographic over W coordinates, u over
/// V coordinates; byte-stable ordering.
FiniteLoop realize_cayley(const FieldBackend& b, size_t cap = 2048);
FiniteLoop realize_cayley(const MatrixBackend& b, size_t cap = 2048);

/// Index of (a,u) in realize_cayley order.
int realized_index(const FieldBackend& b, const FieldBackend::Elem& e);
int realized_index(const MatrixBackend& b, const MatrixBackend::Elem& e);

FieldBackend::Elem realized_element(const FieldBackend& b, int index);
MatrixBackend::Elem realized_element(const MatrixBackend& b, int index);

} // namespace autoloop

#endif
