#include "autoloop/qrv.hpp"

#include <algorithm>

namespace autoloop {

namespace {

// Odometer over basis coefficients, first coordinate most significant.
template <class T, class Combine>
std::vector<T> span_elements(std::int64_t p, const std::vector<T>& basis, const T& zero, const Combine& axpy) {
    std::vector<T> out;
    std::vector<std::int64_t> coeff(basis.size(), 0);
    while (true) {
        T cur = zero;
        for (size_t i = 0; i < basis.size(); ++i)
            if (coeff[i] != 0) cur = axpy(cur, basis[i], coeff[i]);
        out.push_back(cur);
        int i;
        for (i = static_cast<int>(basis.size()) - 1; i >= 0; --i) {
            if (++coeff[static_cast<size_t>(i)] < p) break;
            coeff[static_cast<size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

} // namespace

FieldBackend FieldBackend::make(FieldContext ctx, std::vector<ExtElem> basis) {
    FieldBackend b;
    b.ctx_ = std::move(ctx);
    b.basis_ = std::move(basis);
    const FieldContext& K = b.ctx_;

    b.welems_ = span_elements(K.p, b.basis_, ext_zero(K), [&](const ExtElem& acc, const ExtElem& v, std::int64_t c) {
        return ext_add(K, acc, ext_scale(K, v, c));
    });

    // independence: |span| = p^dim
    {
        std::vector<ExtElem> sorted = b.welems_;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (sorted.size() != b.welems_.size())
            throw loop_error(errc::invalid_param, "W basis is linearly dependent");
    }

    // k1 n W = 0, equivalent to (A2) here; report the spec'd error
    for (const auto& a : b.welems_) {
        if (!a.is_zero() && ext_in_prime_field(a))
            throw loop_error(errc::trivial_intersection,
                             "W contains the scalar " + ext_to_string(K, a));
    }
    for (const auto& a : b.welems_) {
        ExtElem ia = ext_add(K, ext_one(K), a);
        ExtElem ja = ext_sub(K, ext_one(K), a);
        if (ia.is_zero() || ja.is_zero())
            throw loop_error(errc::not_invertible, "1+a not invertible for a = " + ext_to_string(K, a));
        b.inv_i_[a] = ext_inv(K, ia);
        b.inv_j_[a] = ext_inv(K, ja);
    }

    b.velems_ = ext_all_elements(K);
    return b;
}

MatrixBackend MatrixBackend::make(std::int64_t p, int dim, std::vector<MatN> basis) {
    if (!is_prime(p)) throw loop_error(errc::non_prime, std::to_string(p) + " is not prime");
    MatrixBackend b;
    b.p_ = p;
    b.dim_ = dim;
    b.basis_ = std::move(basis);
    const PrimeField F{p};
    for (const auto& m : b.basis_)
        if (m.n != dim) throw loop_error(errc::invalid_param, "basis matrix dimension mismatch");

    // (A1) on basis pairs suffices by bilinearity
    for (size_t i = 0; i < b.basis_.size(); ++i)
        for (size_t j = i + 1; j < b.basis_.size(); ++j)
            if (matn_mul(F, b.basis_[i], b.basis_[j]) != matn_mul(F, b.basis_[j], b.basis_[i]))
                throw loop_error(errc::not_commuting,
                                 "basis elements " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");

    b.welems_ = span_elements(p, b.basis_, matn_zero(dim), [&](const MatN& acc, const MatN& v, std::int64_t c) {
        return matn_add(F, acc, matn_scale(F, v, c));
    });
    {
        std::vector<MatN> sorted = b.welems_;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (sorted.size() != b.welems_.size())
            throw loop_error(errc::invalid_param, "W basis is linearly dependent");
    }

    // (A2) over every element of W; invertibility is not linear
    for (const auto& a : b.welems_) {
        MatN ia = matn_add(F, matn_identity(dim), a);
        MatN ja = matn_sub(F, matn_identity(dim), a);
        try {
            b.inv_i_[a] = matn_inv(F, ia);
            b.inv_j_[a] = matn_inv(F, ja);
        } catch (const loop_error&) {
            throw loop_error(errc::not_invertible, "1+a singular for a = " + matn_to_string(a));
        }
    }

    // V = F_p^dim, lexicographic
    {
        std::vector<std::int64_t> v(static_cast<size_t>(dim), 0);
        while (true) {
            b.velems_.push_back(v);
            int i;
            for (i = dim - 1; i >= 0; --i) {
                if (++v[static_cast<size_t>(i)] < p) break;
                v[static_cast<size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    }
    return b;
}

std::string MatrixBackend::endo_label(const Endo& a) const {
    // coordinates w.r.t. the W enumeration are not unique to print; use the
    // matrix itself
    return matn_to_string(a);
}

std::string MatrixBackend::vec_label(const Vec& v) const {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

namespace {

template <class B>
FiniteLoop realize_impl(const B& b, size_t cap) {
    const auto& ws = b.w_elements();
    const auto& vs = b.v_elements();
    const size_t order = ws.size() * vs.size();
    if (order > cap)
        throw loop_error(errc::too_large, "loop order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));

    std::vector<std::string> labels;
    labels.reserve(order);
    for (const auto& a : ws)
        for (const auto& u : vs) labels.push_back("(" + b.endo_label(a) + "," + b.vec_label(u) + ")");

    std::map<typename B::Endo, int> widx;
    for (size_t i = 0; i < ws.size(); ++i) widx[ws[i]] = static_cast<int>(i);
    std::map<typename B::Vec, int> vidx;
    for (size_t i = 0; i < vs.size(); ++i) vidx[vs[i]] = static_cast<int>(i);

    const int nv = static_cast<int>(vs.size());
    std::vector<std::vector<int>> table(order, std::vector<int>(order, -1));
    for (size_t i = 0; i < order; ++i) {
        typename B::Elem x{ws[i / vs.size()], vs[i % vs.size()]};
        for (size_t j = 0; j < order; ++j) {
            typename B::Elem y{ws[j / vs.size()], vs[j % vs.size()]};
            auto z = qrv_mul(b, x, y);
            table[i][j] = widx.at(z.a) * nv + vidx.at(z.u);
        }
    }
    return FiniteLoop::from_table(std::move(labels), std::move(table));
}

template <class B>
int realized_index_impl(const B& b, const typename B::Elem& e) {
    const auto& ws = b.w_elements();
    const auto& vs = b.v_elements();
    auto wi = std::find(ws.begin(), ws.end(), e.a);
    auto vi = std::find(vs.begin(), vs.end(), e.u);
    if (wi == ws.end() || vi == vs.end())
        throw loop_error(errc::invalid_param, "element not in the realized carrier");
    return static_cast<int>((wi - ws.begin()) * static_cast<long>(vs.size()) + (vi - vs.begin()));
}

} // namespace

FiniteLoop realize_cayley(const FieldBackend& b, size_t cap) { return realize_impl(b, cap); }
FiniteLoop realize_cayley(const MatrixBackend& b, size_t cap) { return realize_impl(b, cap); }

int realized_index(const FieldBackend& b, const FieldBackend::Elem& e) { return realized_index_impl(b, e); }
int realized_index(const MatrixBackend& b, const MatrixBackend::Elem& e) { return realized_index_impl(b, e); }

FieldBackend::Elem realized_element(const FieldBackend& b, int index) {
    const auto nv = static_cast<int>(b.v_elements().size());
    return {b.w_elements()[static_cast<size_t>(index / nv)], b.v_elements()[static_cast<size_t>(index % nv)]};
}

MatrixBackend::Elem realized_element(const MatrixBackend& b, int index) {
    const auto nv = static_cast<int>(b.v_elements().size());
    return {b.w_elements()[static_cast<size_t>(index / nv)], b.v_elements()[static_cast<size_t>(index % nv)]};
}

} // namespace autoloop
