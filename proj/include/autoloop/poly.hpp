#ifndef AUTOLOOP_POLY_HPP
#define AUTOLOOP_POLY_HPP

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "autoloop/fp.hpp"

namespace autoloop {

/// Dense polynomial over F_p, little-endian coefficients, no trailing zeros.
/// deg(0) = -1. All operations take the field explicitly; coefficients are
/// assumed reduced mod p.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly{}; }
    static Poly constant(const PrimeField& F, std::int64_t v) {
        return Poly{{F.reduce(v)}};
    }
    /// c * x^k
    static Poly monomial(const PrimeField& F, std::int64_t c, int k) {
        std::vector<std::int64_t> v(static_cast<size_t>(k) + 1, 0);
        v.back() = F.reduce(c);
        return Poly{std::move(v)};
    }

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::int64_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : 0;
    }
    std::int64_t lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<std::int64_t> c_;
};

inline Poly poly_add(const PrimeField& F, const Poly& a, const Poly& b) {
    std::vector<std::int64_t> r(static_cast<size_t>(std::max(a.deg(), b.deg()) + 1), 0);
    for (int i = 0; i < static_cast<int>(r.size()); ++i)
        r[static_cast<size_t>(i)] = F.add(a.coeff(i), b.coeff(i));
    return Poly{std::move(r)};
}

inline Poly poly_neg(const PrimeField& F, const Poly& a) {
    std::vector<std::int64_t> r(a.coeffs());
    for (auto& x : r) x = F.neg(x);
    return Poly{std::move(r)};
}

inline Poly poly_sub(const PrimeField& F, const Poly& a, const Poly& b) {
    return poly_add(F, a, poly_neg(F, b));
}

inline Poly poly_mul(const PrimeField& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    std::vector<std::int64_t> r(static_cast<size_t>(a.deg() + b.deg() + 1), 0);
    for (int i = 0; i <= a.deg(); ++i) {
        if (a.coeff(i) == 0) continue;
        for (int j = 0; j <= b.deg(); ++j)
            r[static_cast<size_t>(i + j)] =
                F.add(r[static_cast<size_t>(i + j)], F.mul(a.coeff(i), b.coeff(j)));
    }
    return Poly{std::move(r)};
}

inline Poly poly_scale(const PrimeField& F, const Poly& a, std::int64_t s) {
    std::vector<std::int64_t> r(a.coeffs());
    for (auto& x : r) x = F.mul(x, s);
    return Poly{std::move(r)};
}

/// Quotient and remainder; divisor must be nonzero.
inline std::pair<Poly, Poly> poly_divmod(const PrimeField& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw loop_error(errc::division_by_zero, "polynomial division by zero");
    if (a.deg() < b.deg()) return {Poly::zero(), a};
    std::vector<std::int64_t> rem(a.coeffs());
    std::vector<std::int64_t> quo(static_cast<size_t>(a.deg() - b.deg() + 1), 0);
    std::int64_t lead_inv = F.inv(b.lead());
    for (int i = a.deg(); i >= b.deg(); --i) {
        std::int64_t q = F.mul(rem[static_cast<size_t>(i)], lead_inv);
        if (q == 0) continue;
        quo[static_cast<size_t>(i - b.deg())] = q;
        for (int j = 0; j <= b.deg(); ++j)
            rem[static_cast<size_t>(i - b.deg() + j)] =
                F.sub(rem[static_cast<size_t>(i - b.deg() + j)], F.mul(q, b.coeff(j)));
    }
    return {Poly{std::move(quo)}, Poly{std::move(rem)}};
}

inline Poly poly_rem(const PrimeField& F, const Poly& a, const Poly& b) {
    return poly_divmod(F, a, b).second;
}

inline Poly poly_make_monic(const PrimeField& F, const Poly& a) {
    if (a.is_zero() || a.lead() == 1) return a;
    return poly_scale(F, a, F.inv(a.lead()));
}

/// Monic gcd; gcd(0,0) = 0.
inline Poly poly_gcd(const PrimeField& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(F, a);
}

inline std::int64_t poly_eval(const PrimeField& F, const Poly& a, std::int64_t x) {
    std::int64_t r = 0;
    for (int i = a.deg(); i >= 0; --i) r = F.add(F.mul(r, x), a.coeff(i));
    return r;
}

/// a^e mod m, binary exponentiation.
inline Poly poly_powmod(const PrimeField& F, Poly a, std::int64_t e, const Poly& m) {
    Poly r = poly_rem(F, Poly::constant(F, 1), m);
    a = poly_rem(F, a, m);
    while (e > 0) {
        if (e & 1) r = poly_rem(F, poly_mul(F, r, a), m);
        a = poly_rem(F, poly_mul(F, a, a), m);
        e >>= 1;
    }
    return r;
}

/// Extended Euclid: returns g (monic) with g = s*a + t*b, as (g, s, t).
inline std::tuple<Poly, Poly, Poly> poly_ext_gcd(const PrimeField& F, Poly a, Poly b) {
    Poly s0 = Poly::constant(F, 1), s1 = Poly::zero();
    Poly t0 = Poly::zero(), t1 = Poly::constant(F, 1);
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(F, a, b);
        a = std::move(b);
        b = std::move(r);
        Poly s2 = poly_sub(F, s0, poly_mul(F, q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = poly_sub(F, t0, poly_mul(F, q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!a.is_zero() && a.lead() != 1) {
        std::int64_t li = F.inv(a.lead());
        a = poly_scale(F, a, li);
        s0 = poly_scale(F, s0, li);
        t0 = poly_scale(F, t0, li);
    }
    return {a, s0, t0};
}

/// Prints "1+2t" style with the given variable name; "0" for zero.
inline std::string poly_to_string(const Poly& a, const std::string& var = "t") {
    if (a.is_zero()) return "0";
    std::string s;
    for (int i = 0; i <= a.deg(); ++i) {
        std::int64_t c = a.coeff(i);
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c);
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace autoloop

#endif
