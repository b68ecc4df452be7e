#ifndef AUTOLOOP_RATFUN_HPP
#define AUTOLOOP_RATFUN_HPP

#include <string>
#include <utility>

#include "autoloop/poly.hpp"

namespace autoloop {

/// Reduced rational function over F_p: gcd(num, den) = 1, den monic and
/// nonzero, zero is 0/1. Equality is representation equality, which the
/// canonical form makes semantic.
class RatFun {
public:
    RatFun() : num_(Poly::zero()), den_(Poly{{1}}) {}

    static RatFun make(const PrimeField& F, Poly num, Poly den) {
        if (den.is_zero()) throw loop_error(errc::division_by_zero, "rational function with zero denominator");
        RatFun r;
        if (num.is_zero()) return r;
        Poly g = poly_gcd(F, num, den);
        if (g.deg() > 0) {
            num = poly_divmod(F, num, g).first;
            den = poly_divmod(F, den, g).first;
        }
        std::int64_t li = F.inv(den.lead());
        r.num_ = poly_scale(F, num, li);
        r.den_ = poly_scale(F, den, li);
        return r;
    }

    static RatFun from_poly(Poly num) {
        RatFun r;
        r.num_ = std::move(num);
        return r;
    }
    static RatFun constant(const PrimeField& F, std::int64_t v) {
        return from_poly(Poly::constant(F, v));
    }
    /// The generator t.
    static RatFun t(const PrimeField& F) { return from_poly(Poly::monomial(F, 1, 1)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.deg() == 0; }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

private:
    Poly num_, den_;
};

inline RatFun rat_add(const PrimeField& F, const RatFun& a, const RatFun& b) {
    Poly n = poly_add(F, poly_mul(F, a.num(), b.den()), poly_mul(F, b.num(), a.den()));
    return RatFun::make(F, std::move(n), poly_mul(F, a.den(), b.den()));
}

inline RatFun rat_neg(const PrimeField& F, const RatFun& a) {
    return RatFun::make(F, poly_neg(F, a.num()), a.den());
}

inline RatFun rat_sub(const PrimeField& F, const RatFun& a, const RatFun& b) {
    return rat_add(F, a, rat_neg(F, b));
}

inline RatFun rat_mul(const PrimeField& F, const RatFun& a, const RatFun& b) {
    return RatFun::make(F, poly_mul(F, a.num(), b.num()), poly_mul(F, a.den(), b.den()));
}

inline RatFun rat_div(const PrimeField& F, const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw loop_error(errc::division_by_zero, "rational division by zero");
    return RatFun::make(F, poly_mul(F, a.num(), b.den()), poly_mul(F, a.den(), b.num()));
}

inline RatFun rat_inv(const PrimeField& F, const RatFun& a) {
    return rat_div(F, RatFun::constant(F, 1), a);
}

inline RatFun rat_scale(const PrimeField& F, const RatFun& a, std::int64_t s) {
    return RatFun::make(F, poly_scale(F, a.num(), F.reduce(s)), a.den());
}

/// a^e for any integer e (negative uses the inverse).
inline RatFun rat_pow(const PrimeField& F, RatFun a, std::int64_t e) {
    if (e < 0) {
        a = rat_inv(F, a);
        e = -e;
    }
    RatFun r = RatFun::constant(F, 1);
    while (e > 0) {
        if (e & 1) r = rat_mul(F, r, a);
        a = rat_mul(F, a, a);
        e >>= 1;
    }
    return r;
}

inline std::string rat_to_string(const RatFun& a, const std::string& var = "t") {
    if (a.is_poly()) return poly_to_string(a.num(), var);
    std::string n = poly_to_string(a.num(), var);
    std::string d = poly_to_string(a.den(), var);
    if (a.num().deg() > 0) n = "(" + n + ")";
    return n + "/(" + d + ")";
}

} // namespace autoloop

#endif
