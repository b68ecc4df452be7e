#include "autoloop/infinite.hpp"

#include <algorithm>

namespace autoloop {

LaurentLoop::LaurentLoop(std::int64_t p) : p_(p), F_{p} {
    if (!is_prime(p)) throw loop_error(errc::non_prime, std::to_string(p) + " is not prime");
}

RatFun LaurentLoop::one_plus(std::int64_t j) const {
    return RatFun::from_poly(Poly{{1, F_.reduce(j)}});
}

RatFun LaurentLoop::one_minus(std::int64_t j) const {
    return RatFun::from_poly(Poly{{1, F_.neg(j)}});
}

RatLoopElement LaurentLoop::mul(const RatLoopElement& x, const RatLoopElement& y) const {
    // (a+b, u(1+b) + v(1-a)) with a = x.i t, b = y.i t
    RatFun u = rat_add(F_, rat_mul(F_, x.u, one_plus(y.i)), rat_mul(F_, y.u, one_minus(x.i)));
    return {F_.add(x.i, y.i), u};
}

RatLoopElement LaurentLoop::left_div(const RatLoopElement& x, const RatLoopElement& y) const {
    // (b-a, (v - u I_{b-a}) J_a^{-1})
    std::int64_t diff = F_.sub(y.i, x.i);
    RatFun t = rat_sub(F_, y.u, rat_mul(F_, x.u, one_plus(diff)));
    return {diff, rat_div(F_, t, one_minus(x.i))};
}

RatLoopElement LaurentLoop::right_div(const RatLoopElement& x, const RatLoopElement& y) const {
    // (b-a, (v - u J_{b-a}) I_a^{-1})
    std::int64_t diff = F_.sub(y.i, x.i);
    RatFun t = rat_sub(F_, y.u, rat_mul(F_, x.u, one_minus(diff)));
    return {diff, rat_div(F_, t, one_plus(x.i))};
}

RatLoopElement LaurentLoop::inverse(const RatLoopElement& x) const {
    return {F_.neg(x.i), rat_neg(F_, x.u)};
}

RatLoopElement LaurentLoop::power(const RatLoopElement& x, int m) const {
    RatLoopElement r = identity();
    for (int k = 0; k < m; ++k) r = mul(r, x);
    return r;
}

std::string LaurentLoop::to_string(const RatLoopElement& x) const {
    std::string a = x.i == 0 ? "0" : (x.i == 1 ? "t" : std::to_string(x.i) + "t");
    return "(" + a + "," + rat_to_string(x.u) + ")";
}

MembershipReport membership_U(std::int64_t p, const RatFun& f) {
    const PrimeField F{p};
    MembershipReport rep;
    if (p == 2) {
        // U = F_2[t^2] localized at {1+t^2}: reduced form has an
        // even-coefficient numerator over an even power of (1+t)
        Poly den = f.den();
        const Poly onep = Poly{{1, 1}};
        int e = 0;
        while (den.deg() > 0) {
            auto [q, r] = poly_divmod(F, den, onep);
            if (!r.is_zero()) {
                rep.note = "denominator has a factor other than 1+t";
                return rep;
            }
            den = q;
            ++e;
        }
        if (e % 2 != 0) {
            rep.note = "denominator is an odd power of 1+t";
            return rep;
        }
        for (int i = 1; i <= f.num().deg(); i += 2)
            if (f.num().coeff(i) != 0) {
                rep.note = "numerator is not a polynomial in t^2";
                return rep;
            }
        if (e > 0) rep.factors.push_back({1, e});
        rep.in_u = true;
        return rep;
    }
    // odd p: denominator must split into factors 1 + c t, c in F_p^*;
    // the monic associate of 1 + c t is t + c^{-1}, with root -c^{-1} != 0
    Poly den = f.den();
    std::vector<std::pair<std::int64_t, int>> factors;
    for (std::int64_t r = 1; r < p; ++r) {
        const Poly lin = Poly{{F.neg(r), 1}}; // t - r
        int mult = 0;
        while (den.deg() > 0 && poly_eval(F, den, r) == 0) {
            den = poly_divmod(F, den, lin).first;
            ++mult;
        }
        if (mult > 0) factors.push_back({F.neg(F.inv(r)), mult}); // c with root(1+ct) = r
    }
    if (den.deg() != 0) {
        rep.note = "denominator does not split into factors 1+ct, c != 0";
        return rep;
    }
    std::sort(factors.begin(), factors.end());
    rep.factors = std::move(factors);
    rep.in_u = true;
    return rep;
}

bool membership_L(std::int64_t p, const RatLoopElement& e) {
    if (p == 2) {
        const PrimeField F{p};
        RatFun g = e.u;
        if (e.i % 2 != 0) g = rat_div(F, g, RatFun::from_poly(Poly{{1, 1}}));
        return membership_U(2, g).in_u;
    }
    return membership_U(p, e.u).in_u;
}

BfsReport bfs_closure(std::int64_t p, const std::vector<RatLoopElement>& gens, int depth, size_t budget) {
    LaurentLoop L(p);
    BfsReport rep;
    std::vector<std::vector<RatLoopElement>> level(static_cast<size_t>(depth) + 1);

    auto add = [&](const RatLoopElement& e, int d) -> bool {
        auto it = rep.depth_of.find(e);
        if (it != rep.depth_of.end()) return true;
        if (rep.depth_of.size() >= budget) {
            rep.budget_exceeded = true;
            return false;
        }
        rep.depth_of.emplace(e, d);
        level[static_cast<size_t>(d)].push_back(e);
        if (!membership_L(p, e)) rep.violations.push_back(e);
        return true;
    };

    add(L.identity(), 0);
    for (const auto& g : gens)
        if (!add(g, 0)) break;

    for (int d = 1; d <= depth && !rep.budget_exceeded; ++d) {
        for (int d1 = 0; d1 < d && !rep.budget_exceeded; ++d1) {
            int d2 = d - 1 - d1;
            for (const auto& x : level[static_cast<size_t>(d1)]) {
                if (rep.budget_exceeded) break;
                for (const auto& y : level[static_cast<size_t>(d2)]) {
                    if (!add(L.mul(x, y), d)) break;
                    if (!add(L.left_div(x, y), d)) break;
                    if (!add(L.right_div(x, y), d)) break;
                }
            }
        }
        if (!rep.budget_exceeded) rep.depth_completed = d;
    }
    rep.element_count = rep.depth_of.size();
    return rep;
}

namespace {

std::vector<IdentityCheck> identities_odd(std::int64_t p) {
    const PrimeField F{p};
    LaurentLoop L(p);
    std::vector<IdentityCheck> out;
    const RatFun one = RatFun::constant(F, 1);
    const RatFun t = RatFun::t(F);
    const RatLoopElement T{1, RatFun()};    // (t, 0)
    const RatLoopElement E0{0, one};        // (0, 1)

    auto check = [&](const std::string& name, const RatLoopElement& lhs, const RatLoopElement& rhs) {
        out.push_back({name, lhs == rhs, L.to_string(lhs), L.to_string(rhs)});
    };
    auto check_neq = [&](const std::string& name, const RatLoopElement& lhs, const RatLoopElement& rhs) {
        out.push_back({name, lhs != rhs, L.to_string(lhs), L.to_string(rhs)});
    };

    // auxiliary power identity: (0,t^m)(t,0) * (t,0)^{-1}(0,t^m) = (0, 2(t^m - t^{m+2}))
    for (int m = 0; m <= 10; ++m) {
        RatLoopElement tm{0, rat_pow(F, t, m)};
        RatLoopElement lhs = L.mul(L.mul(tm, T), L.mul(L.inverse(T), tm));
        RatFun rhs_u = rat_scale(F, rat_sub(F, rat_pow(F, t, m), rat_pow(F, t, m + 2)), 2);
        check("aux-power m=" + std::to_string(m), lhs, {0, rhs_u});
    }

    // the two factors of the auxiliary identity
    check("aux-left (0,t^m)(t,0), m=1", L.mul({0, t}, T), {1, rat_mul(F, t, RatFun::from_poly(Poly{{1, 1}}))});
    check("aux-right (t,0)^{-1}(0,t^m), m=1", L.mul(L.inverse(T), {0, t}),
          {F.neg(1), rat_mul(F, t, RatFun::from_poly(Poly{{1, 1}}))});

    // (-t,0) * (0,1)(t,0) = (0, 1+2t+t^2)
    check("second generator combination", L.mul(L.inverse(T), L.mul(E0, T)),
          {0, RatFun::from_poly(Poly{{1, F.reduce(2), 1}})});

    // nonassociativity witness
    RatLoopElement w1 = L.mul(L.mul(T, T), E0);
    RatLoopElement w2 = L.mul(T, L.mul(T, E0));
    check("witness (t,0)(t,0).(0,1)", w1, {2 % p, RatFun::from_poly(Poly{{1, F.neg(2)}})});
    check("witness (t,0).(t,0)(0,1)", w2, {2 % p, RatFun::from_poly(Poly{{1, F.neg(2), 1}})});
    check_neq("nonassociativity", w1, w2);

    // localization descent: ((a,0) \ (0,(1-a)^m)) / (-a,0) = (0,(1-a)^{m-2})
    for (std::int64_t c = 0; c < p; ++c) {
        RatLoopElement a{c, RatFun()};
        RatFun ja = RatFun::from_poly(Poly{{1, F.neg(c)}}); // 1 - ct
        for (int m = -5; m <= 5; ++m) {
            RatLoopElement lhs = L.right_div(L.inverse(a), L.left_div(a, {0, rat_pow(F, ja, m)}));
            check("localization-step c=" + std::to_string(c) + " m=" + std::to_string(m), lhs,
                  {0, rat_pow(F, ja, m - 2)});
        }
    }

    check_neq("noncommutativity", L.mul(T, E0), L.mul(E0, T));
    return out;
}

std::vector<IdentityCheck> identities_char2() {
    const PrimeField F{2};
    LaurentLoop L(2);
    std::vector<IdentityCheck> out;
    const RatFun one = RatFun::constant(F, 1);
    const RatFun onep = RatFun::from_poly(Poly{{1, 1}});      // 1+t
    const RatFun onep2 = RatFun::from_poly(Poly{{1, 0, 1}});  // 1+t^2
    const RatLoopElement T{1, RatFun()};
    const RatLoopElement E0{0, one};

    auto check = [&](const std::string& name, const RatLoopElement& lhs, const RatLoopElement& rhs) {
        out.push_back({name, lhs == rhs, L.to_string(lhs), L.to_string(rhs)});
    };
    auto check_neq = [&](const std::string& name, const RatLoopElement& lhs, const RatLoopElement& rhs) {
        out.push_back({name, lhs != rhs, L.to_string(lhs), L.to_string(rhs)});
    };

    // nonassociativity witness: (0,1) vs (0,1+t^2)
    RatLoopElement w1 = L.mul(L.mul(T, T), E0);
    RatLoopElement w2 = L.mul(T, L.mul(T, E0));
    check("witness (t,0)(t,0).(0,1)", w1, {0, one});
    check("witness (t,0).(t,0)(0,1)", w2, {0, onep2});
    check_neq("nonassociativity", w1, w2);

    // sample U elements: h(t^2) / (1+t^2)^k
    std::vector<RatFun> U = {
        one,
        RatFun::from_poly(Poly{{0, 0, 1}}),          // t^2
        RatFun::from_poly(Poly{{1, 0, 0, 0, 1}}),    // 1+t^4
        rat_inv(F, onep2),                           // (1+t^2)^{-1}
        rat_div(F, RatFun::from_poly(Poly{{0, 0, 1}}), onep2),
    };

    int idx = 0;
    for (const auto& f : U)
        for (const auto& g : U) {
            std::string tag = " f,g#" + std::to_string(idx++);
            RatLoopElement xf{1, rat_mul(F, f, onep)};
            RatLoopElement xg{1, rat_mul(F, g, onep)};
            check("closure (t,f(1+t))(t,g(1+t))" + tag, L.mul(xf, xg), {0, rat_mul(F, rat_add(F, f, g), onep2)});
            check("closure (0,f)\\(t,g(1+t))" + tag, L.left_div({0, f}, xg),
                  {1, rat_mul(F, rat_add(F, g, f), onep)});
            check("closure (t,f(1+t))\\(0,g)" + tag, L.left_div(xf, {0, g}),
                  {1, rat_mul(F, rat_add(F, rat_div(F, g, onep2), f), onep)});
            check("closure (t,f(1+t))\\(t,g(1+t))" + tag, L.left_div(xf, xg), {0, rat_add(F, g, f)});
        }

    // generator identity: (t,0) * (0,u)(t,0) = (0, u(1+t^2))
    for (const auto& u : U)
        check("generator identity u=" + rat_to_string(u), L.mul(T, L.mul({0, u}, T)), {0, rat_mul(F, u, onep2)});

    // the proof chain
    check("(t,0)\\(0,1)", L.left_div(T, E0), {1, rat_mul(F, rat_inv(F, onep2), onep)});
    check("(t,1+t)\\(t,(1+t^2)^{-1}(1+t))",
          L.left_div({1, onep}, {1, rat_mul(F, rat_inv(F, onep2), onep)}),
          {0, rat_add(F, one, rat_inv(F, onep2))});

    // commutativity of the char-2 loop on samples
    bool comm = true;
    for (const auto& f : U)
        for (const auto& g : U) {
            RatLoopElement x{1, f}, y{0, g};
            if (L.mul(x, y) != L.mul(y, x)) comm = false;
            RatLoopElement x2{1, f}, y2{1, g};
            if (L.mul(x2, y2) != L.mul(y2, x2)) comm = false;
        }
    out.push_back({"commutativity", comm, "", ""});
    return out;
}

} // namespace

std::vector<IdentityCheck> verify_infinite_identities(std::int64_t p) {
    if (!is_prime(p)) throw loop_error(errc::non_prime, std::to_string(p) + " is not prime");
    const PrimeField F{p};
    LaurentLoop L(p);

    std::vector<IdentityCheck> out = (p == 2) ? identities_char2() : identities_odd(p);

    // power rule (a,u)^m = (ma, mu), and exponent p
    const RatFun t = RatFun::t(F);
    std::vector<RatLoopElement> samples = {
        {1, RatFun()},
        {0, RatFun::constant(F, 1)},
        {1, RatFun::constant(F, 1)},
        {F.reduce(p - 1), rat_div(F, t, RatFun::from_poly(Poly{{1, 1}}))},
        {F.reduce(2), rat_mul(F, t, t)},
    };
    for (size_t si = 0; si < samples.size(); ++si) {
        const auto& x = samples[si];
        bool ok = true;
        for (int m = 0; m <= 2 * static_cast<int>(p); ++m) {
            RatLoopElement expect{F.mul(F.reduce(m), x.i), rat_scale(F, x.u, m)};
            if (L.power(x, m) != expect) ok = false;
        }
        // a non-left bracketing: ((x x)(x x)) = x^4
        RatLoopElement x2 = L.mul(x, x);
        if (L.mul(x2, x2) != L.power(x, 4)) ok = false;
        out.push_back({"power rule sample#" + std::to_string(si), ok, L.to_string(x), ""});

        bool expok = L.power(x, static_cast<int>(p)) == L.identity();
        if (x != L.identity())
            for (int m = 1; m < static_cast<int>(p); ++m)
                if (L.power(x, m) == L.identity()) expok = false;
        out.push_back({"exponent p sample#" + std::to_string(si), expok, L.to_string(x), ""});
    }

    // projection (it, u) |-> i is a homomorphism onto Z_p
    bool proj = true;
    for (const auto& x : samples)
        for (const auto& y : samples)
            if (L.mul(x, y).i != F.add(x.i, y.i)) proj = false;
    out.push_back({"projection homomorphism", proj, "", ""});

    // loop laws: x \ (x y) = y and (x y) / y = x on sample pairs
    bool laws = true;
    for (const auto& x : samples)
        for (const auto& y : samples) {
            if (L.left_div(x, L.mul(x, y)) != y) laws = false;
            if (L.right_div(y, L.mul(x, y)) != x) laws = false;
        }
    out.push_back({"division laws", laws, "", ""});

    return out;
}

} // namespace autoloop
