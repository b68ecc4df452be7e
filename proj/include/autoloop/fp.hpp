#ifndef AUTOLOOP_FP_HPP
#define AUTOLOOP_FP_HPP

#include <cstdint>

#include "autoloop/errors.hpp"

namespace autoloop {

/// Arithmetic in the prime field F_p with elements stored as int64_t in [0, p).
/// p stays below 2^31 so products fit in __int128 without overflow.
struct PrimeField {
    std::int64_t p;

    std::int64_t reduce(std::int64_t x) const {
        std::int64_t r = x % p;
        return r < 0 ? r + p : r;
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
    std::int64_t neg(std::int64_t a) const { return reduce(-a); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const {
        return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
    }
    std::int64_t pow(std::int64_t a, std::int64_t e) const {
        std::int64_t r = 1 % p, base = reduce(a);
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    std::int64_t inv(std::int64_t a) const {
        a = reduce(a);
        if (a == 0) throw loop_error(errc::division_by_zero, "inverse of 0 mod p");
        return pow(a, p - 2);
    }
};

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Least positive quadratic non-residue mod an odd prime p.
inline std::int64_t least_nonresidue(std::int64_t p) {
    PrimeField F{p};
    for (std::int64_t d = 2; d < p; ++d)
        if (F.pow(d, (p - 1) / 2) == p - 1) return d;
    throw loop_error(errc::invalid_param, "no non-residue found (p not an odd prime?)");
}

} // namespace autoloop

#endif
