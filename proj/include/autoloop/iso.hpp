#ifndef AUTOLOOP_ISO_HPP
#define AUTOLOOP_ISO_HPP

#include <cstdint>
#include <vector>

#include "autoloop/loop.hpp"

namespace autoloop {

enum class IsoMode { first, count, all };

struct IsoResult {
    long long count = 0;
    std::vector<Perm> maps; // filled for first/all
    bool found() const { return count > 0; }
};

/// Backtracking search for loop isomorphisms Q1 -> Q2.
///
/// Partial maps on a greedily chosen generating set are extended by forced
/// closure: once both factors of a product are mapped, the product's image
/// is forced. Candidate images are pruned by (element order, commutant
/// size) profiles. With Q1 == Q2 and mode = count this returns |Aut(Q)|.
IsoResult find_isomorphisms(const FiniteLoop& Q1, const FiniteLoop& Q2, IsoMode mode);

inline long long automorphism_count(const FiniteLoop& Q) {
    return find_isomorphisms(Q, Q, IsoMode::count).count;
}

} // namespace autoloop

#endif
