#include "autoloop/iso.hpp"

#include <algorithm>
#include <map>

namespace autoloop {

namespace {

// Per-element invariant preserved by any isomorphism.
struct ElemInv {
    int order;     // 0 when no power reaches the identity
    int commutant; // |{y : xy = yx}|
    bool operator<(const ElemInv& o) const {
        return order != o.order ? order < o.order : commutant < o.commutant;
    }
    bool operator==(const ElemInv& o) const { return order == o.order && commutant == o.commutant; }
};

std::vector<ElemInv> element_invariants(const FiniteLoop& Q) {
    const int n = Q.order();
    std::vector<ElemInv> inv(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        auto ord = element_order(Q, x);
        int comm = 0;
        for (int y = 0; y < n; ++y)
            if (Q.mul(x, y) == Q.mul(y, x)) ++comm;
        inv[static_cast<size_t>(x)] = {ord ? *ord : 0, comm};
    }
    return inv;
}

struct Searcher {
    const FiniteLoop& Q1;
    const FiniteLoop& Q2;
    IsoMode mode;
    std::vector<ElemInv> inv1, inv2;
    std::vector<int> gens;                  // generator sequence for Q1
    std::vector<std::vector<int>> cand;     // candidate images per generator
    std::vector<int> map, rmap;             // partial bijection and inverse
    std::vector<int> defined;               // trail, in definition order
    IsoResult result;
    bool stop = false;

    Searcher(const FiniteLoop& q1, const FiniteLoop& q2, IsoMode m) : Q1(q1), Q2(q2), mode(m) {}

    bool define(int a, int b) {
        if (map[static_cast<size_t>(a)] != -1) return map[static_cast<size_t>(a)] == b;
        if (rmap[static_cast<size_t>(b)] != -1) return false;
        if (!(inv1[static_cast<size_t>(a)] == inv2[static_cast<size_t>(b)])) return false;
        map[static_cast<size_t>(a)] = b;
        rmap[static_cast<size_t>(b)] = a;
        defined.push_back(a);
        return true;
    }

    // Forced closure from the trail position `from`; every product of two
    // defined elements is defined and checked.
    bool propagate(size_t from) {
        for (size_t wi = from; wi < defined.size(); ++wi) {
            int a = defined[wi];
            int fa = map[static_cast<size_t>(a)];
            for (size_t i = 0; i <= wi; ++i) {
                int b = defined[i];
                int fb = map[static_cast<size_t>(b)];
                if (!define(Q1.mul(a, b), Q2.mul(fa, fb))) return false;
                if (!define(Q1.mul(b, a), Q2.mul(fb, fa))) return false;
            }
        }
        return true;
    }

    void unwind(size_t mark) {
        while (defined.size() > mark) {
            int a = defined.back();
            defined.pop_back();
            rmap[static_cast<size_t>(map[static_cast<size_t>(a)])] = -1;
            map[static_cast<size_t>(a)] = -1;
        }
    }

    void found() {
        ++result.count;
        if (mode == IsoMode::first) {
            result.maps.push_back(map);
            stop = true;
        } else if (mode == IsoMode::all) {
            result.maps.push_back(map);
        }
    }

    void assign(size_t gi) {
        if (stop) return;
        if (gi == gens.size()) {
            if (static_cast<int>(defined.size()) == Q1.order()) found();
            return;
        }
        int g = gens[static_cast<size_t>(gi)];
        if (map[static_cast<size_t>(g)] != -1) {
            assign(gi + 1); // image already forced
            return;
        }
        for (int c : cand[static_cast<size_t>(gi)]) {
            if (stop) return;
            size_t mark = defined.size();
            if (define(g, c) && propagate(mark)) assign(gi + 1);
            unwind(mark);
        }
    }
};

} // namespace

IsoResult find_isomorphisms(const FiniteLoop& Q1, const FiniteLoop& Q2, IsoMode mode) {
    IsoResult empty;
    if (Q1.order() != Q2.order()) return empty;
    const int n = Q1.order();

    Searcher s(Q1, Q2, mode);
    s.inv1 = element_invariants(Q1);
    s.inv2 = element_invariants(Q2);

    // multiset of invariants must agree
    {
        auto a = s.inv1;
        auto b = s.inv2;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (!(a == b)) return empty;
    }

    std::map<std::pair<int, int>, int> class_size2;
    for (const auto& iv : s.inv2) ++class_size2[{iv.order, iv.commutant}];

    // Greedy generating sequence: repeatedly take the not-yet-generated
    // element whose invariant class in Q2 is smallest.
    {
        std::vector<char> in(static_cast<size_t>(n), 0);
        Subloop cur = subloop_generated(Q1, {});
        for (int m : cur.members) in[static_cast<size_t>(m)] = 1;
        while (static_cast<int>(cur.members.size()) < n) {
            int best = -1;
            long bestsz = 1u << 30;
            for (int x = 0; x < n; ++x) {
                if (in[static_cast<size_t>(x)]) continue;
                long sz = class_size2[{s.inv1[static_cast<size_t>(x)].order, s.inv1[static_cast<size_t>(x)].commutant}];
                if (sz < bestsz) {
                    bestsz = sz;
                    best = x;
                }
            }
            s.gens.push_back(best);
            std::vector<int> g = s.gens;
            cur = subloop_generated(Q1, g);
            for (int m : cur.members) in[static_cast<size_t>(m)] = 1;
        }
    }

    s.cand.resize(s.gens.size());
    for (size_t i = 0; i < s.gens.size(); ++i) {
        const auto& iv = s.inv1[static_cast<size_t>(s.gens[i])];
        for (int y = 0; y < n; ++y)
            if (s.inv2[static_cast<size_t>(y)] == iv) s.cand[i].push_back(y);
    }

    s.map.assign(static_cast<size_t>(n), -1);
    s.rmap.assign(static_cast<size_t>(n), -1);
    if (!s.define(Q1.identity(), Q2.identity())) return empty;
    if (!s.propagate(0)) return empty;
    s.assign(0);
    return s.result;
}

} // namespace autoloop
