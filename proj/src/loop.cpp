#include "autoloop/loop.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "autoloop/parallel.hpp"

namespace autoloop {

FiniteLoop FiniteLoop::from_table(std::vector<std::string> labels, std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw loop_error(errc::not_latin, "empty table");
    if (labels.empty()) {
        for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (static_cast<int>(labels.size()) != n)
        throw loop_error(errc::not_latin, "label count does not match table order");

    FiniteLoop Q;
    Q.n_ = n;
    Q.labels_ = std::move(labels);
    Q.table_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[static_cast<size_t>(i)].size()) != n)
            throw loop_error(errc::not_latin, "table is not square at row " + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            int v = table[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (v < 0 || v >= n)
                throw loop_error(errc::not_latin, "entry out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            Q.table_[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] = v;
        }
    }

    // Latin property, and fill the division tables along the way.
    Q.ldiv_.assign(Q.table_.size(), -1);
    Q.rdiv_.assign(Q.table_.size(), -1);
    for (int x = 0; x < n; ++x) {
        for (int z = 0; z < n; ++z) {
            int y = Q.mul(x, z);
            int& slot = Q.ldiv_[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)];
            if (slot != -1)
                throw loop_error(errc::not_latin, "row " + std::to_string(x) + " repeats value " + std::to_string(y));
            slot = z;
        }
    }
    for (int x = 0; x < n; ++x) {
        for (int z = 0; z < n; ++z) {
            int y = Q.mul(z, x);
            int& slot = Q.rdiv_[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)];
            if (slot != -1)
                throw loop_error(errc::not_latin, "column " + std::to_string(x) + " repeats value " + std::to_string(y));
            slot = z;
        }
    }

    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            if (Q.mul(e, j) != j || Q.mul(j, e) != j) ok = false;
        if (ok) {
            Q.id_ = e;
            break;
        }
    }
    if (Q.id_ < 0) throw loop_error(errc::no_identity, "no two-sided identity element");
    return Q;
}

std::vector<std::vector<int>> FiniteLoop::table_rows() const {
    std::vector<std::vector<int>> rows(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        rows[static_cast<size_t>(i)].resize(static_cast<size_t>(n_));
        for (int j = 0; j < n_; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = mul(i, j);
    }
    return rows;
}

Perm translation_L(const FiniteLoop& Q, int x) {
    Perm p(static_cast<size_t>(Q.order()));
    for (int y = 0; y < Q.order(); ++y) p[static_cast<size_t>(y)] = Q.mul(x, y);
    return p;
}

Perm translation_R(const FiniteLoop& Q, int x) {
    Perm p(static_cast<size_t>(Q.order()));
    for (int y = 0; y < Q.order(); ++y) p[static_cast<size_t>(y)] = Q.mul(y, x);
    return p;
}

Perm inner_T(const FiniteLoop& Q, int x) {
    Perm p(static_cast<size_t>(Q.order()));
    for (int y = 0; y < Q.order(); ++y) p[static_cast<size_t>(y)] = Q.left_div(x, Q.mul(y, x));
    return p;
}

Perm inner_L(const FiniteLoop& Q, int x, int y) {
    Perm p(static_cast<size_t>(Q.order()));
    const int yx = Q.mul(y, x);
    for (int z = 0; z < Q.order(); ++z) p[static_cast<size_t>(z)] = Q.left_div(yx, Q.mul(y, Q.mul(x, z)));
    return p;
}

Perm inner_R(const FiniteLoop& Q, int x, int y) {
    Perm p(static_cast<size_t>(Q.order()));
    const int xy = Q.mul(x, y);
    for (int z = 0; z < Q.order(); ++z) p[static_cast<size_t>(z)] = Q.right_div(xy, Q.mul(Q.mul(z, x), y));
    return p;
}

std::vector<InnerGen> inner_generators(const FiniteLoop& Q) {
    std::vector<InnerGen> gens;
    const int n = Q.order();
    gens.reserve(static_cast<size_t>(n) + 2 * static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) gens.push_back({'T', x, -1, inner_T(Q, x)});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) gens.push_back({'L', x, y, inner_L(Q, x, y)});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) gens.push_back({'R', x, y, inner_R(Q, x, y)});
    return gens;
}

bool is_homomorphism(const FiniteLoop& Q, const Perm& f) {
    const int n = Q.order();
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (f[static_cast<size_t>(Q.mul(u, v))] != Q.mul(f[static_cast<size_t>(u)], f[static_cast<size_t>(v)]))
                return false;
    return true;
}

namespace {

// First failing product pair of f, or (-1,-1).
std::pair<int, int> hom_witness(const FiniteLoop& Q, const Perm& f) {
    const int n = Q.order();
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (f[static_cast<size_t>(Q.mul(u, v))] != Q.mul(f[static_cast<size_t>(u)], f[static_cast<size_t>(v)]))
                return {u, v};
    return {-1, -1};
}

} // namespace

AutomorphicReport is_automorphic(const FiniteLoop& Q) {
    const int n = Q.order();
    std::vector<AutomorphicReport> found(worker_count());
    // Scan order per x: T_x first, then R_{x,0..n-1}; chunks over x keep the
    // first witness deterministic.
    parallel_chunks(n, [&](unsigned chunk, int begin, int end) {
        AutomorphicReport rep;
        for (int x = begin; x < end && rep.automorphic; ++x) {
            Perm t = inner_T(Q, x);
            auto w = hom_witness(Q, t);
            if (w.first >= 0) {
                rep = {false, 'T', x, -1, w.first, w.second};
                break;
            }
            for (int y = 0; y < n; ++y) {
                Perm r = inner_R(Q, x, y);
                auto wr = hom_witness(Q, r);
                if (wr.first >= 0) {
                    rep = {false, 'R', x, y, wr.first, wr.second};
                    break;
                }
            }
        }
        found[chunk] = rep;
    });
    for (const auto& rep : found)
        if (!rep.automorphic) return rep;
    return {};
}

int associator(const FiniteLoop& Q, int x, int y, int z) {
    const int lhs = Q.mul(Q.mul(x, y), z);
    const int rhs = Q.mul(x, Q.mul(y, z));
    return Q.right_div(rhs, lhs);
}

namespace {

std::vector<int> close_under_ops(const FiniteLoop& Q, std::vector<char>& in, std::vector<int> work) {
    // work: members not yet paired against the set; in: membership flags.
    std::vector<int> members;
    for (int i = 0; i < Q.order(); ++i)
        if (in[static_cast<size_t>(i)]) members.push_back(i);
    auto add = [&](int v) {
        if (!in[static_cast<size_t>(v)]) {
            in[static_cast<size_t>(v)] = 1;
            members.push_back(v);
            work.push_back(v);
        }
    };
    while (!work.empty()) {
        int a = work.back();
        work.pop_back();
        for (size_t i = 0; i < members.size(); ++i) {
            int b = members[i];
            add(Q.mul(a, b));
            add(Q.mul(b, a));
            add(Q.left_div(a, b));
            add(Q.left_div(b, a));
            add(Q.right_div(a, b));
            add(Q.right_div(b, a));
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool stable_under_inner(const FiniteLoop& Q, const std::vector<char>& in, const std::vector<int>& members) {
    const int n = Q.order();
    for (int s : members) {
        for (int x = 0; x < n; ++x)
            if (!in[static_cast<size_t>(Q.left_div(x, Q.mul(s, x)))]) return false;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                int yx = Q.mul(y, x);
                if (!in[static_cast<size_t>(Q.left_div(yx, Q.mul(y, Q.mul(x, s))))]) return false;
                int xy = Q.mul(x, y);
                if (!in[static_cast<size_t>(Q.right_div(xy, Q.mul(Q.mul(s, x), y)))]) return false;
            }
    }
    return true;
}

} // namespace

Subloop subloop_generated(const FiniteLoop& Q, const std::vector<int>& gens) {
    std::vector<char> in(static_cast<size_t>(Q.order()), 0);
    std::vector<int> work;
    in[static_cast<size_t>(Q.identity())] = 1;
    work.push_back(Q.identity());
    for (int g : gens)
        if (!in[static_cast<size_t>(g)]) {
            in[static_cast<size_t>(g)] = 1;
            work.push_back(g);
        }
    Subloop s;
    s.members = close_under_ops(Q, in, std::move(work));
    s.is_normal = stable_under_inner(Q, in, s.members);
    return s;
}

Subloop associator_subloop(const FiniteLoop& Q) {
    const int n = Q.order();
    std::vector<char> in(static_cast<size_t>(n), 0);
    std::vector<int> work;
    auto add = [&](int v) {
        if (!in[static_cast<size_t>(v)]) {
            in[static_cast<size_t>(v)] = 1;
            work.push_back(v);
        }
    };
    add(Q.identity());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) add(associator(Q, x, y, z));

    std::vector<int> members;
    while (true) {
        members = close_under_ops(Q, in, std::move(work));
        work.clear();
        // saturate under inner mappings
        std::vector<int> fresh;
        for (int s : members) {
            for (int x = 0; x < n; ++x) {
                int img = Q.left_div(x, Q.mul(s, x));
                if (!in[static_cast<size_t>(img)]) fresh.push_back(img);
            }
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    int yx = Q.mul(y, x);
                    int li = Q.left_div(yx, Q.mul(y, Q.mul(x, s)));
                    if (!in[static_cast<size_t>(li)]) fresh.push_back(li);
                    int xy = Q.mul(x, y);
                    int ri = Q.right_div(xy, Q.mul(Q.mul(s, x), y));
                    if (!in[static_cast<size_t>(ri)]) fresh.push_back(ri);
                }
        }
        if (fresh.empty()) break;
        for (int v : fresh) add(v);
    }
    Subloop s;
    s.members = std::move(members);
    s.is_normal = true;
    return s;
}

std::optional<int> element_order(const FiniteLoop& Q, int x) {
    int cur = x;
    for (int m = 1; m <= Q.order(); ++m) {
        if (cur == Q.identity()) return m;
        cur = Q.mul(cur, x);
    }
    return std::nullopt;
}

LoopInvariants loop_invariants(const FiniteLoop& Q) {
    const int n = Q.order();
    LoopInvariants inv;

    inv.is_commutative = true;
    for (int x = 0; x < n && inv.is_commutative; ++x)
        for (int y = x + 1; y < n; ++y)
            if (Q.mul(x, y) != Q.mul(y, x)) {
                inv.is_commutative = false;
                break;
            }

    inv.is_group = true;
    for (int x = 0; x < n && inv.is_group; ++x)
        for (int y = 0; y < n && inv.is_group; ++y)
            for (int z = 0; z < n; ++z)
                if (Q.mul(Q.mul(x, y), z) != Q.mul(x, Q.mul(y, z))) {
                    inv.is_group = false;
                    break;
                }

    // power-associativity: every single-generated subloop is associative
    inv.power_associative = true;
    if (!inv.is_group) {
        for (int x = 0; x < n && inv.power_associative; ++x) {
            Subloop s = subloop_generated(Q, {x});
            for (size_t i = 0; i < s.members.size() && inv.power_associative; ++i)
                for (size_t j = 0; j < s.members.size() && inv.power_associative; ++j)
                    for (size_t k = 0; k < s.members.size(); ++k) {
                        int a = s.members[i], b = s.members[j], c = s.members[k];
                        if (Q.mul(Q.mul(a, b), c) != Q.mul(a, Q.mul(b, c))) {
                            inv.power_associative = false;
                            break;
                        }
                    }
        }
    }

    if (inv.power_associative) {
        inv.element_orders.resize(static_cast<size_t>(n));
        long long exp = 1;
        for (int x = 0; x < n; ++x) {
            auto ord = element_order(Q, x);
            inv.element_orders[static_cast<size_t>(x)] = ord ? *ord : 0;
            if (ord) exp = std::lcm(exp, static_cast<long long>(*ord));
        }
        inv.exponent = static_cast<int>(exp);
    }

    for (int x = 0; x < n; ++x) {
        bool central = true;
        for (int y = 0; y < n && central; ++y) {
            if (Q.mul(x, y) != Q.mul(y, x)) {
                central = false;
                break;
            }
            for (int z = 0; z < n; ++z) {
                if (associator(Q, x, y, z) != Q.identity() || associator(Q, y, x, z) != Q.identity() ||
                    associator(Q, y, z, x) != Q.identity()) {
                    central = false;
                    break;
                }
            }
        }
        if (central) inv.center.push_back(x);
    }
    return inv;
}

PermClosure close_permutations(const std::vector<Perm>& gens, size_t budget) {
    PermClosure out;
    if (gens.empty()) return out;
    std::set<Perm> seen;
    std::vector<Perm> work;
    auto add = [&](const Perm& p) -> bool {
        if (seen.count(p)) return true;
        if (seen.size() >= budget) {
            out.truncated = true;
            return false;
        }
        seen.insert(p);
        work.push_back(p);
        out.elements.push_back(p);
        return true;
    };
    add(perm_identity(static_cast<int>(gens[0].size())));
    for (const auto& g : gens)
        if (!add(g)) return out;
    size_t head = 0;
    while (head < work.size()) {
        Perm cur = work[head++];
        for (const auto& g : gens)
            if (!add(perm_compose(cur, g))) return out;
    }
    return out;
}

} // namespace autoloop
