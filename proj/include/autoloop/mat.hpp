#ifndef AUTOLOOP_MAT_HPP
#define AUTOLOOP_MAT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "autoloop/fp.hpp"

namespace autoloop {

/// 2x2 matrix over F_p, row-major entries reduced mod p.
struct Mat2 {
    std::int64_t e[4] = {0, 0, 0, 0};

    bool operator==(const Mat2& o) const {
        return e[0] == o.e[0] && e[1] == o.e[1] && e[2] == o.e[2] && e[3] == o.e[3];
    }
    bool operator!=(const Mat2& o) const { return !(*this == o); }
};

inline Mat2 mat2_make(const PrimeField& F, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return Mat2{{F.reduce(a), F.reduce(b), F.reduce(c), F.reduce(d)}};
}

inline Mat2 mat2_identity(const PrimeField& F) { return mat2_make(F, 1, 0, 0, 1); }

inline Mat2 mat2_add(const PrimeField& F, const Mat2& A, const Mat2& B) {
    Mat2 R;
    for (int i = 0; i < 4; ++i) R.e[i] = F.add(A.e[i], B.e[i]);
    return R;
}

inline Mat2 mat2_mul(const PrimeField& F, const Mat2& A, const Mat2& B) {
    Mat2 R;
    R.e[0] = F.add(F.mul(A.e[0], B.e[0]), F.mul(A.e[1], B.e[2]));
    R.e[1] = F.add(F.mul(A.e[0], B.e[1]), F.mul(A.e[1], B.e[3]));
    R.e[2] = F.add(F.mul(A.e[2], B.e[0]), F.mul(A.e[3], B.e[2]));
    R.e[3] = F.add(F.mul(A.e[2], B.e[1]), F.mul(A.e[3], B.e[3]));
    return R;
}

inline Mat2 mat2_scale(const PrimeField& F, const Mat2& A, std::int64_t s) {
    Mat2 R;
    s = F.reduce(s);
    for (int i = 0; i < 4; ++i) R.e[i] = F.mul(A.e[i], s);
    return R;
}

inline std::int64_t mat2_det(const PrimeField& F, const Mat2& A) {
    return F.sub(F.mul(A.e[0], A.e[3]), F.mul(A.e[1], A.e[2]));
}

inline std::int64_t mat2_trace(const PrimeField& F, const Mat2& A) {
    return F.add(A.e[0], A.e[3]);
}

/// A^{-1} = det(A)^{-1} (tr(A) I - A), from the characteristic equation.
inline Mat2 mat2_inv(const PrimeField& F, const Mat2& A) {
    std::int64_t det = mat2_det(F, A);
    if (det == 0) throw loop_error(errc::singular, "2x2 matrix has determinant 0");
    Mat2 adj = mat2_make(F, A.e[3], F.neg(A.e[1]), F.neg(A.e[2]), A.e[0]);
    return mat2_scale(F, adj, F.inv(det));
}

/// Dense n x n matrix over F_p, row-major. Acts on row vectors: v |-> v*A.
struct MatN {
    int n = 0;
    std::vector<std::int64_t> e;

    std::int64_t at(int r, int c) const { return e[static_cast<size_t>(r * n + c)]; }
    std::int64_t& at(int r, int c) { return e[static_cast<size_t>(r * n + c)]; }
    bool operator==(const MatN& o) const { return n == o.n && e == o.e; }
    bool operator!=(const MatN& o) const { return !(*this == o); }
    bool operator<(const MatN& o) const { return e < o.e; }
    bool is_zero() const {
        for (auto x : e)
            if (x != 0) return false;
        return true;
    }
};

inline MatN matn_zero(int n) {
    return MatN{n, std::vector<std::int64_t>(static_cast<size_t>(n * n), 0)};
}

inline MatN matn_identity(int n) {
    MatN I = matn_zero(n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

inline MatN matn_from_mat2(const Mat2& A) {
    MatN M = matn_zero(2);
    for (int i = 0; i < 4; ++i) M.e[static_cast<size_t>(i)] = A.e[i];
    return M;
}

inline MatN matn_add(const PrimeField& F, const MatN& A, const MatN& B) {
    MatN R = A;
    for (size_t i = 0; i < R.e.size(); ++i) R.e[i] = F.add(A.e[i], B.e[i]);
    return R;
}

inline MatN matn_sub(const PrimeField& F, const MatN& A, const MatN& B) {
    MatN R = A;
    for (size_t i = 0; i < R.e.size(); ++i) R.e[i] = F.sub(A.e[i], B.e[i]);
    return R;
}

inline MatN matn_neg(const PrimeField& F, const MatN& A) {
    MatN R = A;
    for (auto& x : R.e) x = F.neg(x);
    return R;
}

inline MatN matn_scale(const PrimeField& F, const MatN& A, std::int64_t s) {
    MatN R = A;
    s = F.reduce(s);
    for (auto& x : R.e) x = F.mul(x, s);
    return R;
}

inline MatN matn_mul(const PrimeField& F, const MatN& A, const MatN& B) {
    MatN R = matn_zero(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.n; ++k) {
            std::int64_t a = A.at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < A.n; ++j)
                R.at(i, j) = F.add(R.at(i, j), F.mul(a, B.at(k, j)));
        }
    return R;
}

/// Row vector times matrix.
inline std::vector<std::int64_t> matn_apply_row(const PrimeField& F, const std::vector<std::int64_t>& v, const MatN& A) {
    std::vector<std::int64_t> r(static_cast<size_t>(A.n), 0);
    for (int i = 0; i < A.n; ++i) {
        if (v[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < A.n; ++j)
            r[static_cast<size_t>(j)] = F.add(r[static_cast<size_t>(j)], F.mul(v[static_cast<size_t>(i)], A.at(i, j)));
    }
    return r;
}

/// Gauss-Jordan inverse mod p; throws Singular when no inverse exists.
inline MatN matn_inv(const PrimeField& F, MatN A) {
    const int n = A.n;
    MatN I = matn_identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (A.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw loop_error(errc::singular, "matrix is singular mod p");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(A.at(piv, j), A.at(col, j));
                std::swap(I.at(piv, j), I.at(col, j));
            }
        }
        std::int64_t pi = F.inv(A.at(col, col));
        for (int j = 0; j < n; ++j) {
            A.at(col, j) = F.mul(A.at(col, j), pi);
            I.at(col, j) = F.mul(I.at(col, j), pi);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || A.at(r, col) == 0) continue;
            std::int64_t f = A.at(r, col);
            for (int j = 0; j < n; ++j) {
                A.at(r, j) = F.sub(A.at(r, j), F.mul(f, A.at(col, j)));
                I.at(r, j) = F.sub(I.at(r, j), F.mul(f, I.at(col, j)));
            }
        }
    }
    return I;
}

inline bool matn_invertible(const PrimeField& F, const MatN& A) {
    try {
        matn_inv(F, A);
        return true;
    } catch (const loop_error&) {
        return false;
    }
}

inline std::string matn_to_string(const MatN& A) {
    std::string s = "[";
    for (int i = 0; i < A.n; ++i) {
        if (i) s += ";";
        for (int j = 0; j < A.n; ++j) {
            if (j) s += ",";
            s += std::to_string(A.at(i, j));
        }
    }
    return s + "]";
}

} // namespace autoloop

#endif
