#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lgx/scalar.hpp"
#include "lgx/vector.hpp"

namespace lgx {

/// Dense square matrix over a field scalar, row major. Small dimensions
/// only; used for charts, oracles, and exact rational linear algebra.
template <class S>
struct Mat {
    std::size_t n = 0;
    std::vector<S> a;

    Mat() = default;
    Mat(std::size_t size, const S& fill) : n(size), a(size * size, fill) {}

    S& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    Vec<S> flatten() const { return Vec<S>(a); }
    static Mat from_vec(std::size_t size, const Vec<S>& v) {
        if (v.dim() != size * size) throw std::invalid_argument("Mat: bad vector size");
        Mat m;
        m.n = size;
        m.a = v.c;
        return m;
    }
};

template <class F>
Mat<typename F::scalar> mat_identity(const F& field, std::size_t n) {
    Mat<typename F::scalar> m(n, field.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
}

template <class S>
Mat<S> mat_add(const Mat<S>& x, const Mat<S>& y) {
    Mat<S> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
    return r;
}

template <class S>
Mat<S> mat_sub(const Mat<S>& x, const Mat<S>& y) {
    Mat<S> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
    return r;
}

template <class S>
Mat<S> mat_scale(const Mat<S>& x, const S& s) {
    Mat<S> r = x;
    for (auto& v : r.a) v = v * s;
    return r;
}

template <class S>
Mat<S> mat_mul(const Mat<S>& x, const Mat<S>& y) {
    if (x.n != y.n) throw std::invalid_argument("mat_mul: size mismatch");
    Mat<S> r(x.n, x.a.empty() ? S{} : x.a[0] - x.a[0]);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k)
            for (std::size_t j = 0; j < x.n; ++j)
                r(i, j) = r(i, j) + x(i, k) * y(k, j);
    return r;
}

/// Solve A X = B by Gaussian elimination with partial pivoting on |.|.
/// Exact over rational scalars, numerically pivoted over doubles.
template <class F>
Mat<typename F::scalar> mat_solve(const F& field, Mat<typename F::scalar> A,
                                  Mat<typename F::scalar> B) {
    using S = typename F::scalar;
    const std::size_t n = A.n;
    if (B.n != n) throw std::invalid_argument("mat_solve: size mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = field.abs(A(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = field.abs(A(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw std::domain_error("mat_solve: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(A(piv, j), A(col, j));
                std::swap(B(piv, j), B(col, j));
            }
        const S d = A(col, col);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const S f = A(r, col) / d;
            for (std::size_t j = 0; j < n; ++j) {
                A(r, j) = A(r, j) - f * A(col, j);
                B(r, j) = B(r, j) - f * B(col, j);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const S d = A(i, i);
        for (std::size_t j = 0; j < n; ++j) B(i, j) = B(i, j) / d;
    }
    return B;
}

template <class F>
Mat<typename F::scalar> mat_inv(const F& field, const Mat<typename F::scalar>& A) {
    return mat_solve(field, A, mat_identity(field, A.n));
}

/// Solve the square linear system V c = rhs (vector right-hand side).
template <class F>
std::vector<typename F::scalar> solve_system(const F& field,
                                             Mat<typename F::scalar> A,
                                             std::vector<typename F::scalar> b) {
    using S = typename F::scalar;
    const std::size_t n = A.n;
    if (b.size() != n) throw std::invalid_argument("solve_system: size mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = field.abs(A(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = field.abs(A(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw std::domain_error("solve_system: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const S f = A(r, col) / A(col, col);
            for (std::size_t j = col; j < n; ++j) A(r, j) = A(r, j) - f * A(col, j);
            b[r] = b[r] - f * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        S acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc = acc - A(i, j) * b[j];
        b[i] = acc / A(i, i);
    }
    return b;
}

inline double op_max_norm(const Mat<double>& m) {
    double v = 0.0;
    for (double x : m.a) v = std::max(v, std::fabs(x));
    return v;
}

/// exp via the power series, adaptive order until the term drops
/// below 1e-15 in max norm. Intended for matrices well inside the
/// matrix-log chart radius.
inline Mat<double> mat_exp(const Mat<double>& x) {
    RealField f;
    Mat<double> acc = mat_identity(f, x.n);
    Mat<double> term = mat_identity(f, x.n);
    for (int k = 1; k < 60; ++k) {
        term = mat_scale(mat_mul(term, x), 1.0 / k);
        acc = mat_add(acc, term);
        if (op_max_norm(term) < 1e-15) break;
    }
    return acc;
}

/// log(I + A) via the Mercator series, adaptive order as in mat_exp.
inline Mat<double> mat_log(const Mat<double>& m) {
    RealField f;
    const Mat<double> a = mat_sub(m, mat_identity(f, m.n));
    if (op_max_norm(a) > 0.9)
        throw std::domain_error("mat_log: outside series domain");
    Mat<double> acc(m.n, 0.0);
    Mat<double> pw = mat_identity(f, m.n);
    for (int k = 1; k < 120; ++k) {
        pw = mat_mul(pw, a);
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        const Mat<double> term = mat_scale(pw, sign / k);
        acc = mat_add(acc, term);
        if (op_max_norm(term) < 1e-15) break;
    }
    return acc;
}

} // namespace lgx
