#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "locspec/scalar.hpp"

namespace locspec {

using Scalar = GaussianRational;
using Vec = std::vector<Scalar>;

/// Dense exact matrix, row-major. Square for operators, rectangular for
/// the internal echelon machinery.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
        return m;
    }
    static Mat zero(int n) { return Mat(n, n); }

    static Mat from_rows(const std::vector<Vec>& rows) {
        if (rows.empty()) return Mat();
        Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows(); ++i) {
            if (static_cast<int>(rows[i].size()) != m.cols()) throw std::invalid_argument("ragged rows");
            for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Mat from_cols(const std::vector<Vec>& cols) {
        if (cols.empty()) return Mat();
        Mat m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols(); ++j) {
            if (static_cast<int>(cols[j].size()) != m.rows()) throw std::invalid_argument("ragged columns");
            for (int i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    int dim() const {
        if (!is_square()) throw std::logic_error("dim() on non-square matrix");
        return rows_;
    }

    Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Vec col(int j) const {
        Vec v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vec row(int i) const {
        Vec v(cols_);
        for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const Vec& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat& operator+=(const Mat& o) {
        check_same_shape(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same_shape(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const Scalar& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Scalar& s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        Mat c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (b(k, j).is_zero()) continue;
                    c(i, j) += aik * b(k, j);
                }
            }
        return c;
    }

    friend Vec operator*(const Mat& a, const Vec& v) {
        if (a.cols_ != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector product: dimension mismatch");
        Vec r(a.rows_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j)
                if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
        return r;
    }

  private:
    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }
    int rows_, cols_;
    std::vector<Scalar> a_;
};

inline Vec zero_vec(int n) { return Vec(n); }

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline Vec unit_vec(int n, int k) {
    Vec v(n);
    v[k] = Scalar(1);
    return v;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector sum: size mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector difference: size mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator*(const Scalar& s, const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

/// Row functional on C^n; acts on column vectors by f(x) = sum f_i x_i.
struct Functional {
    Vec coeffs;
    Scalar operator()(const Vec& x) const {
        if (x.size() != coeffs.size()) throw std::invalid_argument("functional: dimension mismatch");
        Scalar s;
        for (size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * x[i];
        return s;
    }
};

struct RrefResult {
    Mat reduced;
    std::vector<int> pivots;  // pivot column indices, increasing
};

/// Exact reduced row echelon form. Pivot choice: leftmost nonzero column,
/// topmost nonzero entry (no magnitude heuristics).
inline RrefResult rref(Mat m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Scalar inv = m(r, c).inverse();
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline int rank(const Mat& m) { return static_cast<int>(rref(m).pivots.size()); }

/// Kernel basis vectors (columns of m mapped to zero), from the rref free
/// columns. Not canonicalized; Subspace construction canonicalizes.
inline std::vector<Vec> kernel_vectors(const Mat& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec v(m.cols());
        v[c] = Scalar(1);
        for (size_t r = 0; r < rr.pivots.size(); ++r) v[rr.pivots[r]] = -rr.reduced(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves A x = b exactly. Returns nullopt when inconsistent; free
/// coordinates are set to 0.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    if (a.rows() != static_cast<int>(b.size())) throw std::invalid_argument("solve: dimension mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    RrefResult rr = rref(aug);
    for (int p : rr.pivots)
        if (p == a.cols()) return std::nullopt;
    Vec x(a.cols());
    for (size_t r = 0; r < rr.pivots.size(); ++r) x[rr.pivots[r]] = rr.reduced(static_cast<int>(r), a.cols());
    return x;
}

/// Exact inverse; throws when singular.
inline Mat inverse(const Mat& m) {
    int n = m.dim();
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Scalar(1);
    }
    RrefResult rr = rref(aug);
    if (static_cast<int>(rr.pivots.size()) != n || rr.pivots.back() != n - 1)
        throw std::domain_error("inverse: singular matrix");
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
    return inv;
}

/// Finds the row functional with f(v_i) = c_i for all constraints; free
/// coordinates are 0 so the result is deterministic.
/// Throws std::domain_error when the system is infeasible.
inline Functional solve_functional(const std::vector<std::pair<Vec, Scalar>>& constraints) {
    if (constraints.empty()) throw std::invalid_argument("solve_functional: no constraints");
    int n = static_cast<int>(constraints[0].first.size());
    Mat a(static_cast<int>(constraints.size()), n);
    Vec b(constraints.size());
    for (size_t i = 0; i < constraints.size(); ++i) {
        if (static_cast<int>(constraints[i].first.size()) != n)
            throw std::invalid_argument("solve_functional: dimension mismatch");
        for (int j = 0; j < n; ++j) a(static_cast<int>(i), j) = constraints[i].first[j];
        b[i] = constraints[i].second;
    }
    auto x = solve(a, b);
    if (!x) throw std::domain_error("solve_functional: infeasible constraint system");
    return Functional{*x};
}

/// Euclidean norm via exact |.|^2 accumulation, rounded once at the end.
inline double vec_norm(const Vec& v) {
    mpq_class s(0);
    for (const auto& x : v) s += x.norm2();
    return std::sqrt(s.get_d());
}

inline Mat mat_pow(const Mat& m, int k) {
    Mat r = Mat::identity(m.dim());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

}  // namespace locspec
