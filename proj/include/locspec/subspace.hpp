#pragma once

#include <vector>

#include "locspec/linalg.hpp"

namespace locspec {

/// Subspace of C^n with a canonical basis: the columns are in reduced
/// column echelon form, so two subspaces are equal iff their basis grids
/// are identical entry for entry.
class Subspace {
  public:
    explicit Subspace(int ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

    /// Canonicalizes an arbitrary spanning set.
    static Subspace span(int ambient_dim, const std::vector<Vec>& spanning) {
        Subspace s(ambient_dim);
        if (spanning.empty()) return s;
        // reduced column echelon form = transpose of rref of the transpose
        Mat rows = Mat::from_cols(spanning).transpose();
        RrefResult rr = rref(rows);
        std::vector<Vec> cols;
        for (size_t r = 0; r < rr.pivots.size(); ++r) cols.push_back(rr.reduced.row(static_cast<int>(r)));
        s.basis_ = cols.empty() ? Mat(ambient_dim, 0) : Mat::from_cols(cols);
        return s;
    }

    static Subspace full(int ambient_dim) {
        std::vector<Vec> e;
        for (int k = 0; k < ambient_dim; ++k) e.push_back(unit_vec(ambient_dim, k));
        return span(ambient_dim, e);
    }

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }
    Vec basis_vector(int j) const { return basis_.col(j); }
    bool is_trivial() const { return dim() == 0; }

    bool contains(const Vec& x) const {
        if (static_cast<int>(x.size()) != ambient_) throw std::invalid_argument("contains: ambient dimension mismatch");
        if (is_zero_vec(x)) return true;
        if (dim() == 0) return false;
        return solve(basis_, x).has_value();
    }

    /// U <= V as sets.
    bool contained_in(const Subspace& other) const {
        check_ambient(other);
        for (int j = 0; j < dim(); ++j)
            if (!other.contains(basis_.col(j))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    friend Subspace subspace_sum(const Subspace& u, const Subspace& v) {
        u.check_ambient(v);
        std::vector<Vec> gens;
        for (int j = 0; j < u.dim(); ++j) gens.push_back(u.basis_.col(j));
        for (int j = 0; j < v.dim(); ++j) gens.push_back(v.basis_.col(j));
        return span(u.ambient_, gens);
    }

    /// Exact intersection via the kernel of the stacked system
    /// [B_u | B_v] c = 0: the B_u-part of each kernel vector spans U ∩ V.
    friend Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
        u.check_ambient(v);
        if (u.dim() == 0 || v.dim() == 0) return Subspace(u.ambient_);
        Mat stacked(u.ambient_, u.dim() + v.dim());
        for (int i = 0; i < u.ambient_; ++i) {
            for (int j = 0; j < u.dim(); ++j) stacked(i, j) = u.basis_(i, j);
            for (int j = 0; j < v.dim(); ++j) stacked(i, u.dim() + j) = v.basis_(i, j);
        }
        std::vector<Vec> gens;
        for (const Vec& k : kernel_vectors(stacked)) {
            Vec w(u.ambient_);
            for (int j = 0; j < u.dim(); ++j)
                for (int i = 0; i < u.ambient_; ++i) w[i] += u.basis_(i, j) * k[j];
            gens.push_back(std::move(w));
        }
        return span(u.ambient_, gens);
    }

    /// Image of the subspace under an operator.
    friend Subspace apply(const Mat& t, const Subspace& u) {
        std::vector<Vec> gens;
        for (int j = 0; j < u.dim(); ++j) gens.push_back(t * u.basis_.col(j));
        return span(u.ambient_, gens);
    }

  private:
    void check_ambient(const Subspace& o) const {
        if (ambient_ != o.ambient_) throw std::invalid_argument("subspace: ambient dimension mismatch");
    }
    int ambient_;
    Mat basis_;  // ambient_ x dim, reduced column echelon form
};

inline Subspace kernel_basis(const Mat& m) { return Subspace::span(m.cols(), kernel_vectors(m)); }

inline Subspace image_basis(const Mat& m) {
    std::vector<Vec> cols;
    for (int j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    return Subspace::span(m.rows(), cols);
}

}  // namespace locspec
