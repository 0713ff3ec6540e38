#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "locspec/spectral_core.hpp"

namespace locspec {

struct NumericConfig {
    double eps_eig = 1e-8;   // absolute after spectral-radius normalization
    double eps_rank = 1e-9;  // relative
};

inline Eigen::MatrixXcd to_numeric(const Mat& m) {
    Eigen::MatrixXcd a(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j).to_complex();
    return a;
}

inline Eigen::VectorXcd to_numeric(const Vec& v) {
    Eigen::VectorXcd a(static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) a(static_cast<int>(i)) = v[i].to_complex();
    return a;
}

struct EigenCluster {
    std::complex<double> value;
    int algebraic_multiplicity;
    Eigen::MatrixXcd basis;  // n x multiplicity, orthonormal columns
};

struct EigenStructure {
    std::vector<EigenCluster> clusters;
    bool clustering_warning = false;  // eigenvalue gap in (eps, 2*eps)
    double eps_used = 0.0;
};

/// Eigenvalue clusters (single linkage at eps_eig, after normalizing by the
/// spectral-radius estimate) with generalized eigenspace bases from the SVD
/// of (T - λI)^m.
inline EigenStructure eigen_structure(const Mat& t, const NumericConfig& cfg = {}) {
    int n = t.dim();
    Eigen::MatrixXcd a = to_numeric(t);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, /*computeEigenvectors=*/false);
    Eigen::VectorXcd raw = es.eigenvalues();

    double rho = 0.0;
    for (int i = 0; i < n; ++i) rho = std::max(rho, std::abs(raw(i)));
    double eps = cfg.eps_eig * std::max(1.0, rho);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        if (raw(i).real() != raw(j).real()) return raw(i).real() < raw(j).real();
        return raw(i).imag() < raw(j).imag();
    });

    // single-linkage union-find
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(raw(i) - raw(j)) <= eps) parent[find(i)] = find(j);

    std::vector<std::vector<int>> groups;
    std::vector<int> root_of(n, -1);
    for (int idx : order) {
        int r = find(idx);
        if (root_of[r] < 0) {
            root_of[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[root_of[r]].push_back(idx);
    }

    EigenStructure result;
    result.eps_used = eps;
    for (const auto& g : groups) {
        EigenCluster c;
        std::complex<double> mean(0, 0);
        for (int idx : g) mean += raw(idx);
        mean /= static_cast<double>(g.size());
        c.value = mean;
        c.algebraic_multiplicity = static_cast<int>(g.size());
        int m = c.algebraic_multiplicity;
        Eigen::MatrixXcd shifted = a - mean * Eigen::MatrixXcd::Identity(n, n);
        Eigen::MatrixXcd powered = Eigen::MatrixXcd::Identity(n, n);
        for (int k = 0; k < std::min(m, n); ++k) powered *= shifted;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(powered, Eigen::ComputeFullV);
        // the m right singular vectors with smallest singular values
        c.basis = svd.matrixV().rightCols(m);
        result.clusters.push_back(std::move(c));
    }

    // warning: two clusters separated by less than 2*eps (ambiguous merge zone)
    for (size_t i = 0; i < result.clusters.size() && !result.clustering_warning; ++i)
        for (size_t j = i + 1; j < result.clusters.size(); ++j) {
            double d = std::abs(result.clusters[i].value - result.clusters[j].value);
            if (d < 2 * eps) {
                result.clustering_warning = true;
                break;
            }
        }
    return result;
}

struct LocalSpectrum {
    std::vector<std::complex<double>> points;  // sorted by (re, im)
    bool warning = false;
};

/// σ_T(x): eigenvalue clusters where x has a nonnegligible generalized
/// eigenspace component. Empty for x = 0.
inline LocalSpectrum local_spectrum(const Mat& t, const Vec& x, const NumericConfig& cfg = {}) {
    LocalSpectrum ls;
    if (is_zero_vec(x)) return ls;
    EigenStructure st = eigen_structure(t, cfg);
    ls.warning = st.clustering_warning;
    int n = t.dim();
    Eigen::MatrixXcd p(n, n);
    int col = 0;
    for (const auto& c : st.clusters) {
        p.middleCols(col, c.algebraic_multiplicity) = c.basis;
        col += c.algebraic_multiplicity;
    }
    Eigen::VectorXcd xv = to_numeric(x);
    Eigen::VectorXcd coords = p.fullPivLu().solve(xv);
    double xnorm = xv.norm();
    col = 0;
    for (const auto& c : st.clusters) {
        double comp = (c.basis * coords.segment(col, c.algebraic_multiplicity)).norm();
        if (comp > cfg.eps_rank * xnorm) ls.points.push_back(c.value);
        col += c.algebraic_multiplicity;
    }
    std::sort(ls.points.begin(), ls.points.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ls;
}

/// r_T(x) as max modulus of the local spectrum; 0 when empty.
inline double local_spectral_radius_direct(const Mat& t, const Vec& x, const NumericConfig& cfg = {}) {
    double r = 0.0;
    for (auto l : local_spectrum(t, x, cfg).points) r = std::max(r, std::abs(l));
    return r;
}

/// limsup ‖T^k x‖^{1/k} surrogate from the tail of the norm sequence:
/// max over the last 25% of iterations of the geometric growth rate
/// (‖T^k x‖ / ‖T^m x‖)^{1/(k-m)} measured from the window start m. The
/// ratio form cancels the constant in ‖T^k x‖ ~ c·r^k, so the estimate
/// settles well inside 200 iterations. Per-step rescaling avoids overflow;
/// the estimate is scale-invariant in x.
inline double local_spectral_radius_power(const Mat& t, const Vec& x, int n_iters, const NumericConfig& cfg = {}) {
    (void)cfg;
    if (n_iters < 1) throw std::invalid_argument("local_spectral_radius_power: n_iters >= 1 required");
    Eigen::VectorXcd y = to_numeric(x);
    double ynorm = y.norm();
    if (ynorm == 0.0) return 0.0;
    y /= ynorm;
    Eigen::MatrixXcd a = to_numeric(t);
    int tail_start = n_iters - std::max(1, n_iters / 4);
    double log_acc = 0.0;
    double log_at_tail = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n_iters; ++k) {
        y = a * y;
        double r = y.norm();
        if (r == 0.0) return 0.0;  // nilpotent direction: the sequence is exactly 0
        log_acc += std::log(r);
        y /= r;
        if (k == tail_start) log_at_tail = log_acc;
        if (k > tail_start) best = std::max(best, std::exp((log_acc - log_at_tail) / (k - tail_start)));
    }
    return best;
}

/// i_T(x) as min modulus of the local spectrum; +inf for x = 0.
inline double inner_local_spectral_radius(const Mat& t, const Vec& x, const NumericConfig& cfg = {}) {
    if (is_zero_vec(x)) return std::numeric_limits<double>::infinity();
    LocalSpectrum ls = local_spectrum(t, x, cfg);
    double r = std::numeric_limits<double>::infinity();
    for (auto l : ls.points) r = std::min(r, std::abs(l));
    return r;
}

/// Exact-backend test for i_T(x) = 0: true iff x ≠ 0 and x ∉ K(T).
/// Uses only exact arithmetic.
inline bool izero(const Mat& t, const Vec& x) {
    if (is_zero_vec(x)) return false;
    return !core_membership(t, x);
}

struct NumericSubspace {
    Eigen::MatrixXcd basis;  // n x d, orthonormal columns
    bool boundary_warning = false;
};

/// Span of the generalized eigenspaces with |λ| >= r.
inline NumericSubspace glocal_outside_disc(const Mat& t, double r, const NumericConfig& cfg = {}) {
    EigenStructure st = eigen_structure(t, cfg);
    int n = t.dim();
    NumericSubspace out;
    std::vector<Eigen::MatrixXcd> picked;
    int total = 0;
    for (const auto& c : st.clusters) {
        double m = std::abs(c.value);
        if (std::abs(m - r) <= st.eps_used) out.boundary_warning = true;
        if (m >= r) {
            picked.push_back(c.basis);
            total += c.algebraic_multiplicity;
        }
    }
    Eigen::MatrixXcd stacked(n, total);
    int col = 0;
    for (const auto& b : picked) {
        stacked.middleCols(col, static_cast<int>(b.cols())) = b;
        col += static_cast<int>(b.cols());
    }
    if (total == 0) {
        out.basis = Eigen::MatrixXcd(n, 0);
        return out;
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(stacked);
    out.basis = Eigen::MatrixXcd(qr.householderQ()) .leftCols(total);
    return out;
}

/// Numeric containment of span(a) in span(b) within tolerance.
inline bool numeric_contained_in(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol = 1e-7) {
    if (a.cols() == 0) return true;
    if (b.cols() == 0) return false;
    // residual of projecting a's columns onto span(b) (b orthonormal)
    Eigen::MatrixXcd proj = b * (b.adjoint() * a);
    return (a - proj).norm() <= tol * std::max(1.0, a.norm());
}

}  // namespace locspec
