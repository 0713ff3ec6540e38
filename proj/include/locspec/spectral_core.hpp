#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "locspec/subspace.hpp"

namespace locspec {

/// TS + ST.
inline Mat jordan_product(const Mat& t, const Mat& s) {
    if (t.dim() != s.dim()) throw std::invalid_argument("jordan_product: dimension mismatch");
    return t * s + s * t;
}

/// x ⊗ f, the operator z ↦ f(z)·x.
inline Mat rank_one(const Vec& x, const Functional& f) {
    int n = static_cast<int>(x.size());
    if (static_cast<int>(f.coeffs.size()) != n) throw std::invalid_argument("rank_one: dimension mismatch");
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) m(i, j) = x[i] * f.coeffs[j];
    }
    return m;
}

/// Analytic core as the stabilized range: R(T^s) where s is the least k
/// with rank(T^k) = rank(T^{k+1}). This is the invertible part of the
/// Fitting decomposition; s <= dim always.
inline Subspace analytic_core(const Mat& t) {
    int n = t.dim();
    Mat p = t;
    int r_prev = rank(p);
    if (r_prev == n) return image_basis(p);  // invertible: already stabilized
    for (int k = 1; k <= n; ++k) {
        if (r_prev == 0) break;
        Mat next = p * t;
        int r_next = rank(next);
        if (r_next == r_prev) break;
        p = std::move(next);
        r_prev = r_next;
    }
    return image_basis(p);
}

inline bool core_membership(const Mat& t, const Vec& x) { return analytic_core(t).contains(x); }

/// N(T - λI).
inline Subspace eig_shift_kernel(const Mat& t, const Scalar& lambda) {
    Mat shifted = t - lambda * Mat::identity(t.dim());
    return kernel_basis(shifted);
}

/// Backward-orbit certificate: x_0 = x, T x_{k+1} = x_k, ‖x_k‖ ≤ δ^k ‖x_0‖.
struct CoreChainCertificate {
    Mat t;
    Vec x;
    double delta = 0.0;
    std::vector<Vec> chain;  // x_0 .. x_N
};

/// Exact chain equations plus the norm bound with relative slack.
inline bool verify_core_chain(const CoreChainCertificate& c, double rel_slack = 1e-12) {
    if (c.chain.empty() || c.chain[0] != c.x) return false;
    if (!(c.delta > 0.0)) return false;
    for (size_t k = 0; k + 1 < c.chain.size(); ++k)
        if (c.t * c.chain[k + 1] != c.chain[k]) return false;
    double n0 = vec_norm(c.chain[0]);
    double bound = n0;
    for (size_t k = 1; k < c.chain.size(); ++k) {
        bound *= c.delta;
        if (vec_norm(c.chain[k]) > bound * (1.0 + rel_slack)) return false;
    }
    return true;
}

/// Builds a length-N certificate by inverting T on its core: T maps K(T)
/// onto K(T), so the restriction has an exact inverse.
/// Throws std::domain_error when x is zero or outside K(T).
inline CoreChainCertificate core_chain_certificate(const Mat& t, const Vec& x, int n_steps) {
    if (is_zero_vec(x)) throw std::domain_error("core_chain_certificate: x must be nonzero");
    Subspace core = analytic_core(t);
    if (!core.contains(x)) throw std::domain_error("core_chain_certificate: x is not in the analytic core");
    int d = core.dim();

    // Restriction C of T to the core in the canonical basis B: T B = B C.
    Mat restriction(d, d);
    for (int j = 0; j < d; ++j) {
        auto coords = solve(core.basis(), t * core.basis_vector(j));
        if (!coords) throw std::logic_error("core_chain_certificate: core is not T-invariant");
        restriction.set_col(j, *coords);
    }
    Mat restriction_inv = inverse(restriction);

    auto x_coords = solve(core.basis(), x);
    if (!x_coords) throw std::logic_error("core_chain_certificate: membership/solve disagreement");

    CoreChainCertificate cert;
    cert.t = t;
    cert.x = x;
    cert.chain.reserve(n_steps + 1);
    Vec y = *x_coords;
    cert.chain.push_back(x);
    for (int k = 0; k < n_steps; ++k) {
        y = restriction_inv * y;
        Vec xk(t.dim());
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < t.dim(); ++i) xk[i] += core.basis()(i, j) * y[j];
        cert.chain.push_back(std::move(xk));
    }
    // δ = max successive norm ratio; the bound then holds along the chain.
    double delta = 0.0;
    for (size_t k = 0; k + 1 < cert.chain.size(); ++k) {
        double a = vec_norm(cert.chain[k]);
        double b = vec_norm(cert.chain[k + 1]);
        if (a > 0.0) delta = std::max(delta, b / a);
    }
    cert.delta = delta > 0.0 ? delta : 1.0;
    return cert;
}

}  // namespace locspec
