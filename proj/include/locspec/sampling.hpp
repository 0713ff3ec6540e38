#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "locspec/spectral_core.hpp"

namespace locspec {

/// Seeded generator with its own bounded-draw logic so streams are
/// reproducible independent of the standard library's distributions.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    /// Uniform integer in [lo, hi], inclusive.
    long range(long lo, long hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return lo + static_cast<long>(v % span);
    }

    bool coin() { return (eng_() & 1u) != 0; }

  private:
    std::mt19937_64 eng_;
};

/// Entry distribution used throughout: numerators in [-mag, mag],
/// denominators in [1, mag], independently for the real and imaginary parts.
inline Scalar random_scalar(Rng& rng, long mag = 5) {
    return Scalar(rng.range(-mag, mag), rng.range(1, mag), rng.range(-mag, mag), rng.range(1, mag));
}

inline Scalar random_nonzero_scalar(Rng& rng, long mag = 5) {
    for (;;) {
        Scalar s = random_scalar(rng, mag);
        if (!s.is_zero()) return s;
    }
}

inline Vec random_vector(Rng& rng, int n, long mag = 5) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = random_scalar(rng, mag);
    return v;
}

inline Vec random_nonzero_vector(Rng& rng, int n, long mag = 5) {
    for (;;) {
        Vec v = random_vector(rng, n, mag);
        if (!is_zero_vec(v)) return v;
    }
}

inline Mat random_matrix(Rng& rng, int n, long mag = 5) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = random_scalar(rng, mag);
    return m;
}

inline Mat random_invertible(Rng& rng, int n, long mag = 5) {
    for (;;) {
        Mat m = random_matrix(rng, n, mag);
        if (rank(m) == n) return m;
    }
}

/// Unit lower-triangular times unit upper-triangular with small integer
/// entries: exactly invertible, determinant 1, inverse stays small.
inline Mat random_unimodular(Rng& rng, int n, long mag = 2) {
    Mat l = Mat::identity(n), u = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i > j) l(i, j) = Scalar(rng.range(-mag, mag));
            if (i < j) u(i, j) = Scalar(rng.range(-mag, mag));
        }
    return l * u;
}

inline Mat random_rank_one(Rng& rng, int n, long mag = 5) {
    for (;;) {
        Vec x = random_nonzero_vector(rng, n, mag);
        Functional f{random_nonzero_vector(rng, n, mag)};
        Mat m = rank_one(x, f);
        if (!m.is_zero()) return m;
    }
}

/// Strictly upper triangular (hence nilpotent), optionally conjugated.
inline Mat random_nilpotent(Rng& rng, int n, bool conjugate = false, long mag = 3) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = Scalar(rng.range(-mag, mag));
    if (!conjugate) return m;
    Mat p = random_unimodular(rng, n);
    return p * m * inverse(p);
}

/// P · diag(eigenvalues) · P^{-1}; exact planted spectrum.
inline Mat planted_diagonalizable(Rng& rng, const std::vector<Scalar>& eigenvalues) {
    int n = static_cast<int>(eigenvalues.size());
    Mat d(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = eigenvalues[i];
    Mat p = random_unimodular(rng, n);
    return p * d * inverse(p);
}

/// Random matrix with the given exact rank, by product of full-rank factors.
inline Mat random_with_rank(Rng& rng, int n, int r, long mag = 3) {
    for (;;) {
        Mat b(n, r), c(r, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) b(i, j) = Scalar(rng.range(-mag, mag));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j) c(i, j) = Scalar(rng.range(-mag, mag));
        Mat bc(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < r; ++k)
                for (int j = 0; j < n; ++j) bc(i, j) += b(i, k) * c(k, j);
        if (rank(bc) == r) return bc;
    }
}

}  // namespace locspec
