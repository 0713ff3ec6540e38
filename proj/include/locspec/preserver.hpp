#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "locspec/lemma_engine.hpp"
#include "locspec/local_spectral.hpp"

namespace locspec {

/// Exact proportionality scan: λ ≠ 0 with b = λa, from the first nonzero
/// entry of a.
inline std::optional<Scalar> exact_proportion(const Mat& a, const Mat& b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) {
                Scalar lambda = b(i, j) / a(i, j);
                if (!lambda.is_zero() && b == lambda * a) return lambda;
                return std::nullopt;
            }
    return std::nullopt;
}

namespace detail {

inline std::string matrix_key(const Mat& m) {
    std::string s;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            s += render_scalar(m(i, j));
            s += ';';
        }
    return s;
}

}  // namespace detail

/// Structured map families the harness can verify or falsify.
struct MapModel {
    enum class Kind { Scaling, Similarity, Transpose, NilpotentShift, Composite };
    Kind kind = Kind::Scaling;
    int dim = 0;
    uint64_t gamma_seed = 0;            // Scaling: per-operator nonzero scalar
    Mat u, u_inv;                       // Similarity: T ↦ U T U⁻¹
    Mat shift;                          // NilpotentShift: T ↦ T + N on a subset
    uint64_t subset_seed = 0;
    std::vector<MapModel> parts;        // Composite, applied left to right

    static MapModel scaling(int dim, uint64_t gamma_seed) {
        MapModel m;
        m.kind = Kind::Scaling;
        m.dim = dim;
        m.gamma_seed = gamma_seed;
        return m;
    }
    static MapModel identity_scaling(int dim) {
        // gamma ≡ 1 is the Scaling map with a degenerate assignment
        MapModel m = scaling(dim, 0);
        m.gamma_seed = UINT64_MAX;  // sentinel: always 1
        return m;
    }
    static MapModel similarity(const Mat& u) {
        MapModel m;
        m.kind = Kind::Similarity;
        m.dim = u.dim();
        m.u = u;
        m.u_inv = inverse(u);
        return m;
    }
    static MapModel transpose(int dim) {
        MapModel m;
        m.kind = Kind::Transpose;
        m.dim = dim;
        return m;
    }
    static MapModel nilpotent_shift(const Mat& n_shift, uint64_t subset_seed) {
        MapModel m;
        m.kind = Kind::NilpotentShift;
        m.dim = n_shift.dim();
        m.shift = n_shift;
        m.subset_seed = subset_seed;
        return m;
    }
    static MapModel composite(std::vector<MapModel> parts) {
        MapModel m;
        m.kind = Kind::Composite;
        m.dim = parts.at(0).dim;
        m.parts = std::move(parts);
        return m;
    }

    /// γ(T): a fixed nonzero scalar per operator, derived from the operator's
    /// exact entries and the model seed.
    Scalar gamma(const Mat& t) const {
        if (gamma_seed == UINT64_MAX) return Scalar(1);
        uint64_t h = std::hash<std::string>{}(detail::matrix_key(t));
        Rng r(h ^ gamma_seed);
        return random_nonzero_scalar(r);
    }

    Mat apply(const Mat& t) const {
        switch (kind) {
            case Kind::Scaling:
                return gamma(t) * t;
            case Kind::Similarity:
                return u * t * u_inv;
            case Kind::Transpose:
                return t.transpose();
            case Kind::NilpotentShift: {
                uint64_t h = std::hash<std::string>{}(detail::matrix_key(t));
                if (((h ^ subset_seed) & 1u) == 0) return t + shift;
                return t;
            }
            case Kind::Composite: {
                Mat r = t;
                for (const auto& p : parts) r = p.apply(r);
                return r;
            }
        }
        throw std::logic_error("MapModel: bad kind");
    }
};

/// Theorem criterion at one pair: K(φ(T)φ(S)+φ(S)φ(T)) = K(TS+ST), exactly.
inline bool check_pair(const MapModel& phi, const Mat& t, const Mat& s) {
    return analytic_core(jordan_product(phi.apply(t), phi.apply(s))) ==
           analytic_core(jordan_product(t, s));
}

struct ForwardReport {
    int trials = 0;
    int failures = 0;
    bool pass() const { return failures == 0; }
};

/// Scaling maps satisfy the criterion identically; this samples and checks.
inline ForwardReport verify_forward(const MapModel& phi, int trials, uint64_t seed) {
    if (phi.kind != MapModel::Kind::Scaling) throw std::invalid_argument("verify_forward: Scaling map expected");
    Rng rng(seed);
    ForwardReport rep;
    for (int i = 0; i < trials; ++i) {
        Mat t = random_matrix(rng, phi.dim);
        Mat s = random_matrix(rng, phi.dim);
        ++rep.trials;
        if (!check_pair(phi, t, s)) ++rep.failures;
    }
    return rep;
}

struct PairCounterexample {
    Mat t, s;
    Mat phi_t, phi_s;  // images at the time of discovery, for bit-exact replay
};

inline bool verify_pair_counterexample(const PairCounterexample& c) {
    return analytic_core(jordan_product(c.phi_t, c.phi_s)) != analytic_core(jordan_product(c.t, c.s));
}

struct FalsifyOutcome {
    std::optional<PairCounterexample> counterexample;
    int attempts = 0;  // pairs examined (budget actually used)
};

/// Search order: rank-one probes (the criterion is most sensitive there),
/// zero/identity structured pairs, then seeded random pairs. Every hit is
/// re-verified before being returned.
inline FalsifyOutcome falsify_map(const MapModel& phi, int budget, uint64_t seed) {
    int n = phi.dim;
    Rng rng(seed);
    FalsifyOutcome out;
    auto try_pair = [&](const Mat& t, const Mat& s) -> bool {
        ++out.attempts;
        if (!check_pair(phi, t, s)) {
            PairCounterexample c{t, s, phi.apply(t), phi.apply(s)};
            if (verify_pair_counterexample(c)) {
                out.counterexample = std::move(c);
                return true;
            }
        }
        return false;
    };

    // rank-one probes against structured partners
    std::vector<Mat> partners = {Mat::identity(n), Mat::zero(n)};
    for (int k = 0; k < 4; ++k) partners.push_back(random_matrix(rng, n));
    for (const Vec& x : probe_vectors(n, rng, 4)) {
        for (const Vec& fv : probe_vectors(n, rng, 2)) {
            Mat f = rank_one(x, Functional{fv});
            for (const Mat& p : partners) {
                if (out.attempts >= budget) return out;
                if (try_pair(f, p)) return out;
            }
        }
    }
    // structured pairs
    std::vector<Mat> structured = {Mat::zero(n), Mat::identity(n)};
    for (int i = 0; i < n && static_cast<int>(structured.size()) < 8; ++i) {
        Mat e(n, n);
        e(i, (i + 1) % n) = Scalar(1);
        structured.push_back(e);
    }
    for (const Mat& t : structured)
        for (const Mat& s : structured) {
            if (out.attempts >= budget) return out;
            if (try_pair(t, s)) return out;
        }
    // seeded random pairs
    while (out.attempts < budget) {
        Mat t = random_matrix(rng, n);
        Mat s = random_matrix(rng, n);
        if (try_pair(t, s)) return out;
    }
    return out;
}

/// Black-box diagnostics: zero-fixing, rank-one preservation both ways,
/// per-rank-one scalars, global proportionality.
struct StepReport {
    bool step1_zero_fixed = false;
    int step1_nonzero_tested = 0;
    int step1_violations = 0;

    int step2_tested = 0;
    int step2_violations = 0;

    struct RankOneScalar {
        Mat f;
        std::optional<Scalar> lambda;  // nullopt = violation (φ(F) not ∝ F)
    };
    std::vector<RankOneScalar> step3_scalars;
    int step3_violations = 0;

    bool step4_proportional = false;
    int step4_tested = 0;
    int step4_violations = 0;

    std::vector<PairCounterexample> counterexamples;

    bool all_pass() const {
        return step1_zero_fixed && step1_violations == 0 && step2_violations == 0 && step3_violations == 0 &&
               step4_proportional && counterexamples.empty();
    }
};

inline StepReport replay_theorem_steps(const std::function<Mat(const Mat&)>& phi, int dim, int budget,
                                       uint64_t seed) {
    Rng rng(seed);
    StepReport rep;
    int n = dim;

    // Step 1: φ(R) = 0 iff R = 0
    rep.step1_zero_fixed = phi(Mat::zero(n)).is_zero();
    for (int i = 0; i < std::max(4, budget / 50); ++i) {
        Mat r = random_matrix(rng, n);
        if (r.is_zero()) continue;
        ++rep.step1_nonzero_tested;
        if (phi(r).is_zero()) ++rep.step1_violations;
    }

    // Step 2: rank-one preserved both ways
    for (int i = 0; i < std::max(8, budget / 25); ++i) {
        Mat f = random_rank_one(rng, n);
        ++rep.step2_tested;
        if (rank(phi(f)) != 1) ++rep.step2_violations;
        Mat t = random_matrix(rng, n);
        if (rank(t) > 1) {
            ++rep.step2_tested;
            if (rank(phi(t)) == 1) ++rep.step2_violations;
        }
    }

    // Step 3: φ(F) = λ_F F for rank-one F; idempotent-type (f(x)=1),
    // nilpotent-type (f(x)=0) and generic probes.
    auto probe_step3 = [&](const Vec& x, const Functional& f) {
        Mat fmat = rank_one(x, f);
        if (fmat.is_zero()) return;
        auto lambda = exact_proportion(fmat, phi(fmat));
        rep.step3_scalars.push_back({fmat, lambda});
        if (!lambda) ++rep.step3_violations;
    };
    for (int i = 0; i < std::max(4, budget / 100); ++i) {
        Vec x = random_nonzero_vector(rng, n);
        // nilpotent-type: f(x) = 0 with f ≠ 0
        Vec other = random_nonzero_vector(rng, n);
        if (rank(Mat::from_cols({x, other})) == 2) {
            probe_step3(x, solve_functional({{x, Scalar(0)}, {other, Scalar(1)}}));
        }
        // idempotent-type: f(x) = 1
        probe_step3(x, solve_functional({{x, Scalar(1)}}));
        // generic: f(x) = random nonzero, not 1
        probe_step3(x, solve_functional({{x, random_nonzero_scalar(rng) + Scalar(2)}}));
    }

    // Step 4: φ(T) = γ(T) T globally
    rep.step4_proportional = true;
    for (int i = 0; i < std::max(8, budget / 25); ++i) {
        Mat t = random_matrix(rng, n);
        if (t.is_zero()) continue;
        ++rep.step4_tested;
        if (!exact_proportion(t, phi(t))) {
            ++rep.step4_violations;
            rep.step4_proportional = false;
        }
    }

    // record a few criterion counterexamples for the report
    for (int i = 0; i < std::max(8, budget / 25) && rep.counterexamples.size() < 3; ++i) {
        Mat t = random_matrix(rng, n);
        Mat s = random_matrix(rng, n);
        Mat pt = phi(t), ps = phi(s);
        if (analytic_core(jordan_product(pt, ps)) != analytic_core(jordan_product(t, s))) {
            PairCounterexample c{t, s, pt, ps};
            if (verify_pair_counterexample(c)) rep.counterexamples.push_back(std::move(c));
        }
    }
    return rep;
}

/// Corollary criterion: i_{φ(T)φ(S)+φ(S)φ(T)}(x) = 0 ⟺ i_{TS+ST}(x) = 0,
/// realized with the exact izero backend and cross-checked against the
/// subspace criterion.
struct CorollaryReport {
    int trials = 0;
    int mismatches = 0;
    int crosscheck_inconsistencies = 0;
    std::optional<PairCounterexample> first_mismatch;
    bool pass() const { return mismatches == 0 && crosscheck_inconsistencies == 0; }
};

inline CorollaryReport corollary_check(const MapModel& phi, int trials, uint64_t seed) {
    Rng rng(seed);
    CorollaryReport rep;
    int n = phi.dim;
    for (int i = 0; i < trials; ++i) {
        // mix in rank-one and identity operators: dense random pairs give an
        // invertible Jordan product almost surely, where i_.(x) = 0 never
        // holds and the equivalence is vacuous
        Mat t = (i % 3 == 0) ? random_rank_one(rng, n) : random_matrix(rng, n);
        Mat s = (i % 4 == 0) ? Mat::identity(n) : random_matrix(rng, n);
        Mat pt = phi.apply(t), ps = phi.apply(s);
        Mat j = jordan_product(t, s);
        Mat pj = jordan_product(pt, ps);
        Subspace kj = analytic_core(j), kpj = analytic_core(pj);
        // a uniformly random x misses every proper subspace, which would make
        // the equivalence vacuous; draw from the cores half the time
        Vec x;
        const Subspace& pick = (i % 4 < 2) ? kj : kpj;
        if (i % 2 == 0 && pick.dim() > 0) {
            x = zero_vec(n);
            for (int c = 0; c < pick.dim(); ++c) x = x + random_scalar(rng) * pick.basis_vector(c);
        } else {
            x = random_vector(rng, n);
        }
        ++rep.trials;
        bool lhs = !is_zero_vec(x) && !kpj.contains(x);
        bool rhs = !is_zero_vec(x) && !kj.contains(x);
        bool pair_ok = kj == kpj;
        if (lhs != rhs) {
            ++rep.mismatches;
            if (!rep.first_mismatch) rep.first_mismatch = PairCounterexample{t, s, pt, ps};
            // an izero mismatch at some x forces a core mismatch for the pair
            if (pair_ok) ++rep.crosscheck_inconsistencies;
        }
    }
    return rep;
}

}  // namespace locspec
