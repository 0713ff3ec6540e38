#pragma once

#include <map>
#include <string>
#include <vector>

#include "locspec/io.hpp"
#include "locspec/local_spectral.hpp"

namespace locspec {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    Json details;
};

namespace detail {

/// T = P·U·P⁻¹ with U upper triangular: exact eigenvalues on the diagonal.
/// Guarantees at least one nonzero eigenvalue and returns one of them.
inline std::pair<Mat, Scalar> planted_triangular(Rng& rng, int n) {
    Mat u(n, n);
    Scalar planted;
    for (;;) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) u(i, j) = Scalar(rng.range(-2, 2), 1, rng.range(-1, 1), 1);
        }
        planted = Scalar();
        for (int i = 0; i < n; ++i)
            if (!u(i, i).is_zero()) {
                planted = u(i, i);
                break;
            }
        if (!planted.is_zero()) break;
    }
    Mat p = random_unimodular(rng, n);
    return {p * u * inverse(p), planted};
}

/// Diagonalizable T with pairwise-distinct moduli (so spectral gaps are
/// at least 1 and the power estimator has a clean dominant mode).
/// Returns the planted eigenvalues too.
inline std::pair<Mat, std::vector<Scalar>> planted_distinct_moduli(Rng& rng, int n, bool allow_zero) {
    std::vector<Scalar> eigs;
    for (int j = 0; j < n; ++j) {
        long m = j + 1;
        Scalar v;
        switch (rng.range(0, 3)) {
            case 0: v = Scalar(m); break;
            case 1: v = Scalar(-m); break;
            case 2: v = Scalar(mpq_class(0), mpq_class(m)); break;
            default: v = Scalar(mpq_class(0), mpq_class(-m)); break;
        }
        eigs.push_back(v);
    }
    if (allow_zero && rng.coin()) eigs[0] = Scalar(0);
    return {planted_diagonalizable(rng, eigs), eigs};
}

inline int dim_cycle(int i, int lo, int hi) { return lo + i % (hi - lo + 1); }

}  // namespace detail

// --- criterion 1: basic analytic-core laws ----------------------------------

inline CriterionResult criterion1(uint64_t seed) {
    Rng rng(seed + 1);
    int violations = 0;
    const int trials = 500;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 2, 7);
        auto [t, lambda] = detail::planted_triangular(rng, n);
        Subspace core = analytic_core(t);
        if (!core.contained_in(image_basis(t))) ++violations;                       // K(T) ⊆ R(T)
        Scalar mu = random_nonzero_scalar(rng);
        if (analytic_core(mu * t) != core) ++violations;                            // K(λT) = K(T)
        if (apply(t, core) != core) ++violations;                                   // T·K(T) = K(T)
        Mat nil = random_nilpotent(rng, n, /*conjugate=*/true);
        if (!analytic_core(nil).is_trivial()) ++violations;                         // K(nilpotent) = {0}
        if (!eig_shift_kernel(t, lambda).contained_in(core)) ++violations;          // N(T-λ) ⊆ K(T)
    }
    return {1, "core-laws", violations == 0, Json{{"trials", trials}, {"violations", violations}}};
}

// --- criterion 2: definitional chain certificates ----------------------------

inline CriterionResult criterion2(uint64_t seed) {
    Rng rng(seed + 2);
    int failures = 0;
    const int trials = 100;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 2, 7);
        int d = 1 + static_cast<int>(rng.range(0, n - 1));
        // invertible block ⊕ nilpotent block, conjugated: core = image of first d coords
        Mat block(n, n);
        Mat inv_block = random_invertible(rng, d, 3);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) block(r, c) = inv_block(r, c);
        for (int r = d; r < n; ++r)
            for (int c = r + 1; c < n; ++c) block(r, c) = Scalar(rng.range(-2, 2));
        Mat p = random_unimodular(rng, n);
        Mat t = p * block * inverse(p);
        Vec y(n);
        for (int k = 0; k < d; ++k) y[k] = random_scalar(rng, 3);
        if (is_zero_vec(y)) y[0] = Scalar(1);
        Vec x = p * y;
        try {
            CoreChainCertificate cert = core_chain_certificate(t, x, 6);
            if (!verify_core_chain(cert)) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    return {2, "core-chain-certificates", failures == 0, Json{{"trials", trials}, {"failures", failures}}};
}

// --- criterion 3: rank-one core criterion (both directions) ------------------

inline CriterionResult criterion3(uint64_t seed) {
    Rng rng(seed + 3);
    int forward_violations = 0;
    const int n_rank1 = 50, t_per_a = 100;
    for (int i = 0; i < n_rank1; ++i) {
        int n = detail::dim_cycle(i, 3, 6);
        Mat a = random_rank_one(rng, n);
        for (int j = 0; j < t_per_a; ++j) {
            Mat t = random_matrix(rng, n);
            if (analytic_core(jordan_product(t, a)).dim() > 2) ++forward_violations;
        }
    }
    const int n_converse = 50;
    int converse_failures = 0;
    std::map<std::string, int> case_counts;
    for (int i = 0; i < n_converse; ++i) {
        int n = detail::dim_cycle(i, 6, 8);
        int r = 2 + static_cast<int>(rng.range(0, n - 2));
        Mat a = random_with_rank(rng, n, r);
        try {
            CoreInflatingWitness w = construct_core_inflating_T(a, rng.next());
            if (analytic_core(jordan_product(w.t, a)).dim() < 3)
                ++converse_failures;
            else
                ++case_counts[w.case_label];
        } catch (const std::exception&) {
            ++converse_failures;
        }
    }
    Json cases = Json::object();
    for (const auto& [k, v] : case_counts) cases[k] = v;
    bool pass = forward_violations == 0 && converse_failures == 0;
    return {3, "rank-one-criterion", pass,
            Json{{"forward_pairs", n_rank1 * t_per_a},
                 {"forward_violations", forward_violations},
                 {"converse_trials", n_converse},
                 {"converse_failures", converse_failures},
                 {"case_distribution", cases}}};
}

// --- criterion 4: proportionality dichotomy ----------------------------------

inline CriterionResult criterion4(uint64_t seed) {
    Rng rng(seed + 4);
    int forward_violations = 0;
    const int n_prop = 50, f_per_pair = 100;
    for (int i = 0; i < n_prop; ++i) {
        int n = detail::dim_cycle(i, 3, 6);
        Mat a = random_matrix(rng, n);
        Scalar lambda = random_nonzero_scalar(rng);
        Mat b = lambda * a;
        for (int j = 0; j < f_per_pair; ++j) {
            Mat f = random_rank_one(rng, n);
            if (analytic_core(jordan_product(a, f)) != analytic_core(jordan_product(b, f))) ++forward_violations;
        }
    }
    const int n_nonprop = 50;
    int witnesses = 0, inconclusive = 0, bad_witness = 0;
    for (int i = 0; i < n_nonprop; ++i) {
        int n = detail::dim_cycle(i, 3, 6);
        Mat a, b;
        do {
            a = random_matrix(rng, n);
            b = random_matrix(rng, n);
        } while (a.is_zero() || b.is_zero() || exact_proportion(a, b).has_value());
        ProportionalityResult r = proportionality_test(a, b, 5000, rng.next());
        if (r.kind == ProportionalityResult::Kind::Witness) {
            if (cores_differ(a, b, r.witness_f) && rank(r.witness_f) <= 1)
                ++witnesses;
            else
                ++bad_witness;
        } else {
            ++inconclusive;
        }
    }
    bool pass = forward_violations == 0 && witnesses == n_nonprop;
    return {4, "proportionality-dichotomy", pass,
            Json{{"forward_pairs", n_prop * f_per_pair},
                 {"forward_violations", forward_violations},
                 {"nonproportional_trials", n_nonprop},
                 {"verified_witnesses", witnesses},
                 {"bad_witnesses", bad_witness},
                 {"inconclusive", inconclusive}}};
}

// --- criterion 5: affine combination recovery ---------------------------------

inline CriterionResult criterion5(uint64_t seed) {
    Rng rng(seed + 5);
    const int trials = 100;
    int planted_failures = 0;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 3, 6);
        Mat s;
        do {
            s = random_matrix(rng, n);
        } while (exact_proportion(Mat::identity(n), s).has_value() || s.is_zero());
        Scalar lambda = random_scalar(rng), mu = random_scalar(rng);
        Mat t = lambda * Mat::identity(n) + mu * s;
        AffineComboResult r = affine_combo_recover(t, s, rng.next());
        if (r.kind != AffineComboResult::Kind::Combo || r.lambda != lambda || r.mu != mu) ++planted_failures;
    }
    int witness_failures = 0;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 3, 6);
        Mat t, s;
        AffineComboResult r{AffineComboResult::Kind::Combo, {}, {}, {}};
        do {
            t = random_matrix(rng, n);
            s = random_matrix(rng, n);
            r = affine_combo_recover(t, s, rng.next());
        } while (r.kind == AffineComboResult::Kind::Combo);
        if (r.kind != AffineComboResult::Kind::Witness || !is_rank3_triple(r.witness, s, t)) ++witness_failures;
    }
    bool pass = planted_failures == 0 && witness_failures == 0;
    return {5, "affine-combo-recovery", pass,
            Json{{"planted_trials", trials},
                 {"planted_failures", planted_failures},
                 {"witness_trials", trials},
                 {"witness_failures", witness_failures}}};
}

// --- criterion 6: preserver harness -------------------------------------------

inline CriterionResult criterion6(uint64_t seed) {
    Rng rng(seed + 6);
    int scaling_failures = 0, scaling_trials = 0;
    for (int n = 3; n <= 6; ++n) {
        MapModel phi = MapModel::scaling(n, rng.next());
        ForwardReport rep = verify_forward(phi, 250, rng.next());
        scaling_trials += rep.trials;
        scaling_failures += rep.failures;
    }
    int corollary_mismatches = 0, corollary_trials = 0;
    for (int n = 3; n <= 4; ++n) {
        MapModel phi = MapModel::scaling(n, rng.next());
        CorollaryReport rep = corollary_check(phi, 250, rng.next());
        corollary_trials += rep.trials;
        corollary_mismatches += rep.mismatches + rep.crosscheck_inconsistencies;
    }
    Json falsified = Json::array();
    bool all_falsified = true;
    for (int n = 3; n <= 5; ++n) {
        FalsifyOutcome tr = falsify_map(MapModel::transpose(n), 2000, rng.next());
        Mat u;
        do {
            u = random_unimodular(rng, n);
        } while (exact_proportion(Mat::identity(n), u).has_value());
        FalsifyOutcome sim = falsify_map(MapModel::similarity(u), 2000, rng.next());
        bool ok = tr.counterexample.has_value() && sim.counterexample.has_value();
        all_falsified = all_falsified && ok;
        falsified.push_back(Json{{"dim", n},
                                 {"transpose_found", tr.counterexample.has_value()},
                                 {"transpose_attempts", tr.attempts},
                                 {"similarity_found", sim.counterexample.has_value()},
                                 {"similarity_attempts", sim.attempts}});
    }
    bool pass = scaling_failures == 0 && corollary_mismatches == 0 && all_falsified;
    return {6, "preserver-harness", pass,
            Json{{"scaling_trials", scaling_trials},
                 {"scaling_failures", scaling_failures},
                 {"corollary_trials", corollary_trials},
                 {"corollary_mismatches", corollary_mismatches},
                 {"falsification", falsified}}};
}

// --- criterion 7: exact/numeric cross-backend ----------------------------------

inline CriterionResult criterion7(uint64_t seed) {
    Rng rng(seed + 7);
    const int trials = 500;
    int membership_disagreements = 0, dim_disagreements = 0, radius_failures = 0, radius_checked = 0;
    NumericConfig cfg;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 2, 6);
        auto [t, eigs] = detail::planted_distinct_moduli(rng, n, /*allow_zero=*/true);
        Vec x = random_nonzero_vector(rng, n, 3);

        LocalSpectrum ls = local_spectrum(t, x, cfg);
        bool numeric_zero_in = false;
        for (auto l : ls.points)
            if (std::abs(l) <= 1e-6) numeric_zero_in = true;
        bool exact_member = core_membership(t, x);
        if (exact_member != !numeric_zero_in) ++membership_disagreements;

        EigenStructure st = eigen_structure(t, cfg);
        int numeric_nonzero_mult = 0;
        for (const auto& c : st.clusters)
            if (std::abs(c.value) > st.eps_used) numeric_nonzero_mult += c.algebraic_multiplicity;
        if (analytic_core(t).dim() != numeric_nonzero_mult) ++dim_disagreements;

        // radius agreement on instances where every eigencomponent is material
        if (static_cast<int>(ls.points.size()) == static_cast<int>(st.clusters.size())) {
            bool all_material = true;
            Eigen::VectorXcd xv = to_numeric(x);
            // re-derive component norms through the decomposition
            int total = 0;
            for (const auto& c : st.clusters) total += c.algebraic_multiplicity;
            Eigen::MatrixXcd p(n, total);
            int col = 0;
            for (const auto& c : st.clusters) {
                p.middleCols(col, c.algebraic_multiplicity) = c.basis;
                col += c.algebraic_multiplicity;
            }
            Eigen::VectorXcd coords = p.fullPivLu().solve(xv);
            col = 0;
            for (const auto& c : st.clusters) {
                if ((c.basis * coords.segment(col, c.algebraic_multiplicity)).norm() <= 1e-3 * xv.norm())
                    all_material = false;
                col += c.algebraic_multiplicity;
            }
            if (all_material) {
                ++radius_checked;
                double direct = local_spectral_radius_direct(t, x, cfg);
                double power = local_spectral_radius_power(t, x, 200, cfg);
                if (std::abs(direct - power) > 1e-3) ++radius_failures;
            }
        }
    }
    bool pass = membership_disagreements == 0 && dim_disagreements == 0 && radius_failures == 0;
    return {7, "cross-backend-consistency", pass,
            Json{{"trials", trials},
                 {"membership_disagreements", membership_disagreements},
                 {"core_dim_disagreements", dim_disagreements},
                 {"radius_checked", radius_checked},
                 {"radius_failures", radius_failures}}};
}

// --- orchestration --------------------------------------------------------------

inline std::vector<CriterionResult> run_criteria_1to7(uint64_t seed) {
    return {criterion1(seed), criterion2(seed), criterion3(seed), criterion4(seed),
            criterion5(seed), criterion6(seed), criterion7(seed)};
}

inline Json criteria_to_json(const std::vector<CriterionResult>& results) {
    Json arr = Json::array();
    for (const auto& r : results)
        arr.push_back(Json{{"criterion", r.index}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
    return arr;
}

/// Runs the full acceptance suite: criteria 1-7 once, then a second full
/// pass for the determinism criterion (byte-identical structured results).
inline std::vector<CriterionResult> run_selftest(uint64_t seed) {
    std::vector<CriterionResult> results = run_criteria_1to7(seed);
    std::string first = criteria_to_json(results).dump();
    std::string second = criteria_to_json(run_criteria_1to7(seed)).dump();
    bool deterministic = (first == second);
    results.push_back({8, "determinism", deterministic,
                       Json{{"bytes", first.size()}, {"identical", deterministic}}});
    return results;
}

// --- fuzz sweep: module invariants at configurable volume ------------------------

inline Json fuzz_sweep(uint64_t seed, int trials) {
    Rng rng(seed);
    Json out = Json::array();
    auto record = [&](const std::string& name, int run, int violations) {
        out.push_back(Json{{"invariant", name}, {"trials", run}, {"violations", violations}});
    };

    int v = 0;
    for (int i = 0; i < trials; ++i) {
        Mat m = random_matrix(rng, detail::dim_cycle(i, 2, 6));
        RrefResult r1 = rref(m);
        if (rref(r1.reduced).reduced != r1.reduced) ++v;
    }
    record("rref-idempotent", trials, v);

    v = 0;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 2, 6);
        Mat a = random_matrix(rng, n), b = random_matrix(rng, n);
        if (rank(a * b) > std::min(rank(a), rank(b))) ++v;
    }
    record("rank-submultiplicative", trials, v);

    v = 0;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 2, 6);
        Mat m = random_matrix(rng, n);
        if (!image_basis(m).contains(m * random_vector(rng, n))) ++v;
    }
    record("image-contains-mx", trials, v);

    v = 0;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 2, 6);
        std::vector<Vec> g1, g2;
        for (int k = 0; k <= static_cast<int>(rng.range(0, n)); ++k) g1.push_back(random_vector(rng, n));
        for (int k = 0; k <= static_cast<int>(rng.range(0, n)); ++k) g2.push_back(random_vector(rng, n));
        Subspace a = Subspace::span(n, g1), b = Subspace::span(n, g2);
        if (subspace_sum(a, b).dim() + subspace_intersect(a, b).dim() != a.dim() + b.dim()) ++v;
    }
    record("dim-sum-intersect", trials, v);

    v = 0;
    for (int i = 0; i < trials; ++i) {
        int n = detail::dim_cycle(i, 2, 6);
        auto [t, lambda] = detail::planted_triangular(rng, n);
        Subspace core = analytic_core(t);
        if (!core.contained_in(image_basis(t))) ++v;
        if (analytic_core(random_nonzero_scalar(rng) * t) != core) ++v;
        if (apply(t, core) != core) ++v;
        if (!eig_shift_kernel(t, lambda).contained_in(core)) ++v;
        if (!analytic_core(random_nilpotent(rng, n, true)).is_trivial()) ++v;
    }
    record("core-laws", trials, v);

    v = 0;
    for (int i = 0; i < std::max(1, trials / 5); ++i) {
        int n = detail::dim_cycle(i, 2, 5);
        auto [t, eigs] = detail::planted_distinct_moduli(rng, n, true);
        Vec x = random_nonzero_vector(rng, n, 3);
        bool exact = izero(t, x);
        double inner = inner_local_spectral_radius(t, x);
        if (exact != (inner < 1e-6)) ++v;
        // glocal monotonicity
        NumericSubspace g1 = glocal_outside_disc(t, 1.5);
        NumericSubspace g0 = glocal_outside_disc(t, 0.5);
        if (!numeric_contained_in(g1.basis, g0.basis)) ++v;
    }
    record("cross-backend-izero-glocal", std::max(1, trials / 5), v);

    return out;
}

}  // namespace locspec
