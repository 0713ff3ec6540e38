// locspec: exact local-spectral toolkit CLI.
//
// Exit codes: 0 verdict produced, 1 verified counterexample/violation found,
// 2 usage or parse error, 3 inconclusive (budget exhausted).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "locspec/io.hpp"
#include "locspec/selftest.hpp"

namespace {

using namespace locspec;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct Options {
    std::string in_path, in2_path, replay_path;
    std::string vec_arg;
    std::string map_name = "scaling";
    std::string mode;
    std::string backend = "both";
    std::string format = "text";
    uint64_t seed = 0;
    int dim = 4;
    int trials = 100;
    int budget = 2000;
    int chain = 0;
};

Mat load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str());
}

void emit(const Json& report, const Options& opt) {
    if (opt.format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    // text rendering of the structured report
    std::cout << "command: " << report["command"].get<std::string>() << "  (seed " << report["seed"] << ")\n";
    for (const auto& v : report["verdicts"]) std::cout << "  " << v.dump() << "\n";
    for (const auto& w : report["warnings"]) std::cout << "  warning: " << w.get<std::string>() << "\n";
    if (!report["certificates"].empty())
        std::cout << "  certificates: " << report["certificates"].size() << " (replayable via --replay)\n";
}

MapModel build_map(const std::string& name, int dim, uint64_t seed) {
    Rng rng(seed ^ 0x6c6f637370656360ULL);
    if (name == "scaling") return MapModel::scaling(dim, rng.next());
    if (name == "identity") return MapModel::identity_scaling(dim);
    if (name == "transpose") return MapModel::transpose(dim);
    if (name == "similarity") {
        Mat u;
        do {
            u = random_unimodular(rng, dim);
        } while (exact_proportion(Mat::identity(dim), u).has_value());
        return MapModel::similarity(u);
    }
    if (name == "nilpotent-shift") {
        Mat n;
        do {
            n = random_nilpotent(rng, dim);
        } while (n.is_zero());
        return MapModel::nilpotent_shift(n, rng.next());
    }
    throw ParseError("unknown map family: " + name);
}

int cmd_core(const Options& opt) {
    Mat t = load_matrix(opt.in_path);
    Json report = make_report("core", opt.seed, Json{{"in", opt.in_path}, {"chain", opt.chain}});
    Subspace core = analytic_core(t);
    report["verdicts"].push_back(Json{{"core_dim", core.dim()}, {"ambient_dim", core.ambient_dim()}});
    Json basis = Json::array();
    for (int j = 0; j < core.dim(); ++j) basis.push_back(vec_to_json(core.basis_vector(j)));
    report["verdicts"].back()["core_basis"] = basis;
    if (!opt.vec_arg.empty()) {
        Vec x = parse_vector_arg(opt.vec_arg);
        bool member = core.contains(x);
        report["verdicts"].push_back(Json{{"core_membership", member}});
        if (opt.chain > 0 && member && !is_zero_vec(x)) {
            CoreChainCertificate cert = core_chain_certificate(t, x, opt.chain);
            report["certificates"].push_back(certificate_core_chain(cert));
        }
    }
    emit(report, opt);
    return kExitOk;
}

int cmd_jordan(const Options& opt) {
    Mat t = load_matrix(opt.in_path);
    Mat s = load_matrix(opt.in2_path);
    Json report = make_report("jordan", opt.seed, Json{{"in", opt.in_path}, {"in2", opt.in2_path}});
    Mat j = jordan_product(t, s);
    Subspace core = analytic_core(j);
    report["verdicts"].push_back(
        Json{{"jordan_product", matrix_to_json(j)}, {"core_dim", core.dim()}, {"rank", rank(j)}});
    emit(report, opt);
    return kExitOk;
}

int cmd_locspec(const Options& opt) {
    Mat t = load_matrix(opt.in_path);
    Vec x = parse_vector_arg(opt.vec_arg);
    if (static_cast<int>(x.size()) != t.dim()) throw ParseError("--vec length does not match matrix dim");
    Json report = make_report("locspec", opt.seed, Json{{"in", opt.in_path}, {"backend", opt.backend}});
    if (opt.backend == "exact" || opt.backend == "both") {
        report["verdicts"].push_back(Json{{"backend", "exact"},
                                          {"core_membership", core_membership(t, x)},
                                          {"izero", izero(t, x)}});
    }
    if (opt.backend == "float" || opt.backend == "both") {
        LocalSpectrum ls = local_spectrum(t, x);
        Json pts = Json::array();
        for (auto l : ls.points) pts.push_back(Json{{"re", l.real()}, {"im", l.imag()}});
        double inner = inner_local_spectral_radius(t, x);
        Json v{{"backend", "float"},
               {"local_spectrum", pts},
               {"radius_direct", local_spectral_radius_direct(t, x)},
               {"radius_power_200", local_spectral_radius_power(t, x, 200)},
               {"inner_radius", std::isinf(inner) ? Json("inf") : Json(inner)}};
        report["verdicts"].push_back(v);
        if (ls.warning) report["warnings"].push_back("eigenvalue clustering is ambiguous at the configured tolerance");
    }
    emit(report, opt);
    return kExitOk;
}

int cmd_rank1(const Options& opt) {
    Mat a = load_matrix(opt.in_path);
    Json report = make_report("rank1", opt.seed, Json{{"in", opt.in_path}, {"trials", opt.trials}});
    RankOneVerdict v = rank_one_by_core_criterion(a, opt.trials, opt.seed);
    if (v.rank_one) {
        report["verdicts"].push_back(Json{{"verdict", "RankOne"},
                                          {"property_trials", v.trials_run},
                                          {"core_dim_violations", v.violations}});
    } else {
        report["verdicts"].push_back(Json{{"verdict", "HigherRank"},
                                          {"case", v.witness->case_label},
                                          {"core_dim", v.witness->core_dim}});
        report["certificates"].push_back(certificate_core_inflating(a, *v.witness));
    }
    emit(report, opt);
    return kExitOk;
}

int cmd_witness(const Options& opt) {
    Mat a = load_matrix(opt.in_path);
    Json report = make_report("witness", opt.seed, Json{{"in", opt.in_path}});
    try {
        CoreInflatingWitness w = construct_core_inflating_T(a, opt.seed, opt.budget);
        report["verdicts"].push_back(Json{{"case", w.case_label}, {"core_dim", w.core_dim}});
        report["certificates"].push_back(certificate_core_inflating(a, w));
        emit(report, opt);
        return kExitOk;
    } catch (const std::domain_error& e) {
        report["verdicts"].push_back(Json{{"verdict", "inconclusive"}, {"reason", e.what()}});
        emit(report, opt);
        return kExitInconclusive;
    }
}

int cmd_propcheck(const Options& opt) {
    Mat a = load_matrix(opt.in_path);
    Mat b = load_matrix(opt.in2_path);
    Json report = make_report("propcheck", opt.seed, Json{{"budget", opt.budget}});
    ProportionalityResult r = proportionality_test(a, b, opt.budget, opt.seed);
    switch (r.kind) {
        case ProportionalityResult::Kind::Proportional:
            report["verdicts"].push_back(Json{{"verdict", "Proportional"}, {"lambda", render_scalar(r.lambda)}});
            report["certificates"].push_back(certificate_proportionality(a, b, r.lambda));
            emit(report, opt);
            return kExitOk;
        case ProportionalityResult::Kind::Witness:
            report["verdicts"].push_back(Json{{"verdict", "NotProportional"}, {"case", r.case_label}});
            report["certificates"].push_back(certificate_core_mismatch(a, b, r.witness_f, r.case_label));
            emit(report, opt);
            return kExitViolation;
        case ProportionalityResult::Kind::Inconclusive:
            report["verdicts"].push_back(Json{{"verdict", "Inconclusive"}});
            emit(report, opt);
            return kExitInconclusive;
    }
    return kExitUsage;
}

int cmd_preserver(const Options& opt) {
    MapModel phi = build_map(opt.map_name, opt.dim, opt.seed);
    std::string mode = opt.mode;
    if (mode.empty()) mode = (phi.kind == MapModel::Kind::Scaling) ? "verify" : "falsify";
    Json report = make_report("preserver", opt.seed,
                              Json{{"map", opt.map_name}, {"dim", opt.dim}, {"mode", mode}, {"budget", opt.budget}});
    if (mode == "verify") {
        ForwardReport rep = verify_forward(phi, opt.trials, opt.seed);
        report["verdicts"].push_back(Json{{"trials", rep.trials}, {"failures", rep.failures}});
        emit(report, opt);
        return rep.pass() ? kExitOk : kExitViolation;
    }
    if (mode == "falsify") {
        FalsifyOutcome out = falsify_map(phi, opt.budget, opt.seed);
        if (out.counterexample) {
            report["verdicts"].push_back(Json{{"verdict", "counterexample"}, {"attempts", out.attempts}});
            report["certificates"].push_back(certificate_pair_counterexample(*out.counterexample));
            emit(report, opt);
            return kExitViolation;
        }
        report["verdicts"].push_back(Json{{"verdict", "none found"}, {"attempts", out.attempts}});
        emit(report, opt);
        return kExitInconclusive;
    }
    if (mode == "steps") {
        StepReport rep = replay_theorem_steps([&phi](const Mat& m) { return phi.apply(m); }, opt.dim, opt.budget,
                                              opt.seed);
        Json scalars = Json::array();
        for (const auto& s : rep.step3_scalars)
            scalars.push_back(Json{{"f", matrix_to_json(s.f)},
                                   {"lambda", s.lambda ? Json(render_scalar(*s.lambda)) : Json(nullptr)}});
        report["verdicts"].push_back(Json{{"step1_zero_fixed", rep.step1_zero_fixed},
                                          {"step1_violations", rep.step1_violations},
                                          {"step2_tested", rep.step2_tested},
                                          {"step2_violations", rep.step2_violations},
                                          {"step3_scalars", scalars},
                                          {"step3_violations", rep.step3_violations},
                                          {"step4_proportional", rep.step4_proportional},
                                          {"step4_violations", rep.step4_violations}});
        for (const auto& c : rep.counterexamples)
            report["certificates"].push_back(certificate_pair_counterexample(c));
        emit(report, opt);
        return rep.all_pass() ? kExitOk : kExitViolation;
    }
    throw ParseError("unknown preserver mode: " + mode);
}

int cmd_corollary(const Options& opt) {
    MapModel phi = build_map(opt.map_name, opt.dim, opt.seed);
    Json report = make_report("corollary", opt.seed, Json{{"map", opt.map_name}, {"dim", opt.dim}});
    CorollaryReport rep = corollary_check(phi, opt.trials, opt.seed);
    report["verdicts"].push_back(Json{{"trials", rep.trials},
                                      {"mismatches", rep.mismatches},
                                      {"crosscheck_inconsistencies", rep.crosscheck_inconsistencies}});
    if (rep.first_mismatch) report["certificates"].push_back(certificate_pair_counterexample(*rep.first_mismatch));
    emit(report, opt);
    return rep.pass() ? kExitOk : kExitViolation;
}

int cmd_fuzz(const Options& opt) {
    Json report = make_report("fuzz", opt.seed, Json{{"trials", opt.trials}});
    Json sweep = fuzz_sweep(opt.seed, opt.trials);
    int violations = 0;
    for (const auto& inv : sweep) violations += inv["violations"].get<int>();
    report["verdicts"] = sweep;
    emit(report, opt);
    return violations == 0 ? kExitOk : kExitViolation;
}

int cmd_selftest(const Options& opt) {
    auto start = std::chrono::steady_clock::now();
    std::vector<CriterionResult> results = run_selftest(opt.seed);
    Json report = make_report("selftest", opt.seed, Json::object());
    report["verdicts"] = criteria_to_json(results);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    report["timings_ms"]["total"] = ms.count();
    bool all = true;
    for (const auto& r : results) {
        std::cout << "criterion " << r.index << " [" << r.name << "]: " << (r.pass ? "PASS" : "FAIL") << "\n";
        all = all && r.pass;
    }
    if (opt.format == "json") std::cout << report.dump(2) << "\n";
    return all ? kExitOk : kExitViolation;
}

int cmd_replay(const Options& opt) {
    std::ifstream in(opt.replay_path);
    if (!in) throw ParseError("cannot open report: " + opt.replay_path);
    Json report;
    try {
        report = Json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(std::string("report parse: ") + e.what());
    }
    ReplaySummary s = replay_report(report);
    std::cout << "replayed " << s.total << " certificate(s), " << s.failed << " failed\n";
    return s.failed == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"locspec: exact analytic-core and local-spectrum toolkit"};
    app.require_subcommand(0, 1);
    Options opt;

    // seed default 0; LOCSPEC_SEED overrides the default; --seed wins over both
    if (const char* env = std::getenv("LOCSPEC_SEED")) opt.seed = std::strtoull(env, nullptr, 10);

    app.add_option("--replay", opt.replay_path, "replay all certificates in a saved report");

    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "random seed (env LOCSPEC_SEED overrides the default)");
        sub->add_option("--format", opt.format, "output format: json|text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* core = app.add_subcommand("core", "analytic core K(T), optional chain certificate");
    core->add_option("--in", opt.in_path, "matrix file")->required();
    core->add_option("--vec", opt.vec_arg, "vector, comma-separated scalars");
    core->add_option("--chain", opt.chain, "emit a backward-orbit certificate of this length");
    add_common(core);

    CLI::App* jordan = app.add_subcommand("jordan", "Jordan product TS+ST and its core");
    jordan->add_option("--in", opt.in_path, "matrix T file")->required();
    jordan->add_option("--in2", opt.in2_path, "matrix S file")->required();
    add_common(jordan);

    CLI::App* loc = app.add_subcommand("locspec", "local spectrum, radii, izero at (T, x)");
    loc->add_option("--in", opt.in_path, "matrix file")->required();
    loc->add_option("--vec", opt.vec_arg, "vector")->required();
    loc->add_option("--backend", opt.backend, "exact|float|both")->check(CLI::IsMember({"exact", "float", "both"}));
    add_common(loc);

    CLI::App* rank1 = app.add_subcommand("rank1", "rank-one verdict via the core criterion");
    rank1->add_option("--in", opt.in_path, "matrix file")->required();
    rank1->add_option("--trials", opt.trials, "property-check trials");
    add_common(rank1);

    CLI::App* witness = app.add_subcommand("witness", "core-inflating T for a rank >= 2 operator");
    witness->add_option("--in", opt.in_path, "matrix file")->required();
    witness->add_option("--budget", opt.budget, "fallback search budget");
    add_common(witness);

    CLI::App* prop = app.add_subcommand("propcheck", "proportionality dichotomy for (A, B)");
    prop->add_option("--in", opt.in_path, "matrix A file")->required();
    prop->add_option("--in2", opt.in2_path, "matrix B file")->required();
    prop->add_option("--budget", opt.budget, "witness search budget");
    add_common(prop);

    CLI::App* pres = app.add_subcommand("preserver", "verify / falsify / replay-steps for a map family");
    pres->add_option("--map", opt.map_name, "scaling|identity|transpose|similarity|nilpotent-shift");
    pres->add_option("--dim", opt.dim, "ambient dimension");
    pres->add_option("--mode", opt.mode, "verify|falsify|steps (default by map kind)");
    pres->add_option("--budget", opt.budget, "search budget");
    pres->add_option("--trials", opt.trials, "verification trials");
    add_common(pres);

    CLI::App* coro = app.add_subcommand("corollary", "inner-radius-zero equivalence check");
    coro->add_option("--map", opt.map_name, "map family");
    coro->add_option("--dim", opt.dim, "ambient dimension");
    coro->add_option("--trials", opt.trials, "sampled (T,S,x) triples");
    add_common(coro);

    CLI::App* fuzz = app.add_subcommand("fuzz", "full invariant sweep");
    fuzz->add_option("--trials", opt.trials, "trials per invariant");
    add_common(fuzz);

    CLI::App* self = app.add_subcommand("selftest", "acceptance suite");
    add_common(self);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!opt.replay_path.empty()) return cmd_replay(opt);
        if (core->parsed()) return cmd_core(opt);
        if (jordan->parsed()) return cmd_jordan(opt);
        if (loc->parsed()) return cmd_locspec(opt);
        if (rank1->parsed()) return cmd_rank1(opt);
        if (witness->parsed()) return cmd_witness(opt);
        if (prop->parsed()) return cmd_propcheck(opt);
        if (pres->parsed()) return cmd_preserver(opt);
        if (coro->parsed()) return cmd_corollary(opt);
        if (fuzz->parsed()) return cmd_fuzz(opt);
        if (self->parsed()) return cmd_selftest(opt);
        std::cerr << app.help() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
