#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "locspec/lemma_engine.hpp"
#include "locspec/preserver.hpp"
#include "locspec/spectral_core.hpp"

namespace locspec {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- scalar / vector / matrix serialization --------------------------------

inline Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(render_scalar(s));
    return a;
}

inline Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("vector: expected array of scalar strings");
    Vec v;
    for (size_t i = 0; i < j.size(); ++i) {
        try {
            v.push_back(parse_scalar(j[i].get<std::string>()));
        } catch (const std::exception& e) {
            throw ParseError("vector entry " + std::to_string(i) + ": " + e.what());
        }
    }
    return v;
}

inline Json matrix_to_json(const Mat& m) {
    Json entries = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(render_scalar(m(i, j)));
        entries.push_back(std::move(row));
    }
    return Json{{"dim", m.dim()}, {"entries", entries}};
}

inline Mat matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw ParseError("matrix: expected object with 'dim' and 'entries'");
    int n = j["dim"].get<int>();
    if (n <= 0) throw ParseError("matrix: dim must be positive");
    const Json& e = j["entries"];
    if (!e.is_array() || static_cast<int>(e.size()) != n)
        throw ParseError("matrix: expected " + std::to_string(n) + " rows, got " + std::to_string(e.size()));
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!e[i].is_array() || static_cast<int>(e[i].size()) != n)
            throw ParseError("matrix row " + std::to_string(i) + ": expected " + std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c) {
            try {
                m(i, c) = parse_scalar(e[i][c].get<std::string>());
            } catch (const std::exception& ex) {
                throw ParseError("matrix entry (" + std::to_string(i) + "," + std::to_string(c) + "): " + ex.what());
            }
        }
    }
    return m;
}

inline Mat parse_matrix(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("matrix file: ") + e.what());
    }
    return matrix_from_json(j);
}

inline std::string render_matrix(const Mat& m) { return matrix_to_json(m).dump(); }

/// Comma-separated scalar list, e.g. "1,0,2/3-5i".
inline Vec parse_vector_arg(const std::string& text) {
    Vec v;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            v.push_back(parse_scalar(tok));
        } catch (const std::exception& e) {
            throw ParseError("vector component " + std::to_string(v.size()) + ": " + e.what());
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return v;
}

// --- certificates -----------------------------------------------------------

inline Json certificate_core_chain(const CoreChainCertificate& c) {
    Json chain = Json::array();
    for (const auto& xk : c.chain) chain.push_back(vec_to_json(xk));
    return Json{{"type", "core_chain"}, {"t", matrix_to_json(c.t)}, {"x", vec_to_json(c.x)},
                {"delta", c.delta},     {"chain", chain}};
}

inline Json certificate_core_inflating(const Mat& a, const CoreInflatingWitness& w) {
    return Json{{"type", "core_inflating"},
                {"a", matrix_to_json(a)},
                {"t", matrix_to_json(w.t)},
                {"case", w.case_label},
                {"core_dim", w.core_dim}};
}

inline Json certificate_proportionality(const Mat& a, const Mat& b, const Scalar& lambda) {
    return Json{{"type", "proportionality"},
                {"a", matrix_to_json(a)},
                {"b", matrix_to_json(b)},
                {"lambda", render_scalar(lambda)}};
}

inline Json certificate_core_mismatch(const Mat& a, const Mat& b, const Mat& f, const std::string& label) {
    return Json{{"type", "core_mismatch"},
                {"a", matrix_to_json(a)},
                {"b", matrix_to_json(b)},
                {"f", matrix_to_json(f)},
                {"case", label}};
}

inline Json certificate_affine_combo(const Mat& t, const Mat& s, const Scalar& lambda, const Scalar& mu) {
    return Json{{"type", "affine_combo"},
                {"t", matrix_to_json(t)},
                {"s", matrix_to_json(s)},
                {"lambda", render_scalar(lambda)},
                {"mu", render_scalar(mu)}};
}

inline Json certificate_span_witness(const Mat& t, const Mat& s, const Vec& x) {
    return Json{{"type", "span_witness"}, {"t", matrix_to_json(t)}, {"s", matrix_to_json(s)}, {"x", vec_to_json(x)}};
}

inline Json certificate_pair_counterexample(const PairCounterexample& c) {
    return Json{{"type", "pair_counterexample"},
                {"t", matrix_to_json(c.t)},
                {"s", matrix_to_json(c.s)},
                {"phi_t", matrix_to_json(c.phi_t)},
                {"phi_s", matrix_to_json(c.phi_s)}};
}

/// Re-checks a serialized certificate from scratch; certificates are
/// self-contained, so no external state is consulted.
inline bool replay_certificate(const Json& cert) {
    std::string type = cert.at("type").get<std::string>();
    if (type == "core_chain") {
        CoreChainCertificate c;
        c.t = matrix_from_json(cert.at("t"));
        c.x = vec_from_json(cert.at("x"));
        c.delta = cert.at("delta").get<double>();
        for (const auto& xk : cert.at("chain")) c.chain.push_back(vec_from_json(xk));
        return verify_core_chain(c);
    }
    if (type == "core_inflating") {
        Mat a = matrix_from_json(cert.at("a"));
        Mat t = matrix_from_json(cert.at("t"));
        return analytic_core(jordan_product(t, a)).dim() >= 3;
    }
    if (type == "proportionality") {
        Mat a = matrix_from_json(cert.at("a"));
        Mat b = matrix_from_json(cert.at("b"));
        Scalar lambda = parse_scalar(cert.at("lambda").get<std::string>());
        return !lambda.is_zero() && b == lambda * a;
    }
    if (type == "core_mismatch") {
        Mat a = matrix_from_json(cert.at("a"));
        Mat b = matrix_from_json(cert.at("b"));
        Mat f = matrix_from_json(cert.at("f"));
        return rank(f) <= 1 && cores_differ(a, b, f);
    }
    if (type == "affine_combo") {
        Mat t = matrix_from_json(cert.at("t"));
        Mat s = matrix_from_json(cert.at("s"));
        Scalar lambda = parse_scalar(cert.at("lambda").get<std::string>());
        Scalar mu = parse_scalar(cert.at("mu").get<std::string>());
        return t == lambda * Mat::identity(t.dim()) + mu * s;
    }
    if (type == "span_witness") {
        Mat t = matrix_from_json(cert.at("t"));
        Mat s = matrix_from_json(cert.at("s"));
        Vec x = vec_from_json(cert.at("x"));
        return is_rank3_triple(x, s, t);
    }
    if (type == "pair_counterexample") {
        PairCounterexample c;
        c.t = matrix_from_json(cert.at("t"));
        c.s = matrix_from_json(cert.at("s"));
        c.phi_t = matrix_from_json(cert.at("phi_t"));
        c.phi_s = matrix_from_json(cert.at("phi_s"));
        return verify_pair_counterexample(c);
    }
    throw ParseError("unknown certificate type: " + type);
}

struct ReplaySummary {
    int total = 0;
    int failed = 0;
};

inline ReplaySummary replay_report(const Json& report) {
    ReplaySummary s;
    if (!report.contains("certificates")) return s;
    for (const auto& cert : report.at("certificates")) {
        ++s.total;
        if (!replay_certificate(cert)) ++s.failed;
    }
    return s;
}

// --- run reports -------------------------------------------------------------

inline Json make_report(const std::string& command, uint64_t seed, Json config) {
    return Json{{"v", 1},
                {"command", command},
                {"seed", seed},
                {"config", std::move(config)},
                {"verdicts", Json::array()},
                {"certificates", Json::array()},
                {"warnings", Json::array()},
                {"timings_ms", Json::object()}};
}

/// Canonical bytes with timings masked; the determinism contract compares
/// these.
inline std::string determinism_key(Json report) {
    report.erase("timings_ms");
    return report.dump();
}

}  // namespace locspec
