#pragma once

/// Certification of the non-vanishing Jacobian condition: build the
/// (m-1)x(m-1) matrices J_{m,theta} = [dP_i/d g_j], i in {2..m}, evaluate
/// their determinants at enclosures of the true moment point, and certify
/// that the enclosure excludes zero, escalating precision as needed.
///
/// Column sets: for theta = gamma^(k) the columns are {2..m-1} u {k}. For
/// theta = gamma the matrix must still be square; the default convention
/// takes columns {2..m} and the alternative takes {1} u {2..m-1} (the
/// derivative in gamma itself). The convention is a parameter precisely so
/// the two readings can be compared; both certify.
///
/// det strategy: symbolic (Bareiss / minor expansion) for small m, then the
/// determinant polynomial is evaluated by interval Horner; for larger m the
/// entries are evaluated first and an interval LU runs on the numeric
/// matrix. Every record notes which path produced it.

#include <gec/bell.hpp>
#include <gec/matrix_det.hpp>
#include <gec/pascal.hpp>
#include <gec/sequences.hpp>

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace gec {

enum class ThetaGammaColumns {
    LowerBlock,   // theta = gamma -> columns {2..m}
    GammaColumn,  // theta = gamma -> columns {1} u {2..m-1}
};

inline std::vector<long> jacobian_columns(long m, ThetaChoice theta,
                                          ThetaGammaColumns conv) {
    check_theta(m, theta);
    std::vector<long> cols;
    if (theta.is_gamma()) {
        if (conv == ThetaGammaColumns::GammaColumn) cols.push_back(1);
        for (long j = 2; j <= m - 1; ++j) cols.push_back(j);
        if (conv == ThetaGammaColumns::LowerBlock) cols.push_back(m);
    } else {
        for (long j = 2; j <= m - 1; ++j) cols.push_back(j);
        cols.push_back(theta.k);
    }
    return cols;
}

inline PolyMatrix jacobian_matrix(long m, ThetaChoice theta,
                                  ThetaGammaColumns conv = ThetaGammaColumns::LowerBlock) {
    const std::vector<long> cols = jacobian_columns(m, theta, conv);
    PolyMatrix J;
    for (long i = 2; i <= m; ++i) {
        std::vector<Poly> row;
        row.reserve(cols.size());
        for (long j : cols) row.push_back(build_P(i).derivative(VarId::gamma(j)));
        J.push_back(std::move(row));
    }
    return J;
}

enum class CertStatus { CertifiedNonzero, Indeterminate };

struct CertRecord {
    long n = 0;
    long m = 0;
    ThetaChoice theta;
    std::string det_lo;
    std::string det_hi;
    CertStatus status = CertStatus::Indeterminate;
    long bits_used = 0;
    double elapsed_s = 0;
    std::string path;        // "symbolic" or "interval_lu"
    std::string convention;  // theta = gamma column convention
    bool resumed = false;
};

inline const char* convention_name(ThetaGammaColumns c) {
    return c == ThetaGammaColumns::LowerBlock ? "lower-block" : "gamma-column";
}

struct CertifyOptions {
    int jobs = 1;
    long symbolic_max_m = 6;
    ThetaGammaColumns convention = ThetaGammaColumns::LowerBlock;
    std::string ledger_path;  // empty: no persistence
};

namespace detail {

inline nlohmann::json cert_to_json(const CertRecord& r) {
    return nlohmann::json{
        {"n", r.n},
        {"m", r.m},
        {"theta_k", r.theta.k},
        {"theta", r.theta.name()},
        {"status", r.status == CertStatus::CertifiedNonzero ? "CERTIFIED_NONZERO"
                                                            : "INDETERMINATE"},
        {"det_lo", r.det_lo},
        {"det_hi", r.det_hi},
        {"bits_used", r.bits_used},
        {"elapsed_s", r.elapsed_s},
        {"path", r.path},
        {"convention", r.convention},
    };
}

inline std::optional<CertRecord> cert_from_json(const nlohmann::json& j) {
    CertRecord r;
    if (!j.contains("m") || !j.contains("theta_k") || !j.contains("status"))
        return std::nullopt;
    r.n = j.value("n", 0L);
    r.m = j.at("m").get<long>();
    r.theta.k = j.at("theta_k").get<long>();
    r.status = j.at("status").get<std::string>() == "CERTIFIED_NONZERO"
                   ? CertStatus::CertifiedNonzero
                   : CertStatus::Indeterminate;
    r.det_lo = j.value("det_lo", "");
    r.det_hi = j.value("det_hi", "");
    r.bits_used = j.value("bits_used", 0L);
    r.elapsed_s = j.value("elapsed_s", 0.0);
    r.path = j.value("path", "");
    r.convention = j.value("convention", "");
    r.resumed = true;
    return r;
}

inline std::map<VarId, Interval> gamma_star_assignment(long max_index,
                                                       const PrecisionConfig& cfg) {
    std::map<VarId, Interval> a;
    for (long j = 1; j <= max_index; ++j) a.emplace(VarId::gamma(j), gamma_n(j, cfg));
    return a;
}

}  // namespace detail

/// Certify one (m, theta) pair with escalation. Returns the record.
inline CertRecord certify_pair(long n, long m, ThetaChoice theta,
                               const PrecisionConfig& cfg, const CertifyOptions& opt,
                               const Poly* symbolic /* may be null */) {
    const auto t0 = std::chrono::steady_clock::now();
    CertRecord rec;
    rec.n = n;
    rec.m = m;
    rec.theta = theta;
    rec.path = symbolic ? "symbolic" : "interval_lu";
    rec.convention = convention_name(opt.convention);

    PrecisionConfig level = cfg;
    for (int esc = 0; esc <= cfg.max_escalations; ++esc) {
        std::optional<Interval> det;
        try {
            auto assign = detail::gamma_star_assignment(2 * m, level);
            if (symbolic) {
                det = symbolic->eval_interval(assign, level.bits);
            } else {
                const auto cols = jacobian_columns(m, theta, opt.convention);
                IntervalMatrix M;
                for (long i = 2; i <= m; ++i) {
                    std::vector<Interval> row;
                    for (long j : cols)
                        row.push_back(build_P(i)
                                          .derivative(VarId::gamma(j))
                                          .eval_interval(assign, level.bits));
                    M.push_back(std::move(row));
                }
                det = interval_lu_det(std::move(M), level.bits);
            }
        } catch (const interval_error&) {
            det = std::nullopt;
        }
        if (det) {
            rec.det_lo = det->lo_string(24);
            rec.det_hi = det->hi_string(24);
            rec.bits_used = level.bits;
            if (!det->contains_zero()) {
                rec.status = CertStatus::CertifiedNonzero;
                break;
            }
        }
        if (esc == cfg.max_escalations) {
            rec.status = CertStatus::Indeterminate;
            rec.bits_used = level.bits;
        }
        level = level.escalated();
    }
    rec.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

/// Full certification sweep: every m in {2..n}, every theta in
/// G_m^U u {gamma}  (m + 2 records per m). Resumable through the ledger.
inline std::vector<CertRecord> certify(long n, const PrecisionConfig& cfg,
                                       const CertifyOptions& opt = {}) {
    if (n < 2) throw std::invalid_argument("certify: n must be >= 2");

    // replay
    std::set<std::pair<long, long>> done;
    std::vector<CertRecord> replayed;
    if (!opt.ledger_path.empty()) {
        std::ifstream in(opt.ledger_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) continue;
            auto rec = detail::cert_from_json(j);
            // only replay certificates produced under the same convention
            if (rec && rec->status == CertStatus::CertifiedNonzero && rec->m <= n &&
                rec->convention == convention_name(opt.convention) &&
                done.emplace(rec->m, rec->theta.k).second)
                replayed.push_back(*rec);
        }
    }

    // shared read-only prerequisites: the P_m and the small symbolic dets
    for (long m = 2; m <= n; ++m) build_P(m);
    std::map<std::pair<long, long>, Poly> symbolic_dets;
    for (long m = 2; m <= std::min(n, opt.symbolic_max_m); ++m)
        for (ThetaChoice theta : all_thetas(m))
            if (!done.count({m, theta.k}))
                symbolic_dets.emplace(std::make_pair(m, theta.k),
                                      symbolic_det(jacobian_matrix(m, theta, opt.convention)));

    struct Task {
        long m;
        ThetaChoice theta;
    };
    std::vector<Task> tasks;
    for (long m = 2; m <= n; ++m)
        for (ThetaChoice theta : all_thetas(m))
            if (!done.count({m, theta.k})) tasks.push_back({m, theta});

    std::vector<CertRecord> fresh(tasks.size());
    std::mutex ledger_mu;
    std::ofstream ledger;
    if (!opt.ledger_path.empty()) ledger.open(opt.ledger_path, std::ios::app);

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            const Task& t = tasks[idx];
            auto it = symbolic_dets.find({t.m, t.theta.k});
            const Poly* sym = it == symbolic_dets.end() ? nullptr : &it->second;
            CertRecord rec = certify_pair(n, t.m, t.theta, cfg, opt, sym);
            if (ledger.is_open()) {
                std::lock_guard<std::mutex> guard(ledger_mu);
                ledger << detail::cert_to_json(rec).dump() << "\n";
                ledger.flush();
            }
            fresh[idx] = std::move(rec);
        }
    };

    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<CertRecord> all = std::move(replayed);
    all.insert(all.end(), fresh.begin(), fresh.end());
    return all;
}

}  // namespace gec
