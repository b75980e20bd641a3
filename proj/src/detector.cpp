#include "radnav/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "radnav/csvio.hpp"
#include "radnav/errors.hpp"
#include "radnav/numerics.hpp"

namespace radnav {

namespace {

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

// Splits [0, n) into `workers` contiguous chunks and runs fn(lo, hi) on
// each; single-threaded when workers <= 1.
template <class Fn>
void parallel_chunks(uint64_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n < 2) {
        fn(0, n, 0);
        return;
    }
    const int w = std::min<uint64_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(w));
    for (int i = 0; i < w; ++i) {
        const uint64_t lo = n * i / w;
        const uint64_t hi = n * (i + 1) / w;
        pool.emplace_back([&fn, lo, hi, i] { fn(lo, hi, i); });
    }
    for (auto& t : pool) t.join();
}

} // namespace

double threshold_from_pfa(const DetectorConfig& cfg) {
    cfg.validate();
    return 2.0 * inv_reg_gamma_upper(cfg.n_samples / 2.0, cfg.pfa_star);
}

double pfa_theoretical(const DetectorConfig& cfg, double xi) {
    if (!(xi >= 0.0)) throw ValidationError("pfa_theoretical: xi must be >= 0");
    return reg_gamma_upper(cfg.n_samples / 2.0, 0.5 * xi);
}

double lambda_at_distance(const DetectorConfig& cfg, double distance_m) {
    if (distance_m > cfg.operating_range_m) return 0.0;
    const double p_tx = dbm_to_watts(cfg.target_eirp_dbm);
    const double path = kSpeedOfLight /
                        (4.0 * std::numbers::pi * distance_m * cfg.target_freq_hz);
    const double p_rx = p_tx * path * path;
    const double snr = p_rx / cfg.noise_power();
    return cfg.n_samples * snr;
}

double noncentrality_on(const Scenario& s, const std::vector<uint8_t>& occupancy,
                        Pose pose, int cell) {
    if (los_blocked_on(s.grid, occupancy, pose.cell, cell)) return 0.0;
    const double d =
        std::max(cell_distance(s.grid, pose.cell, cell), 0.5 * s.grid.cell_size_m);
    return lambda_at_distance(s.detector, d);
}

double noncentrality(const Scenario& s, Pose pose, int cell) {
    return noncentrality_on(s, s.occupied, pose, cell);
}

double pd_theoretical(const DetectorConfig& cfg, double xi, double lambda) {
    if (!(lambda >= 0.0)) throw ValidationError("pd_theoretical: lambda must be >= 0");
    if (xi == 0.0) return 1.0;
    return marcum_q(cfg.n_samples / 2.0, std::sqrt(lambda), std::sqrt(xi));
}

DetectionRecord sense_and_decide(const Scenario& s, Pose pose, Rng& rng, double xi,
                                 int k) {
    DetectionRecord rec;
    rec.pose_cell = pose.cell;
    rec.k = k;
    rec.threshold = xi;
    const double lambda = noncentrality(s, pose, s.target_cell);
    rec.statistic = sample_chi2(rng, s.detector.n_samples, lambda);
    rec.detected = rec.statistic > xi;
    return rec;
}

TargetBelief init_target_belief(const Scenario& s) {
    TargetBelief tb;
    const int n = s.grid.n_cells();
    tb.mass.assign(static_cast<size_t>(n), 1.0 / n);
    return tb;
}

TargetBelief update_target_belief(const TargetBelief& tb, const DetectionRecord& rec,
                                  const Scenario& s,
                                  const std::vector<uint8_t>& map_occupancy,
                                  bool* degenerate) {
    const int n = s.grid.n_cells();
    if (static_cast<int>(tb.mass.size()) != n)
        throw ValidationError("update_target_belief: belief size mismatch");
    if (degenerate) *degenerate = false;

    const Pose pose{rec.pose_cell};
    std::vector<double> log_post(static_cast<size_t>(n),
                                 -std::numeric_limits<double>::infinity());
    double max_log = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
        if (tb.mass[static_cast<size_t>(c)] <= 0.0) continue;
        if (map_occupancy[static_cast<size_t>(c)]) continue;
        const double lambda = noncentrality_on(s, map_occupancy, pose, c);
        const double ll = log_pdf_noncentral_chi2(rec.statistic,
                                                  s.detector.n_samples, lambda);
        const double lp = std::log(tb.mass[static_cast<size_t>(c)]) + ll;
        log_post[static_cast<size_t>(c)] = lp;
        max_log = std::max(max_log, lp);
    }

    TargetBelief out;
    out.mass.assign(static_cast<size_t>(n), 0.0);
    if (!std::isfinite(max_log)) {
        if (degenerate) *degenerate = true;
        return tb;
    }
    double total = 0.0;
    for (int c = 0; c < n; ++c) {
        const double lp = log_post[static_cast<size_t>(c)];
        if (!std::isfinite(lp)) continue;
        const double w = std::exp(lp - max_log);
        out.mass[static_cast<size_t>(c)] = w;
        total += w;
    }
    if (total <= 0.0) {
        if (degenerate) *degenerate = true;
        return tb;
    }
    for (double& w : out.mass) w /= total;
    return out;
}

PdCache::PdCache(const DetectorConfig& cfg, double xi, double cell_size_m)
    : cfg_(cfg), xi_(xi), cell_size_m_(cell_size_m) {
    pd_zero_ = pd_theoretical(cfg_, xi_, 0.0);
}

double PdCache::pd_at_cells2(long long cells2) {
    if (cells2 < 0) throw ValidationError("PdCache: negative squared offset");
    const size_t idx = static_cast<size_t>(cells2);
    if (idx >= table_.size()) {
        table_.resize(idx + 1, 0.0);
        have_.resize(idx + 1, 0);
    }
    if (!have_[idx]) {
        const double d = std::max(std::sqrt(static_cast<double>(cells2)) * cell_size_m_,
                                  0.5 * cell_size_m_);
        table_[idx] = pd_theoretical(cfg_, xi_, lambda_at_distance(cfg_, d));
        have_[idx] = 1;
    }
    return table_[idx];
}

std::vector<double> default_roc_thresholds(const DetectorConfig& cfg) {
    static const double kPfaGrid[] = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2,
                                      3e-2, 1e-1, 2e-1, 3e-1, 5e-1};
    std::vector<double> xs;
    xs.reserve(std::size(kPfaGrid));
    for (double p : kPfaGrid)
        xs.push_back(2.0 * inv_reg_gamma_upper(cfg.n_samples / 2.0, p));
    return xs;
}

RocTable run_roc(const DetectorConfig& cfg, const std::vector<double>& distances_m,
                 uint64_t n_trials, Rng& rng, const std::vector<double>& thresholds,
                 int workers) {
    cfg.validate();
    if (n_trials < 1) throw ValidationError("run_roc: n_trials must be >= 1");
    if (thresholds.empty()) throw ValidationError("run_roc: empty threshold sweep");

    RocTable t;
    t.distances_m = distances_m;
    t.thresholds = thresholds;
    t.n_trials = n_trials;
    const size_t n_xi = thresholds.size();
    const int K = cfg.n_samples;

    // Exceedance counts for one hypothesis: per-trial substreams keyed by
    // (context, trial) make the counts independent of the worker split.
    auto count_exceedances = [&](uint64_t context, double lambda) {
        std::vector<uint64_t> counts(n_xi, 0);
        std::vector<std::vector<uint64_t>> partial(
            static_cast<size_t>(std::max(workers, 1)),
            std::vector<uint64_t>(n_xi, 0));
        parallel_chunks(n_trials, workers, [&](uint64_t lo, uint64_t hi, int w) {
            auto& mine = partial[static_cast<size_t>(w)];
            for (uint64_t trial = lo; trial < hi; ++trial) {
                Rng sub = rng.substream((context << 40) | trial);
                const double stat = sample_chi2(sub, K, lambda);
                for (size_t i = 0; i < n_xi; ++i)
                    if (stat > thresholds[i]) ++mine[i];
            }
        });
        for (const auto& p : partial)
            for (size_t i = 0; i < n_xi; ++i) counts[i] += p[i];
        return counts;
    };

    t.pfa_theory.resize(n_xi);
    for (size_t i = 0; i < n_xi; ++i) t.pfa_theory[i] = pfa_theoretical(cfg, thresholds[i]);

    const auto h0 = count_exceedances(0, 0.0);
    t.far.resize(n_xi);
    for (size_t i = 0; i < n_xi; ++i)
        t.far[i] = static_cast<double>(h0[i]) / static_cast<double>(n_trials);

    t.pd_theory.resize(distances_m.size());
    t.cdr.resize(distances_m.size());
    for (size_t di = 0; di < distances_m.size(); ++di) {
        const double lambda = lambda_at_distance(cfg, distances_m[di]);
        t.pd_theory[di].resize(n_xi);
        for (size_t i = 0; i < n_xi; ++i)
            t.pd_theory[di][i] = pd_theoretical(cfg, thresholds[i], lambda);
        const auto h1 = count_exceedances(di + 1, lambda);
        t.cdr[di].resize(n_xi);
        for (size_t i = 0; i < n_xi; ++i)
            t.cdr[di][i] = static_cast<double>(h1[i]) / static_cast<double>(n_trials);
    }
    return t;
}

void write_roc_csv(std::ostream& out, const RocTable& t) {
    out << "distance_m,threshold,FAR,CDR,PFA_theory,PD_theory\n";
    for (size_t di = 0; di < t.distances_m.size(); ++di) {
        for (size_t i = 0; i < t.thresholds.size(); ++i) {
            out << fmt_double(t.distances_m[di]) << "," << fmt_double(t.thresholds[i])
                << "," << fmt_double(t.far[i]) << "," << fmt_double(t.cdr[di][i]) << ","
                << fmt_double(t.pfa_theory[i]) << "," << fmt_double(t.pd_theory[di][i])
                << "\n";
        }
    }
}

} // namespace radnav
