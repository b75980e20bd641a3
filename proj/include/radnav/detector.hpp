/**
 * Energy detection of the cooperative emitter: normalized energy test
 * statistic, Neyman-Pearson threshold, closed-form PFA/PD, the
 * target-position belief filter feeding the planner, and the Monte-Carlo
 * ROC harness.
 *
 * Degrees-of-freedom convention: K real samples give a chi-square test
 * statistic with K degrees of freedom, so
 *   P_FA = Q(K/2, xi/2),  xi = 2 InvQ(K/2, PFA*),  P_D = Q_{K/2}(sqrt(l), sqrt(xi)).
 */

#ifndef RADNAV_DETECTOR_HPP
#define RADNAV_DETECTOR_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "radnav/rng.hpp"
#include "radnav/scene.hpp"

namespace radnav {

struct DetectionRecord {
    double statistic = 0.0; // Lambda_ED, normalized by the noise power
    double threshold = 0.0; // xi
    bool detected = false;  // D1 iff statistic > threshold
    int pose_cell = 0;
    int k = 0;
};

/// Probability mass over cells for the emitting target's location.
/// Nonnegative, sums to 1; cells currently believed occupied carry zero.
struct TargetBelief {
    std::vector<double> mass;
};

/// xi = 2 InvQ(K/2, PFA*).
double threshold_from_pfa(const DetectorConfig& cfg);

/// P_FA(xi) = Q(K/2, xi/2), survival of a central chi-square with K dof.
double pfa_theoretical(const DetectorConfig& cfg, double xi);

/// Free-space noncentrality at distance d: K * SNR with
/// SNR = P_rx / (N0 W) and P_rx from Friis with unit receive gain.
/// Distances beyond the operating range give 0; d is clamped below at
/// half a cell via the caller's geometry helpers.
double lambda_at_distance(const DetectorConfig& cfg, double distance_m);

/// Noncentrality for the emitter hypothetically at `cell`, seen from
/// `pose` with line of sight evaluated on `occupancy`. Blocked or
/// out-of-range cells give 0.
double noncentrality_on(const Scenario& s, const std::vector<uint8_t>& occupancy,
                        Pose pose, int cell);

/// Noncentrality against the scenario's true map.
double noncentrality(const Scenario& s, Pose pose, int cell);

/// P_D = Q_{K/2}(sqrt(lambda), sqrt(xi)); equals P_FA at lambda = 0.
double pd_theoretical(const DetectorConfig& cfg, double xi, double lambda);

/// Runs the energy test once at the pose: the statistic is a noncentral
/// chi-square draw with K dof and the true-map noncentrality to the
/// scenario's target cell.
DetectionRecord sense_and_decide(const Scenario& s, Pose pose, Rng& rng, double xi,
                                 int k = 0);

/// Uniform mass over all cells (the initial belief holds every cell free).
TargetBelief init_target_belief(const Scenario& s);

/// Bayes update of the target-position belief from one detection record:
/// posterior mass proportional to prior times the noncentral chi-square
/// likelihood of the observed statistic with the per-cell noncentrality;
/// cells occupied in `map_occupancy` (the agent's MAP map) are zeroed
/// before renormalizing. A degenerate all-zero posterior falls back to
/// the prior.
TargetBelief update_target_belief(const TargetBelief& tb, const DetectionRecord& rec,
                                  const Scenario& s,
                                  const std::vector<uint8_t>& map_occupancy,
                                  bool* degenerate = nullptr);

/// Closed-form P_D keyed by squared cell offset, shared by the planner's
/// reward loop. Blocked or out-of-range cells evaluate to P_D at lambda=0.
class PdCache {
public:
    PdCache(const DetectorConfig& cfg, double xi, double cell_size_m);

    /// P_D for a cell at squared offset (dcol^2 + drow^2), LOS clear.
    double pd_at_cells2(long long cells2);
    double pd_blocked() const { return pd_zero_; }
    double threshold() const { return xi_; }

private:
    DetectorConfig cfg_;
    double xi_;
    double cell_size_m_;
    double pd_zero_;
    std::vector<double> table_;
    std::vector<uint8_t> have_;
};

/// Empirical CDR/FAR sweep against the closed forms.
struct RocTable {
    std::vector<double> distances_m;
    std::vector<double> thresholds;
    std::vector<double> pfa_theory;             // per threshold
    std::vector<double> far;                    // per threshold (shared H0 draws)
    std::vector<std::vector<double>> pd_theory; // [distance][threshold]
    std::vector<std::vector<double>> cdr;       // [distance][threshold]
    uint64_t n_trials = 0;
};

/// Monte-Carlo ROC: n_trials H0 draws (shared by every distance) and
/// n_trials H1 draws per distance, counted against every threshold.
/// Trials use per-trial substreams of `rng`, so the table is identical
/// for any worker count.
RocTable run_roc(const DetectorConfig& cfg, const std::vector<double>& distances_m,
                 uint64_t n_trials, Rng& rng, const std::vector<double>& thresholds,
                 int workers = 1);

/// Default threshold sweep: xi at a fixed grid of false-alarm targets.
std::vector<double> default_roc_thresholds(const DetectorConfig& cfg);

void write_roc_csv(std::ostream& out, const RocTable& t);

} // namespace radnav

#endif // RADNAV_DETECTOR_HPP
