/**
 * Bayesian occupancy-grid estimation from energy scans: per-cell log-odds
 * recursion against the two single-cell measurement hypotheses, MAP map
 * extraction and map entropy.
 */

#ifndef RADNAV_MAPPER_HPP
#define RADNAV_MAPPER_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "radnav/radar.hpp"
#include "radnav/scene.hpp"

namespace radnav {

/// Per-cell occupancy log-odds. Belief recoverable as 1 / (1 + e^-l).
struct BeliefMap {
    static constexpr double kLogOddsMax = 50.0;

    std::vector<double> log_odds;
    int k = 0;

    double belief(int cell) const;
    int n_cells() const { return static_cast<int>(log_odds.size()); }
};

/// All log-odds exactly zero: complete uncertainty, belief 0.5 everywhere.
BeliefMap init_belief(const Scenario& s);

/// Measurement models for one cell under the two hypotheses, as full
/// matrices: h1 differs from h0 only in the cell's range-bin column,
/// where it adds the single-cell echo. Both include the noise floor.
struct CellLikelihoodModels {
    bool in_range = false;
    EnergyStats occupied; // h(m_i = 1) and its variance
    EnergyStats free;     // h(m_i = 0) and its variance
};
CellLikelihoodModels cell_likelihood_models(const Scenario& s, Pose pose, int cell);

/// Log-odds recursion for one scan: each in-range cell accumulates the
/// log-likelihood ratio over the scan entries where the two hypothesis
/// means differ, then is clamped to +-kLogOddsMax. Out-of-range cells are
/// unchanged.
BeliefMap update_belief(const BeliefMap& b, const EnergyScan& scan, const Scenario& s,
                        Pose pose);

/// MAP map: occupied iff log-odds > 0; exact ties resolve to free.
std::vector<uint8_t> map_estimate(const BeliefMap& b);

/// Sum of per-cell binary entropies, nats.
double map_entropy(const BeliefMap& b);

/// Occupancy-probability grid as CSV rows (k, cell, col, row, p_occupied).
void write_belief_csv(std::ostream& out, const Scenario& s, const BeliefMap& b);

/// Binary 8-bit PGM, 255 = occupancy probability 1; top image row is the
/// highest-y grid row.
void write_belief_pgm(std::ostream& out, const Scenario& s, const BeliefMap& b);

} // namespace radnav

#endif // RADNAV_MAPPER_HPP
