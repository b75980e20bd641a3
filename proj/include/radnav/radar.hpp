/**
 * Mapping-radar forward model: array beampattern, range binning, the
 * deterministic energy statistics shared with the mapper, and synthesis
 * of noisy energy scans from ground truth.
 */

#ifndef RADNAV_RADAR_HPP
#define RADNAV_RADAR_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "radnav/rng.hpp"
#include "radnav/scene.hpp"

namespace radnav {

/// Steered array abstraction: n_rot directions tiling the circle, Gaussian
/// mainlobe with boresight power gain N whose half-power full width equals
/// the steering pitch 2*pi/n_rot.
struct ArrayModel {
    int n_elements = 16;
    int n_rot = 8;

    static ArrayModel from(const RadioConfig& r) { return {r.n_elements, r.n_rot}; }

    double steering_angle(int b) const;       // theta_b = 2 pi b / n_rot
    double boresight_gain() const { return static_cast<double>(n_elements); }
    double beam_sigma() const;                // FWHM / (2 sqrt(2 ln 2))
};

/// One-way power gain at the given offset from boresight, wrapped to
/// (-pi, pi]. G(0) = N.
double array_gain(const ArrayModel& m, double steer_offset);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

/// Time-bin index of the round trip to distance d: floor(2 d W / c).
/// Indices >= RadioConfig::n_bins() mean the cell is out of radar range.
int range_bin(double distance_m, double bandwidth_hz);

/// Matrix over (steering direction, range bin); row-major.
struct EnergyMatrix {
    int n_rot = 0;
    int n_bins = 0;
    std::vector<double> v;

    EnergyMatrix() = default;
    EnergyMatrix(int rot, int bins)
        : n_rot(rot), n_bins(bins), v(static_cast<size_t>(rot) * bins, 0.0) {}
    double& at(int b, int s) { return v[static_cast<size_t>(b) * n_bins + s]; }
    double at(int b, int s) const { return v[static_cast<size_t>(b) * n_bins + s]; }
};

/// One radar sweep: accumulated energy per steering direction and range bin.
struct EnergyScan {
    EnergyMatrix e;
    int pose_cell = 0;
    int k = 0;
    int clamped_entries = 0; // negative Gaussian draws clamped to zero
};

/// First two moments of a sweep under a given occupancy hypothesis.
struct EnergyStats {
    EnergyMatrix mean;
    EnergyMatrix variance;
};

/// Per-bin noise floor E_n = sigma^2 N_p T_ED with sigma^2 = N0 W and
/// N0 = k T0 10^(NF/10).
double noise_floor_energy(const RadioConfig& r);

/// Variance of one energy entry around signal energy E: N0 (2 E + E_n).
double energy_variance(const RadioConfig& r, double signal_energy);

/// Echo of a single hypothetically-occupied cell seen from `pose`:
/// the range bin it lands in and the per-steering-row signal energy
/// (no noise floor). Out-of-range cells yield in_range = false.
/// Distances below cell_size/2 are clamped to cell_size/2 for the
/// amplitude so the pose's own cell stays well-defined.
struct CellEcho {
    bool in_range = false;
    int bin = 0;
    std::vector<double> signal_per_row; // size n_rot
};
CellEcho cell_echo(const Scenario& s, Pose pose, int cell);

/// Expected energy statistics for an arbitrary occupancy assignment:
/// superposition of cell echoes over occupied cells visible from the pose
/// (occlusion evaluated against the same assignment), plus the noise floor.
EnergyStats expected_energy(const Scenario& s, const std::vector<uint8_t>& occupancy,
                            Pose pose);

/// Draws one scan from the true map: independent Gaussians per entry,
/// clamped at zero. zero_noise = true returns the mean matrix (test and
/// debugging hook).
EnergyScan synthesize_scan(const Scenario& s, Pose pose, Rng& rng,
                           bool zero_noise = false);

/// CSV dump, one row per steering direction.
void write_scan_csv(std::ostream& out, const EnergyScan& scan);

} // namespace radnav

#endif // RADNAV_RADAR_HPP
