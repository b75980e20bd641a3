/**
 * Ground-truth world model: grid geometry, scenario configuration,
 * action legality and line-of-sight tests.
 *
 * A Scenario is immutable after load_scenario() and safe to share
 * across threads.
 */

#ifndef RADNAV_SCENE_HPP
#define RADNAV_SCENE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace radnav {

/// One-cell moves. The enumeration order (North, East, South, West) is
/// load-bearing: deterministic tie-breaks follow it.
enum class Action : int { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Action, 4> kAllActions = {
    Action::North, Action::East, Action::South, Action::West};

const char* action_name(Action a);

/// (dcol, drow) of a move; North is +row (+y).
std::array<int, 2> action_delta(Action a);

struct GridGeom {
    int width = 10;
    int height = 10;
    double cell_size_m = 1.0;

    int n_cells() const { return width * height; }
    bool contains(int col, int row) const {
        return col >= 0 && col < width && row >= 0 && row < height;
    }
    bool contains(int cell) const { return cell >= 0 && cell < n_cells(); }
    int index(int col, int row) const { return row * width + col; }
    int col(int cell) const { return cell % width; }
    int row(int cell) const { return cell / width; }
    double center_x(int cell) const { return (col(cell) + 0.5) * cell_size_m; }
    double center_y(int cell) const { return (row(cell) + 0.5) * cell_size_m; }
};

/// Radar/receiver constants. Derived quantities (pulse count, bin count,
/// noise floor) hang off these.
struct RadioConfig {
    double eirp_dbm = 5.0;
    double noise_figure_db = 4.0;
    double bandwidth_hz = 1e9;        // W
    double center_freq_hz = 60e9;     // f_r
    double target_freq_hz = 5.8e9;    // f_t
    double scan_time_s = 80e-6;       // full rotation
    double frame_time_s = 30e-9;      // T_f, one pulse repetition frame
    double observation_time_s = 5e-8; // T, detector record length
    int n_rot = 8;                    // steering directions
    int n_elements = 16;              // N, perfect square

    /// N_p = ceil((T_scan / n_rot) / T_f).
    int n_pulses() const;
    /// T_ED = 1 / W.
    double bin_duration_s() const { return 1.0 / bandwidth_hz; }
    /// N_bins = floor(T_f / T_ED).
    int n_bins() const;

    void validate() const;
};

/// Energy-detector configuration. n_samples is K = 2 T W real samples.
struct DetectorConfig {
    double pfa_star = 1e-3;
    int n_samples = 100;
    double target_eirp_dbm = -5.0;
    double target_freq_hz = 5.8e9;
    double noise_figure_db = 4.0;
    double bandwidth_hz = 1e9;
    double operating_range_m = 60.0;

    /// One-sided noise PSD at the detection receiver, W/Hz.
    double noise_psd() const;
    /// Noise power sigma_nu^2 = N0 * W, watts.
    double noise_power() const { return noise_psd() * bandwidth_hz; }

    void validate() const;
};

struct PlannerConfig {
    double discount = 0.89;        // gamma
    int horizon = 4;               // T_H
    int mission_time = 13;         // T_M
    double w_detect = 1.0;
    double w_map = 1.0;
    double entropy_floor_nats = 1e-6;

    void validate() const;
};

struct Pose {
    int cell = 0;
};

/// Immutable ground truth: geometry, occupied cells with RCS, target and
/// start cells, radio/detector/planner configuration.
struct Scenario {
    GridGeom grid;
    std::vector<uint8_t> occupied;   // 0/1 per cell
    std::vector<double> rcs_m2;      // per cell, used when hypothesised occupied
    int target_cell = 0;
    int uav_start = 0;
    RadioConfig radio;
    DetectorConfig detector;
    PlannerConfig planner;
    int mission_time = 13;           // T_M
    std::map<std::string, std::vector<int>> trajectories; // named waypoint paths

    bool is_occupied(int cell) const { return occupied[static_cast<size_t>(cell)] != 0; }
    void validate() const;
};

/// Parses and fully validates a scenario JSON file. Throws ValidationError
/// naming the offending field on any schema or invariant violation.
Scenario load_scenario(const std::string& path);

/// Euclidean distance between cell centers, meters.
double cell_distance(const GridGeom& g, int cell_a, int cell_b);

/// The subset of the four moves that stays in-grid on a free cell,
/// in Action enumeration order.
std::vector<Action> legal_actions(const Scenario& s, Pose p);

/// Destination cell of a move, or -1 if it leaves the grid.
int neighbor_cell(const GridGeom& g, int cell, Action a);

/// True iff the straight segment between the two cell centers touches any
/// cell marked occupied in `occupancy`, endpoints' own cells excluded.
/// Supercover traversal: cells touched only at a corner count as touched.
bool los_blocked_on(const GridGeom& g, const std::vector<uint8_t>& occupancy,
                    int cell_a, int cell_b);

/// LOS test against the scenario's true map.
bool los_blocked(const Scenario& s, Pose a, int cell_b);

} // namespace radnav

#endif // RADNAV_SCENE_HPP
