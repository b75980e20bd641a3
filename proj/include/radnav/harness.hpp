/**
 * Experiment orchestration behind the CLI subcommands. Each command loads
 * a scenario, runs its experiment, and emits artifacts plus a run manifest
 * under the output directory. All randomness flows from the single seed;
 * identical (scenario, seed) produce byte-identical artifacts.
 */

#ifndef RADNAV_HARNESS_HPP
#define RADNAV_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace radnav {

// Exit codes shared with the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

struct MissionOptions {
    std::string scenario_path;
    uint64_t seed = 1;
    std::string out_dir;
    bool quiet = false;
    bool zero_noise = false; // debug hook: scans equal their means
};

struct RocOptions {
    std::string scenario_path;
    uint64_t seed = 1;
    std::string out_dir;
    uint64_t trials = 100000;
    int workers = 1;
    bool quiet = false;
};

struct MapFixedOptions {
    std::string scenario_path;
    std::string trajectory = "T1";
    uint64_t seed = 1;
    std::string out_dir;
    bool quiet = false;
    bool zero_noise = false;
};

/// Distances used by the ROC sweep, meters.
const std::vector<double>& roc_distances();

/// One full planned mission; writes trace.csv, per-step belief and
/// target-belief snapshots (CSV + PGM), manifest.json and run.log.
int cmd_mission(const MissionOptions& opt);

/// Monte-Carlo ROC sweep; writes roc.csv, roc_summary.csv, manifest.json
/// and run.log. The CDR-ordering verdict across distances is reported in
/// the log and on stdout.
int cmd_roc(const RocOptions& opt);

/// Mapping-only run along a named waypoint trajectory from the scenario
/// file; writes belief snapshots, accuracy.csv, manifest.json and run.log.
int cmd_map_fixed(const MapFixedOptions& opt);

} // namespace radnav

#endif // RADNAV_HARNESS_HPP
