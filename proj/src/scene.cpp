#include "radnav/scene.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "radnav/errors.hpp"

namespace radnav {

namespace {

using nlohmann::json;

// Dedu supercover: visits every cell the segment between the two cell
// centers touches; at an exact corner crossing both side cells are visited.
// Integer arithmetic throughout, so the traversal is exact.
template <class Visitor>
void supercover_visit(int x0, int y0, int x1, int y1, Visitor&& visit) {
    int dx = x1 - x0;
    int dy = y1 - y0;
    const int xstep = dx < 0 ? -1 : 1;
    const int ystep = dy < 0 ? -1 : 1;
    dx = std::abs(dx);
    dy = std::abs(dy);
    int x = x0;
    int y = y0;
    visit(x, y);
    const int ddx = 2 * dx;
    const int ddy = 2 * dy;
    if (ddx >= ddy) {
        int errorprev = dx;
        int error = dx;
        for (int i = 0; i < dx; ++i) {
            x += xstep;
            error += ddy;
            if (error > ddx) {
                y += ystep;
                error -= ddx;
                if (error + errorprev < ddx) {
                    visit(x, y - ystep);
                } else if (error + errorprev > ddx) {
                    visit(x - xstep, y);
                } else {
                    visit(x, y - ystep);
                    visit(x - xstep, y);
                }
            }
            visit(x, y);
            errorprev = error;
        }
    } else {
        int errorprev = dy;
        int error = dy;
        for (int i = 0; i < dy; ++i) {
            y += ystep;
            error += ddx;
            if (error > ddy) {
                x += xstep;
                error -= ddy;
                if (error + errorprev < ddy) {
                    visit(x - xstep, y);
                } else if (error + errorprev > ddy) {
                    visit(x, y - ystep);
                } else {
                    visit(x - xstep, y);
                    visit(x, y - ystep);
                }
            }
            visit(x, y);
            errorprev = error;
        }
    }
}

const json& require_section(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw ValidationError(std::string(name) + ": missing required section");
    if (!it->is_object())
        throw ValidationError(std::string(name) + ": must be an object");
    return *it;
}

double require_number(const json& sec, const std::string& prefix, const char* key) {
    auto it = sec.find(key);
    if (it == sec.end())
        throw ValidationError(prefix + key + ": missing required field");
    if (!it->is_number())
        throw ValidationError(prefix + key + ": must be a number");
    return it->get<double>();
}

int require_int(const json& sec, const std::string& prefix, const char* key) {
    auto it = sec.find(key);
    if (it == sec.end())
        throw ValidationError(prefix + key + ": missing required field");
    if (!it->is_number_integer())
        throw ValidationError(prefix + key + ": must be an integer");
    return it->get<int>();
}

double optional_number(const json& sec, const char* key, double fallback) {
    auto it = sec.find(key);
    if (it == sec.end()) return fallback;
    return it->get<double>();
}

bool is_perfect_square(int n) {
    if (n < 1) return false;
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return r * r == n;
}

} // namespace

const char* action_name(Action a) {
    switch (a) {
        case Action::North: return "North";
        case Action::East: return "East";
        case Action::South: return "South";
        case Action::West: return "West";
    }
    return "?";
}

std::array<int, 2> action_delta(Action a) {
    switch (a) {
        case Action::North: return {0, 1};
        case Action::East: return {1, 0};
        case Action::South: return {0, -1};
        case Action::West: return {-1, 0};
    }
    return {0, 0};
}

int RadioConfig::n_pulses() const {
    return static_cast<int>(std::ceil(scan_time_s / n_rot / frame_time_s));
}

int RadioConfig::n_bins() const {
    return static_cast<int>(std::floor(frame_time_s / bin_duration_s()));
}

void RadioConfig::validate() const {
    if (!(bandwidth_hz > 0)) throw ValidationError("radio.bandwidth_hz: must be > 0");
    if (!(center_freq_hz > 0)) throw ValidationError("radio.center_freq_hz: must be > 0");
    if (!(target_freq_hz > 0)) throw ValidationError("radio.target_freq_hz: must be > 0");
    if (!(scan_time_s > 0)) throw ValidationError("radio.scan_time_s: must be > 0");
    if (!(frame_time_s > 0)) throw ValidationError("radio.frame_time_s: must be > 0");
    if (!(observation_time_s > 0))
        throw ValidationError("radio.observation_time_s: must be > 0");
    if (n_rot < 1) throw ValidationError("radio.n_rot: must be >= 1");
    if (!is_perfect_square(n_elements))
        throw ValidationError("radio.n_elements: must be a perfect square >= 1");
    if (n_pulses() < 1) throw ValidationError("radio: derived pulse count N_p must be >= 1");
    if (n_bins() < 1)
        throw ValidationError("radio: derived bin count floor(T_f * W) must be >= 1");
}

double DetectorConfig::noise_psd() const {
    return 1.380649e-23 * 290.0 * std::pow(10.0, noise_figure_db / 10.0);
}

void DetectorConfig::validate() const {
    if (!(pfa_star > 0.0) || !(pfa_star < 1.0))
        throw ValidationError("detector.pfa_star: must be in (0, 1)");
    if (n_samples < 2) throw ValidationError("detector.n_samples: must be >= 2");
    if (!(bandwidth_hz > 0)) throw ValidationError("detector.bandwidth_hz: must be > 0");
    if (!(target_freq_hz > 0)) throw ValidationError("detector.target_freq_hz: must be > 0");
    if (!(operating_range_m > 0))
        throw ValidationError("detector.operating_range_m: must be > 0");
}

void PlannerConfig::validate() const {
    if (!(discount >= 0.0) || !(discount <= 1.0))
        throw ValidationError("planner.gamma: must be in [0, 1]");
    if (horizon < 1) throw ValidationError("planner.horizon: must be >= 1");
    if (mission_time < 1) throw ValidationError("mission.time_steps: must be >= 1");
    if (w_detect < 0 || w_map < 0)
        throw ValidationError("planner: reward weights must be >= 0");
    if (w_detect == 0 && w_map == 0)
        throw ValidationError("planner: reward weights must not both be 0");
    if (!(entropy_floor_nats > 0))
        throw ValidationError("planner.entropy_floor_nats: must be > 0");
}

void Scenario::validate() const {
    if (grid.width < 1 || grid.height < 1)
        throw ValidationError("grid: width and height must be >= 1");
    if (!(grid.cell_size_m > 0)) throw ValidationError("grid.cell_size_m: must be > 0");
    if (occupied.size() != static_cast<size_t>(grid.n_cells()))
        throw ValidationError("occupied: occupancy vector size mismatch");
    if (rcs_m2.size() != static_cast<size_t>(grid.n_cells()))
        throw ValidationError("rcs: RCS vector size mismatch");
    if (!grid.contains(target_cell))
        throw ValidationError("target_cell: outside the grid");
    if (is_occupied(target_cell))
        throw ValidationError("target_cell: must not be an occupied cell");
    if (!grid.contains(uav_start))
        throw ValidationError("uav_start: outside the grid");
    if (is_occupied(uav_start))
        throw ValidationError("uav_start: must not be an occupied cell");
    radio.validate();
    detector.validate();
    planner.validate();
    if (mission_time < 1) throw ValidationError("mission.time_steps: must be >= 1");
    for (const auto& [name, cells] : trajectories) {
        for (int c : cells) {
            if (!grid.contains(c))
                throw ValidationError("trajectories." + name + ": cell outside the grid");
            if (is_occupied(c))
                throw ValidationError("trajectories." + name + ": cell is occupied");
        }
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("scenario file not readable: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("scenario file parse error: " + std::string(e.what()));
    }

    Scenario s;
    const json& grid = require_section(j, "grid");
    s.grid.width = require_int(grid, "grid.", "width");
    s.grid.height = require_int(grid, "grid.", "height");
    s.grid.cell_size_m = require_number(grid, "grid.", "cell_size_m");
    if (s.grid.width < 1 || s.grid.height < 1)
        throw ValidationError("grid: width and height must be >= 1");

    auto occ_it = j.find("occupied");
    if (occ_it == j.end() || !occ_it->is_array())
        throw ValidationError("occupied: missing required index list");
    s.occupied.assign(static_cast<size_t>(s.grid.n_cells()), 0);
    for (const auto& v : *occ_it) {
        if (!v.is_number_integer())
            throw ValidationError("occupied: entries must be cell indices");
        const int c = v.get<int>();
        if (!s.grid.contains(c))
            throw ValidationError("occupied: cell index outside the grid");
        s.occupied[static_cast<size_t>(c)] = 1;
    }

    const double rcs_default = optional_number(j, "rcs_default_m2", 1.0);
    if (!(rcs_default > 0)) throw ValidationError("rcs_default_m2: must be > 0");
    s.rcs_m2.assign(static_cast<size_t>(s.grid.n_cells()), rcs_default);
    if (auto it = j.find("rcs_overrides"); it != j.end()) {
        for (const auto& [key, val] : it->items()) {
            const int c = std::atoi(key.c_str());
            if (!s.grid.contains(c))
                throw ValidationError("rcs_overrides: cell index outside the grid");
            s.rcs_m2[static_cast<size_t>(c)] = val.get<double>();
        }
    }

    if (!j.contains("target_cell"))
        throw ValidationError("target_cell: missing required field");
    s.target_cell = j["target_cell"].get<int>();
    if (!j.contains("uav_start")) throw ValidationError("uav_start: missing required field");
    s.uav_start = j["uav_start"].get<int>();

    const json& radio = require_section(j, "radio");
    s.radio.eirp_dbm = require_number(radio, "radio.", "eirp_dbm");
    s.radio.noise_figure_db = require_number(radio, "radio.", "noise_figure_db");
    s.radio.bandwidth_hz = require_number(radio, "radio.", "bandwidth_hz");
    s.radio.center_freq_hz = require_number(radio, "radio.", "center_freq_hz");
    s.radio.target_freq_hz = require_number(radio, "radio.", "target_freq_hz");
    s.radio.scan_time_s = require_number(radio, "radio.", "scan_time_s");
    s.radio.frame_time_s = require_number(radio, "radio.", "frame_time_s");
    s.radio.observation_time_s = require_number(radio, "radio.", "observation_time_s");
    s.radio.n_rot = require_int(radio, "radio.", "n_rot");
    s.radio.n_elements = require_int(radio, "radio.", "n_elements");

    const json& det = require_section(j, "detector");
    s.detector.pfa_star = require_number(det, "detector.", "pfa_star");
    s.detector.target_eirp_dbm = require_number(det, "detector.", "target_eirp_dbm");
    s.detector.noise_figure_db = require_number(det, "detector.", "noise_figure_db");
    s.detector.operating_range_m = require_number(det, "detector.", "operating_range_m");
    s.detector.target_freq_hz = s.radio.target_freq_hz;
    s.detector.bandwidth_hz = s.radio.bandwidth_hz;
    // K = 2 T W real samples from the detector record length.
    s.detector.n_samples = static_cast<int>(
        std::llround(2.0 * s.radio.observation_time_s * s.radio.bandwidth_hz));

    const json& planner = require_section(j, "planner");
    s.planner.discount = require_number(planner, "planner.", "gamma");
    s.planner.horizon = require_int(planner, "planner.", "horizon");
    s.planner.w_detect = require_number(planner, "planner.", "w_detect");
    s.planner.w_map = require_number(planner, "planner.", "w_map");
    s.planner.entropy_floor_nats =
        optional_number(planner, "entropy_floor_nats", 1e-6);

    const json& mission = require_section(j, "mission");
    s.mission_time = require_int(mission, "mission.", "time_steps");
    s.planner.mission_time = s.mission_time;

    if (auto it = j.find("trajectories"); it != j.end()) {
        for (const auto& [name, arr] : it->items()) {
            if (!arr.is_array())
                throw ValidationError("trajectories." + name + ": must be a cell list");
            std::vector<int> cells;
            for (const auto& v : arr) cells.push_back(v.get<int>());
            s.trajectories[name] = std::move(cells);
        }
    }

    s.validate();
    return s;
}

double cell_distance(const GridGeom& g, int cell_a, int cell_b) {
    const double dx = g.center_x(cell_a) - g.center_x(cell_b);
    const double dy = g.center_y(cell_a) - g.center_y(cell_b);
    return std::hypot(dx, dy);
}

int neighbor_cell(const GridGeom& g, int cell, Action a) {
    const auto d = action_delta(a);
    const int col = g.col(cell) + d[0];
    const int row = g.row(cell) + d[1];
    if (!g.contains(col, row)) return -1;
    return g.index(col, row);
}

std::vector<Action> legal_actions(const Scenario& s, Pose p) {
    std::vector<Action> out;
    out.reserve(4);
    for (Action a : kAllActions) {
        const int c = neighbor_cell(s.grid, p.cell, a);
        if (c >= 0 && !s.is_occupied(c)) out.push_back(a);
    }
    return out;
}

bool los_blocked_on(const GridGeom& g, const std::vector<uint8_t>& occupancy,
                    int cell_a, int cell_b) {
    bool blocked = false;
    supercover_visit(g.col(cell_a), g.row(cell_a), g.col(cell_b), g.row(cell_b),
                     [&](int col, int row) {
                         const int c = g.index(col, row);
                         if (c == cell_a || c == cell_b) return;
                         if (occupancy[static_cast<size_t>(c)] != 0) blocked = true;
                     });
    return blocked;
}

bool los_blocked(const Scenario& s, Pose a, int cell_b) {
    return los_blocked_on(s.grid, s.occupied, a.cell, cell_b);
}

} // namespace radnav
