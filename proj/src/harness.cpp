#include "radnav/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "radnav/artifacts.hpp"
#include "radnav/csvio.hpp"
#include "radnav/detector.hpp"
#include "radnav/errors.hpp"
#include "radnav/mapper.hpp"
#include "radnav/planner.hpp"
#include "radnav/scene.hpp"
#include "radnav/version.hpp"

namespace radnav {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string snapshot_name(const char* stem, int k, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%04d.%s", stem, k, ext);
    return buf;
}

std::ofstream open_artifact(const fs::path& dir, const std::string& name,
                            std::vector<std::string>& artifact_list,
                            bool binary = false) {
    artifact_list.push_back(name);
    std::ofstream out(dir / name, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot write artifact: " + (dir / name).string());
    return out;
}

void write_target_belief_csv(std::ostream& out, const Scenario& s,
                             const TargetBelief& tb, int k) {
    out << "k,cell,col,row,mass\n";
    for (int c = 0; c < s.grid.n_cells(); ++c) {
        out << k << "," << c << "," << s.grid.col(c) << "," << s.grid.row(c) << ","
            << fmt_double(tb.mass[static_cast<size_t>(c)]) << "\n";
    }
}

void write_manifest(const fs::path& dir, const std::string& mode,
                    const std::string& scenario_path, uint64_t seed,
                    std::vector<std::string> artifacts, json parameters) {
    json m;
    m["schema_version"] = kArtifactSchemaVersion;
    m["tool"] = "radnav";
    m["version"] = kVersion;
    m["mode"] = mode;
    m["scenario_path"] = scenario_path;
    m["scenario_sha256"] = sha256_file(scenario_path);
    m["seed"] = seed;
    std::sort(artifacts.begin(), artifacts.end());
    m["artifacts"] = artifacts;
    m["parameters"] = std::move(parameters);
    std::ofstream out(dir / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest.json");
    out << m.dump(2) << "\n";
}

double fraction_correct(const Scenario& s, const BeliefMap& b) {
    const auto est = map_estimate(b);
    int correct = 0;
    for (int c = 0; c < s.grid.n_cells(); ++c)
        if ((est[static_cast<size_t>(c)] != 0) == s.is_occupied(c)) ++correct;
    return static_cast<double>(correct) / s.grid.n_cells();
}

int guarded(const std::function<int()>& body, bool quiet) {
    try {
        return body();
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        if (!quiet) std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace

const std::vector<double>& roc_distances() {
    static const std::vector<double> d = {10, 13, 14, 15, 17, 20, 25, 30, 35};
    return d;
}

int cmd_mission(const MissionOptions& opt) {
    return guarded([&]() -> int {
        const auto t_start = std::chrono::steady_clock::now();
        const Scenario s = load_scenario(opt.scenario_path);
        const fs::path dir(opt.out_dir.empty() ? "." : opt.out_dir);
        fs::create_directories(dir);
        std::vector<std::string> artifacts;

        Rng rng(opt.seed);
        const double xi = threshold_from_pfa(s.detector);
        PdCache pd(s.detector, xi, s.grid.cell_size_m);
        AgentState st = init_agent_state(s);

        auto snapshot = [&](const AgentState& state, int k) {
            {
                auto f = open_artifact(dir, snapshot_name("belief", k, "csv"), artifacts);
                write_belief_csv(f, s, state.belief);
            }
            {
                auto f = open_artifact(dir, snapshot_name("belief", k, "pgm"), artifacts,
                                       true);
                write_belief_pgm(f, s, state.belief);
            }
            {
                auto f = open_artifact(dir, snapshot_name("target_belief", k, "csv"),
                                       artifacts);
                write_target_belief_csv(f, s, state.target, k);
            }
        };
        snapshot(st, 0);

        std::vector<TraceRow> trace;
        long total_clamped = 0;
        for (int k = 0; k < s.mission_time; ++k) {
            const SelectionResult sel = select_action(st, s, pd, rng);
            const int next = neighbor_cell(s.grid, st.pose.cell, sel.action);
            const Pose pose_next{next};

            TraceRow row;
            row.k = k;
            row.x_m = s.grid.center_x(next);
            row.y_m = s.grid.center_y(next);
            row.action = action_name(sel.action);
            row.epsilon = epsilon_schedule(k, s.planner.mission_time);
            row.chosen_q = sel.q;
            row.r_map = predicted_map_reward(st, pose_next, s);
            row.r_d = predicted_detection_reward(st, pose_next, s);

            const StepResult res = mission_step(st, sel.action, s, xi, rng, opt.zero_noise);
            total_clamped += res.clamped_entries;
            row.entropy_nats = map_entropy(res.state.belief);
            row.decision = res.record.detected ? "D1" : "D0";
            trace.push_back(row);

            st = res.state;
            snapshot(st, st.k);
        }
        {
            auto f = open_artifact(dir, "trace.csv", artifacts);
            write_trace_csv(f, trace);
        }

        json params;
        params["mission_time"] = s.mission_time;
        params["threshold"] = xi;
        params["zero_noise"] = opt.zero_noise;
        write_manifest(dir, "mission", opt.scenario_path, opt.seed, artifacts, params);

        const auto dt = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t_start)
                            .count();
        {
            std::ofstream log(dir / "run.log");
            log << "mode=mission seed=" << opt.seed << " steps=" << s.mission_time
                << "\n";
            log << "wall_clock_s=" << fmt_double(dt) << "\n";
            if (total_clamped > 0)
                log << "warning: " << total_clamped
                    << " scan entries clamped at zero energy\n";
            log << "final_entropy_nats=" << fmt_double(map_entropy(st.belief)) << "\n";
            log << "final_distance_to_target_m="
                << fmt_double(cell_distance(s.grid, st.pose.cell, s.target_cell)) << "\n";
        }
        if (!opt.quiet) {
            std::cout << "mission done: " << s.mission_time << " steps, final entropy "
                      << map_entropy(st.belief) << " nats, distance to target "
                      << cell_distance(s.grid, st.pose.cell, s.target_cell) << " m\n";
        }
        return kExitOk;
    }, opt.quiet);
}

int cmd_roc(const RocOptions& opt) {
    return guarded([&]() -> int {
        const auto t_start = std::chrono::steady_clock::now();
        const Scenario s = load_scenario(opt.scenario_path);
        if (opt.trials < 1) throw ValidationError("roc: --trials must be >= 1");
        if (opt.workers < 1) throw ValidationError("roc: --workers must be >= 1");
        const fs::path dir(opt.out_dir.empty() ? "." : opt.out_dir);
        fs::create_directories(dir);
        std::vector<std::string> artifacts;

        Rng rng(opt.seed);
        const auto thresholds = default_roc_thresholds(s.detector);
        const RocTable table = run_roc(s.detector, roc_distances(), opt.trials, rng,
                                       thresholds, opt.workers);
        {
            auto f = open_artifact(dir, "roc.csv", artifacts);
            write_roc_csv(f, table);
        }

        // Per-curve worst deviation from the closed forms.
        auto max_dev = [&](const std::vector<double>& emp,
                           const std::vector<double>& theo) {
            double dev = 0.0, sig = 0.0;
            for (size_t i = 0; i < emp.size(); ++i) {
                const double d = std::fabs(emp[i] - theo[i]);
                const double s0 = std::sqrt(std::max(theo[i] * (1.0 - theo[i]), 1e-30) /
                                            static_cast<double>(table.n_trials));
                dev = std::max(dev, d);
                sig = std::max(sig, d / s0);
            }
            return std::pair<double, double>(dev, sig);
        };
        {
            auto f = open_artifact(dir, "roc_summary.csv", artifacts);
            f << "curve,n_trials,max_abs_dev,max_sigma_dev\n";
            const auto [d0, s0] = max_dev(table.far, table.pfa_theory);
            f << "FAR," << table.n_trials << "," << fmt_double(d0) << ","
              << fmt_double(s0) << "\n";
            for (size_t di = 0; di < table.distances_m.size(); ++di) {
                const auto [d1, s1] = max_dev(table.cdr[di], table.pd_theory[di]);
                f << "d=" << fmt_double(table.distances_m[di]) << "," << table.n_trials
                  << "," << fmt_double(d1) << "," << fmt_double(s1) << "\n";
            }
        }

        // CDR ordering across distances at the PFA = 1e-2 threshold.
        size_t xi_idx = 0;
        for (size_t i = 0; i < table.pfa_theory.size(); ++i)
            if (std::fabs(table.pfa_theory[i] - 1e-2) <
                std::fabs(table.pfa_theory[xi_idx] - 1e-2))
                xi_idx = i;
        bool ordering_ok = true;
        for (size_t di = 1; di < table.distances_m.size(); ++di)
            if (table.cdr[di][xi_idx] > table.cdr[di - 1][xi_idx]) ordering_ok = false;

        json params;
        params["trials"] = opt.trials;
        params["workers"] = opt.workers;
        params["cdr_ordering_pass"] = ordering_ok;
        write_manifest(dir, "roc", opt.scenario_path, opt.seed, artifacts, params);

        const auto dt = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t_start)
                            .count();
        {
            std::ofstream log(dir / "run.log");
            log << "mode=roc seed=" << opt.seed << " trials=" << opt.trials
                << " workers=" << opt.workers << "\n";
            log << "wall_clock_s=" << fmt_double(dt) << "\n";
            log << "cdr_ordering=" << (ordering_ok ? "PASS" : "FAIL") << "\n";
        }
        if (!opt.quiet) {
            std::cout << "roc done: " << opt.trials << " trials/curve, CDR ordering "
                      << (ordering_ok ? "PASS" : "FAIL") << "\n";
        }
        return kExitOk;
    }, opt.quiet);
}

int cmd_map_fixed(const MapFixedOptions& opt) {
    return guarded([&]() -> int {
        const auto t_start = std::chrono::steady_clock::now();
        const Scenario s = load_scenario(opt.scenario_path);
        const auto it = s.trajectories.find(opt.trajectory);
        if (it == s.trajectories.end())
            throw ValidationError("map-fixed: unknown trajectory \"" + opt.trajectory +
                                  "\" (define it in the scenario file)");
        const fs::path dir(opt.out_dir.empty() ? "." : opt.out_dir);
        fs::create_directories(dir);
        std::vector<std::string> artifacts;

        Rng rng(opt.seed);
        BeliefMap belief = init_belief(s);
        long total_clamped = 0;

        auto snapshot = [&](int k) {
            {
                auto f = open_artifact(dir, snapshot_name("belief", k, "csv"), artifacts);
                write_belief_csv(f, s, belief);
            }
            {
                auto f = open_artifact(dir, snapshot_name("belief", k, "pgm"), artifacts,
                                       true);
                write_belief_pgm(f, s, belief);
            }
        };
        snapshot(0);

        std::vector<std::pair<int, double>> accuracy;
        accuracy.emplace_back(0, fraction_correct(s, belief));
        int k = 0;
        for (int cell : it->second) {
            const Pose pose{cell};
            EnergyScan scan = synthesize_scan(s, pose, rng, opt.zero_noise);
            scan.k = ++k;
            total_clamped += scan.clamped_entries;
            belief = update_belief(belief, scan, s, pose);
            snapshot(k);
            accuracy.emplace_back(k, fraction_correct(s, belief));
        }
        {
            auto f = open_artifact(dir, "accuracy.csv", artifacts);
            f << "k,accuracy\n";
            for (const auto& [step, acc] : accuracy)
                f << step << "," << fmt_double(acc) << "\n";
        }

        json params;
        params["trajectory"] = opt.trajectory;
        params["steps"] = static_cast<int>(it->second.size());
        params["zero_noise"] = opt.zero_noise;
        params["final_accuracy"] = accuracy.back().second;
        write_manifest(dir, "map-fixed", opt.scenario_path, opt.seed, artifacts, params);

        const auto dt = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t_start)
                            .count();
        {
            std::ofstream log(dir / "run.log");
            log << "mode=map-fixed seed=" << opt.seed << " trajectory=" << opt.trajectory
                << " steps=" << it->second.size() << "\n";
            log << "wall_clock_s=" << fmt_double(dt) << "\n";
            if (total_clamped > 0)
                log << "warning: " << total_clamped
                    << " scan entries clamped at zero energy\n";
            log << "final_accuracy=" << fmt_double(accuracy.back().second) << "\n";
        }
        if (!opt.quiet) {
            std::cout << "map-fixed done: trajectory " << opt.trajectory << ", "
                      << it->second.size() << " poses, final accuracy "
                      << accuracy.back().second << "\n";
        }
        return kExitOk;
    }, opt.quiet);
}

} // namespace radnav
