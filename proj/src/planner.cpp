#include "radnav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "radnav/errors.hpp"
#include "radnav/numerics.hpp"

namespace radnav {

namespace {

struct MapPrediction {
    double reward = 0.0;
    BeliefMap belief;
};

// Certainty-equivalent fold: noise-free scan on the given MAP map, then
// the regular belief update. Also returns the chained belief for deeper
// lookahead levels.
MapPrediction predict_map(const BeliefMap& belief, const std::vector<uint8_t>& map,
                          Pose pose_next, const Scenario& s) {
    const EnergyStats stats = expected_energy(s, map, pose_next);
    EnergyScan scan;
    scan.pose_cell = pose_next.cell;
    scan.e = stats.mean;

    MapPrediction out;
    out.belief = update_belief(belief, scan, s, pose_next);
    const double h0 = s.grid.n_cells() * std::numbers::ln2;
    const double h = map_entropy(out.belief);
    out.reward = h0 / std::max(h, s.planner.entropy_floor_nats);
    return out;
}

double detection_reward_on(const TargetBelief& tb, const std::vector<uint8_t>& map,
                           Pose pose_next, const Scenario& s, PdCache& pd) {
    double r = 0.0;
    const GridGeom& g = s.grid;
    for (int c = 0; c < g.n_cells(); ++c) {
        const double w = tb.mass[static_cast<size_t>(c)];
        if (w <= 0.0) continue;
        if (los_blocked_on(g, map, pose_next.cell, c)) {
            r += w * pd.pd_blocked();
            continue;
        }
        const long long dc = g.col(c) - g.col(pose_next.cell);
        const long long dr = g.row(c) - g.row(pose_next.cell);
        r += w * pd.pd_at_cells2(dc * dc + dr * dr);
    }
    return r;
}

double combined_reward(const BeliefMap& belief, const std::vector<uint8_t>& map,
                       const TargetBelief& tb, Pose pose_next, const Scenario& s,
                       PdCache& pd, MapPrediction* prediction) {
    MapPrediction mp = predict_map(belief, map, pose_next, s);
    const double r_d = detection_reward_on(tb, map, pose_next, s, pd);
    const double r = s.planner.w_detect * r_d + s.planner.w_map * mp.reward;
    if (prediction) *prediction = std::move(mp);
    return r;
}

// Max over action sequences of the remaining discounted reward sum, with
// `depth_left` reward terms to go.
double lookahead_value(const BeliefMap& belief, Pose pose, int depth_left,
                       const Scenario& s, const TargetBelief& tb, PdCache& pd) {
    if (depth_left <= 0) return 0.0;
    const auto map = map_estimate(belief);
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (Action a : kAllActions) {
        const int c = neighbor_cell(s.grid, pose.cell, a);
        if (c < 0 || s.is_occupied(c)) continue;
        any = true;
        MapPrediction mp;
        const double r = combined_reward(belief, map, tb, Pose{c}, s, pd, &mp);
        const double v =
            r + s.planner.discount *
                    lookahead_value(mp.belief, Pose{c}, depth_left - 1, s, tb, pd);
        best = std::max(best, v);
    }
    return any ? best : 0.0;
}

} // namespace

AgentState init_agent_state(const Scenario& s) {
    AgentState st;
    st.pose = Pose{s.uav_start};
    st.belief = init_belief(s);
    st.target = init_target_belief(s);
    st.last_detected = true;
    st.k = 0;
    return st;
}

double epsilon_schedule(int k, int mission_time) {
    if (k < 0) throw ValidationError("epsilon_schedule: k must be >= 0");
    const double t = static_cast<double>(mission_time);
    if (k < t / 4.0) return 0.8;
    if (k < t / 2.0) return 0.4;
    return 0.0;
}

double predicted_map_reward(const AgentState& st, Pose pose_next, const Scenario& s) {
    const auto map = map_estimate(st.belief);
    return predict_map(st.belief, map, pose_next, s).reward;
}

double predicted_detection_reward(const AgentState& st, Pose pose_next,
                                  const Scenario& s) {
    PdCache pd(s.detector, threshold_from_pfa(s.detector), s.grid.cell_size_m);
    const auto map = map_estimate(st.belief);
    return detection_reward_on(st.target, map, pose_next, s, pd);
}

QValues q_lookahead(const AgentState& st, const Scenario& s, PdCache& pd) {
    QValues out;
    out.q.fill(std::numeric_limits<double>::quiet_NaN());
    const auto map = map_estimate(st.belief);
    bool any = false;
    for (Action a : kAllActions) {
        const int c = neighbor_cell(s.grid, st.pose.cell, a);
        if (c < 0 || s.is_occupied(c)) continue;
        any = true;
        MapPrediction mp;
        const double r = combined_reward(st.belief, map, st.target, Pose{c}, s, pd, &mp);
        const double v =
            r + s.planner.discount *
                    lookahead_value(mp.belief, Pose{c}, s.planner.horizon - 1, s,
                                    st.target, pd);
        const auto i = static_cast<size_t>(a);
        out.q[i] = v;
        out.legal[i] = true;
    }
    if (!any) throw ValidationError("q_lookahead: no legal action from this pose");
    return out;
}

SelectionResult select_action(const AgentState& st, const Scenario& s, PdCache& pd,
                              Rng& rng) {
    const auto legal = legal_actions(s, st.pose);
    if (legal.empty()) throw ValidationError("select_action: agent is boxed in");

    const double eps = epsilon_schedule(st.k, s.planner.mission_time);
    const double u = rng.uniform01();
    if (u < eps) {
        const auto idx = std::min<size_t>(
            static_cast<size_t>(rng.uniform01() * legal.size()), legal.size() - 1);
        SelectionResult r;
        r.action = legal[idx];
        r.explored = true;
        r.q = std::numeric_limits<double>::quiet_NaN();
        return r;
    }

    const QValues qv = q_lookahead(st, s, pd);
    SelectionResult r;
    double best = -std::numeric_limits<double>::infinity();
    for (Action a : kAllActions) {
        const auto i = static_cast<size_t>(a);
        if (!qv.legal[i]) continue;
        if (qv.q[i] > best) { // strict: ties keep the earlier action
            best = qv.q[i];
            r.action = a;
        }
    }
    r.explored = false;
    r.q = best;
    return r;
}

StepResult mission_step(const AgentState& st, Action a, const Scenario& s, double xi,
                        Rng& rng, bool zero_noise) {
    const int c = neighbor_cell(s.grid, st.pose.cell, a);
    if (c < 0 || s.is_occupied(c))
        throw ValidationError("mission_step: illegal action");

    StepResult out;
    const Pose pose_next{c};
    EnergyScan scan = synthesize_scan(s, pose_next, rng, zero_noise);
    scan.k = st.k + 1;
    out.clamped_entries = scan.clamped_entries;

    out.state.pose = pose_next;
    out.state.belief = update_belief(st.belief, scan, s, pose_next);
    out.record = sense_and_decide(s, pose_next, rng, xi, st.k + 1);
    out.state.target =
        update_target_belief(st.target, out.record, s, map_estimate(out.state.belief));
    out.state.last_detected = out.record.detected;
    out.state.k = st.k + 1;
    return out;
}

} // namespace radnav
