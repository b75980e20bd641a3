/**
 * Policy estimator: epsilon-scheduled, finite-horizon, discounted
 * exhaustive lookahead over action sequences, maximizing combined
 * mapping-entropy and detection rewards.
 *
 * Lookahead is certainty-equivalent: future scans are replaced by their
 * means under the agent's current MAP map, and detection rewards use the
 * closed-form P_D under the target-position belief. The map belief chains
 * along each branch; the target belief is held fixed.
 */

#ifndef RADNAV_PLANNER_HPP
#define RADNAV_PLANNER_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "radnav/detector.hpp"
#include "radnav/mapper.hpp"
#include "radnav/radar.hpp"
#include "radnav/rng.hpp"
#include "radnav/scene.hpp"

namespace radnav {

/// Everything the agent knows at step k.
struct AgentState {
    Pose pose;
    BeliefMap belief;
    TargetBelief target;
    bool last_detected = true; // the target is assumed present initially
    int k = 0;
};

AgentState init_agent_state(const Scenario& s);

/// Exploration rate: 0.8 for k < T_M/4, 0.4 for T_M/4 <= k < T_M/2,
/// 0 otherwise. Real-valued bounds, no rounding.
double epsilon_schedule(int k, int mission_time);

/// Certainty-equivalent map reward for moving to `pose_next`: a noise-free
/// scan simulated on the current MAP map is folded into the belief and the
/// predicted entropy H is scored as H0 / max(H, floor), H0 = N_cells ln 2.
double predicted_map_reward(const AgentState& st, Pose pose_next, const Scenario& s);

/// Expected P_D at `pose_next` under the target-position belief, with
/// line of sight evaluated on the agent's MAP map.
double predicted_detection_reward(const AgentState& st, Pose pose_next,
                                  const Scenario& s);

/// Q values for every legal depth-1 action: the maximum discounted reward
/// sum over legal action sequences of length `horizon`. Illegal actions
/// hold NaN.
struct QValues {
    std::array<double, 4> q{};
    std::array<bool, 4> legal{};
};
QValues q_lookahead(const AgentState& st, const Scenario& s, PdCache& pd);

struct SelectionResult {
    Action action = Action::North;
    bool explored = false; // action drawn uniformly at random
    double q = 0.0;        // Q of the chosen action; NaN when explored
};

/// Epsilon-greedy draw: with probability epsilon_schedule(k) a uniform
/// legal action, otherwise argmax Q with ties broken by enumeration order.
SelectionResult select_action(const AgentState& st, const Scenario& s, PdCache& pd,
                              Rng& rng);

struct StepResult {
    AgentState state;
    DetectionRecord record;
    int clamped_entries = 0;
};

/// Executes one mission step: move, acquire a scan, update the map belief,
/// run the energy test and update the target belief. Throws on an illegal
/// action. zero_noise propagates to scan synthesis (debug hook).
StepResult mission_step(const AgentState& st, Action a, const Scenario& s, double xi,
                        Rng& rng, bool zero_noise = false);

} // namespace radnav

#endif // RADNAV_PLANNER_HPP
