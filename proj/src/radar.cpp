#include "radnav/radar.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "radnav/csvio.hpp"
#include "radnav/errors.hpp"
#include "radnav/numerics.hpp"

namespace radnav {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

// N_p * EIRP * T_f * c^2 / (f_r^2 (4 pi)^3): scale of the single-cell echo
// energy before the rcs * G^2 / d^4 factors. The flat transmit PSD
// P_t = EIRP / W cancels the bandwidth integral's W.
double echo_scale(const RadioConfig& r) {
    const double eirp_w = dbm_to_watts(r.eirp_dbm);
    const double four_pi_cubed = std::pow(4.0 * std::numbers::pi, 3);
    return r.n_pulses() * eirp_w * r.frame_time_s * kSpeedOfLight * kSpeedOfLight /
           (r.center_freq_hz * r.center_freq_hz * four_pi_cubed);
}

double noise_psd(const RadioConfig& r) {
    return kBoltzmann * kReferenceTemperature * std::pow(10.0, r.noise_figure_db / 10.0);
}

} // namespace

double ArrayModel::steering_angle(int b) const { return kTwoPi * b / n_rot; }

double ArrayModel::beam_sigma() const {
    const double fwhm = kTwoPi / n_rot;
    return fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
}

double wrap_angle(double theta) {
    double t = std::remainder(theta, kTwoPi);
    if (t <= -std::numbers::pi) t += kTwoPi;
    return t;
}

double array_gain(const ArrayModel& m, double steer_offset) {
    const double t = wrap_angle(steer_offset);
    const double sigma = m.beam_sigma();
    return m.boresight_gain() * std::exp(-t * t / (2.0 * sigma * sigma));
}

int range_bin(double distance_m, double bandwidth_hz) {
    if (!(distance_m >= 0.0)) throw ValidationError("range_bin: distance must be >= 0");
    return static_cast<int>(std::floor(2.0 * distance_m * bandwidth_hz / kSpeedOfLight));
}

double noise_floor_energy(const RadioConfig& r) {
    const double sigma2 = noise_psd(r) * r.bandwidth_hz;
    return sigma2 * r.n_pulses() * r.bin_duration_s();
}

double energy_variance(const RadioConfig& r, double signal_energy) {
    return noise_psd(r) * (2.0 * signal_energy + noise_floor_energy(r));
}

CellEcho cell_echo(const Scenario& s, Pose pose, int cell) {
    CellEcho echo;
    const double d = cell_distance(s.grid, pose.cell, cell);
    const int bin = range_bin(d, s.radio.bandwidth_hz);
    if (bin >= s.radio.n_bins()) return echo;
    echo.in_range = true;
    echo.bin = bin;

    const double d_eff = std::max(d, 0.5 * s.grid.cell_size_m);
    const double amplitude = echo_scale(s.radio) * s.rcs_m2[static_cast<size_t>(cell)] /
                             (d_eff * d_eff * d_eff * d_eff);
    const double theta_cell =
        std::atan2(s.grid.center_y(cell) - s.grid.center_y(pose.cell),
                   s.grid.center_x(cell) - s.grid.center_x(pose.cell));

    const ArrayModel array = ArrayModel::from(s.radio);
    echo.signal_per_row.resize(static_cast<size_t>(s.radio.n_rot));
    for (int b = 0; b < s.radio.n_rot; ++b) {
        const double g = array_gain(array, theta_cell - array.steering_angle(b));
        echo.signal_per_row[static_cast<size_t>(b)] = amplitude * g * g;
    }
    return echo;
}

EnergyStats expected_energy(const Scenario& s, const std::vector<uint8_t>& occupancy,
                            Pose pose) {
    const int n_rot = s.radio.n_rot;
    const int n_bins = s.radio.n_bins();
    const double e_n = noise_floor_energy(s.radio);

    EnergyStats stats;
    stats.mean = EnergyMatrix(n_rot, n_bins);
    stats.variance = EnergyMatrix(n_rot, n_bins);
    for (double& m : stats.mean.v) m = e_n;

    for (int cell = 0; cell < s.grid.n_cells(); ++cell) {
        if (!occupancy[static_cast<size_t>(cell)]) continue;
        if (los_blocked_on(s.grid, occupancy, pose.cell, cell)) continue;
        const CellEcho echo = cell_echo(s, pose, cell);
        if (!echo.in_range) continue;
        for (int b = 0; b < n_rot; ++b)
            stats.mean.at(b, echo.bin) += echo.signal_per_row[static_cast<size_t>(b)];
    }
    for (size_t i = 0; i < stats.mean.v.size(); ++i)
        stats.variance.v[i] = energy_variance(s.radio, stats.mean.v[i] - e_n);
    return stats;
}

EnergyScan synthesize_scan(const Scenario& s, Pose pose, Rng& rng, bool zero_noise) {
    const EnergyStats stats = expected_energy(s, s.occupied, pose);
    EnergyScan scan;
    scan.pose_cell = pose.cell;
    scan.e = EnergyMatrix(s.radio.n_rot, s.radio.n_bins());
    for (size_t i = 0; i < scan.e.v.size(); ++i) {
        if (zero_noise) {
            scan.e.v[i] = stats.mean.v[i];
            continue;
        }
        double draw = sample_gaussian(rng, stats.mean.v[i], stats.variance.v[i]);
        if (draw < 0.0) {
            draw = 0.0;
            ++scan.clamped_entries;
        }
        scan.e.v[i] = draw;
    }
    return scan;
}

void write_scan_csv(std::ostream& out, const EnergyScan& scan) {
    out << "steering_index";
    for (int sbin = 0; sbin < scan.e.n_bins; ++sbin) out << ",bin_" << sbin;
    out << "\n";
    for (int b = 0; b < scan.e.n_rot; ++b) {
        out << b;
        for (int sbin = 0; sbin < scan.e.n_bins; ++sbin)
            out << "," << fmt_double(scan.e.at(b, sbin));
        out << "\n";
    }
}

} // namespace radnav
