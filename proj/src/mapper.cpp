#include "radnav/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "radnav/csvio.hpp"
#include "radnav/errors.hpp"
#include "radnav/numerics.hpp"

namespace radnav {

double BeliefMap::belief(int cell) const {
    return 1.0 / (1.0 + std::exp(-log_odds[static_cast<size_t>(cell)]));
}

BeliefMap init_belief(const Scenario& s) {
    BeliefMap b;
    b.log_odds.assign(static_cast<size_t>(s.grid.n_cells()), 0.0);
    b.k = 0;
    return b;
}

CellLikelihoodModels cell_likelihood_models(const Scenario& s, Pose pose, int cell) {
    CellLikelihoodModels m;
    const CellEcho echo = cell_echo(s, pose, cell);
    if (!echo.in_range) return m;
    m.in_range = true;

    const int n_rot = s.radio.n_rot;
    const int n_bins = s.radio.n_bins();
    const double e_n = noise_floor_energy(s.radio);
    const double var0 = energy_variance(s.radio, 0.0);

    m.free.mean = EnergyMatrix(n_rot, n_bins);
    m.free.variance = EnergyMatrix(n_rot, n_bins);
    m.occupied.mean = EnergyMatrix(n_rot, n_bins);
    m.occupied.variance = EnergyMatrix(n_rot, n_bins);
    for (int b = 0; b < n_rot; ++b) {
        for (int sbin = 0; sbin < n_bins; ++sbin) {
            m.free.mean.at(b, sbin) = e_n;
            m.free.variance.at(b, sbin) = var0;
            const double sig =
                (sbin == echo.bin) ? echo.signal_per_row[static_cast<size_t>(b)] : 0.0;
            m.occupied.mean.at(b, sbin) = e_n + sig;
            m.occupied.variance.at(b, sbin) = energy_variance(s.radio, sig);
        }
    }
    return m;
}

BeliefMap update_belief(const BeliefMap& b, const EnergyScan& scan, const Scenario& s,
                        Pose pose) {
    const int n_rot = s.radio.n_rot;
    const int n_bins = s.radio.n_bins();
    if (scan.e.n_rot != n_rot || scan.e.n_bins != n_bins)
        throw ValidationError("update_belief: scan shape does not match the radio config");
    if (b.n_cells() != s.grid.n_cells())
        throw ValidationError("update_belief: belief size does not match the grid");

    const double e_n = noise_floor_energy(s.radio);
    const double var0 = energy_variance(s.radio, 0.0);

    BeliefMap out = b;
    out.k = b.k + 1;
    for (int cell = 0; cell < s.grid.n_cells(); ++cell) {
        const CellEcho echo = cell_echo(s, pose, cell);
        if (!echo.in_range) continue;

        // Only the cell's own range-bin column can differ between the two
        // hypotheses; rows where the beam gain underflows drop out via the
        // exact mean comparison.
        double delta = 0.0;
        for (int row = 0; row < n_rot; ++row) {
            const double sig = echo.signal_per_row[static_cast<size_t>(row)];
            const double h1 = e_n + sig;
            if (h1 == e_n) continue;
            const double e = scan.e.at(row, echo.bin);
            const double var1 = energy_variance(s.radio, sig);
            const double r0 = e - e_n;
            const double r1 = e - h1;
            delta += r0 * r0 / (2.0 * var0) - r1 * r1 / (2.0 * var1) +
                     0.5 * std::log(var0 / var1);
        }
        const double l = out.log_odds[static_cast<size_t>(cell)] + delta;
        out.log_odds[static_cast<size_t>(cell)] =
            std::clamp(l, -BeliefMap::kLogOddsMax, BeliefMap::kLogOddsMax);
    }
    return out;
}

std::vector<uint8_t> map_estimate(const BeliefMap& b) {
    std::vector<uint8_t> m(b.log_odds.size(), 0);
    for (size_t i = 0; i < b.log_odds.size(); ++i) m[i] = b.log_odds[i] > 0.0 ? 1 : 0;
    return m;
}

double map_entropy(const BeliefMap& b) {
    double h = 0.0;
    for (int i = 0; i < b.n_cells(); ++i) h += binary_entropy(b.belief(i));
    return h;
}

void write_belief_csv(std::ostream& out, const Scenario& s, const BeliefMap& b) {
    out << "k,cell,col,row,p_occupied\n";
    for (int cell = 0; cell < s.grid.n_cells(); ++cell) {
        out << b.k << "," << cell << "," << s.grid.col(cell) << "," << s.grid.row(cell)
            << "," << fmt_double(b.belief(cell)) << "\n";
    }
}

void write_belief_pgm(std::ostream& out, const Scenario& s, const BeliefMap& b) {
    out << "P5\n" << s.grid.width << " " << s.grid.height << "\n255\n";
    for (int row = s.grid.height - 1; row >= 0; --row) {
        for (int col = 0; col < s.grid.width; ++col) {
            const double p = b.belief(s.grid.index(col, row));
            const int px = static_cast<int>(std::lround(p * 255.0));
            out.put(static_cast<char>(std::clamp(px, 0, 255)));
        }
    }
}

} // namespace radnav
