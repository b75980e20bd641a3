/**
 * Artifact emission helpers: SHA-256 hashing for the run manifest and the
 * mission-trace CSV writer.
 */

#ifndef RADNAV_ARTIFACTS_HPP
#define RADNAV_ARTIFACTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace radnav {

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Hex SHA-256 of a file's contents. Throws ValidationError if unreadable.
std::string sha256_file(const std::string& path);

/// One mission-trace row; pose is the cell occupied after the action.
struct TraceRow {
    int k = 0;
    double x_m = 0.0;
    double y_m = 0.0;
    std::string action;
    double epsilon = 0.0;
    double chosen_q = 0.0; // NaN on exploration steps
    double r_d = 0.0;
    double r_map = 0.0;
    double entropy_nats = 0.0;
    std::string decision; // "D1" or "D0"
};

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

} // namespace radnav

#endif // RADNAV_ARTIFACTS_HPP
