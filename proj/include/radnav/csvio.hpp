/**
 * Locale-independent text formatting for artifact files. All floats are
 * written with shortest round-trip representation so identical runs
 * produce byte-identical output.
 */

#ifndef RADNAV_CSVIO_HPP
#define RADNAV_CSVIO_HPP

#include <charconv>
#include <string>

namespace radnav {

inline std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace radnav

#endif // RADNAV_CSVIO_HPP
