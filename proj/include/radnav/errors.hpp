#ifndef RADNAV_ERRORS_HPP
#define RADNAV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace radnav {

/// Bad input: malformed scenario files, violated invariants, out-of-domain
/// arguments. Maps to process exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace radnav

#endif // RADNAV_ERRORS_HPP
