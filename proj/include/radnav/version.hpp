#ifndef RADNAV_VERSION_HPP
#define RADNAV_VERSION_HPP

namespace radnav {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kArtifactSchemaVersion = 1;

} // namespace radnav

#endif // RADNAV_VERSION_HPP
