#ifndef BEAMLAB_VERSION_HPP
#define BEAMLAB_VERSION_HPP

namespace beamlab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace beamlab

#endif
