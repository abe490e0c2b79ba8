#ifndef BEAMLAB_EXPERIMENTS_HPP
#define BEAMLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "beamlab/damping.hpp"

namespace beamlab {

// A named experiment run: load config, apply overrides, execute, write
// deterministic artifacts plus a manifest into out_dir.
struct ExperimentSpec {
  std::string command; // simulate | resolvent | rates | ineq | figure1
  std::string config_path; // empty = defaults
  std::string out_dir = "out";
  std::vector<std::pair<std::string, std::string>> overrides;
  int jobs = 1;
};

struct ArtifactInfo {
  std::string name;
  std::uint64_t bytes = 0;
  std::string fnv1a64; // content hash, hex
};

struct Manifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;
  std::vector<ArtifactInfo> artifacts;
};

// Executes the experiment. Identical specs produce byte-identical artifact
// bodies; only the manifest carries timing. Throws Error on failure
// (ErrorCode::config for bad specs, ErrorCode::numeric for solver failures).
Manifest run(const ExperimentSpec& spec);

std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

} // namespace beamlab

#endif
