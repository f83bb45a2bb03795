#pragma once

#include <filesystem>
#include <string>

#include "boltzlab/phase_grid.hpp"

namespace boltzlab {

/// One distribution-function snapshot on disk.
///
/// Format: a first line `# {json}` carrying the grid metadata and the time,
/// then a CSV header `ix0,ix1[,ix2],iv0,iv1[,iv2],value` and one row per
/// phase-space node. Values are written with 17 significant digits so a
/// write/read cycle is bit-exact.
struct Snapshot {
  DistributionFunction f;
  double time = 0.0;
};

void write_snapshot(const std::filesystem::path& path, const DistributionFunction& f,
                    double time = 0.0);

/// Throws std::runtime_error naming the path on I/O failures and
/// std::invalid_argument on malformed or inconsistent content.
Snapshot read_snapshot(const std::filesystem::path& path);

/// The JSON object written in the snapshot header.
std::string grid_metadata_json(const PhaseGrid& grid, double time);

}  // namespace boltzlab
