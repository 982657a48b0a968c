#pragma once

#include <filesystem>
#include <vector>

#include "mpland/experiments.hpp"

namespace mpland::io {

/// Writes values_A.txt, values_B.txt, mean_A/, mean_B/, features.csv and
/// stats.json under dir. Returns the written paths.
std::vector<std::filesystem::path> write_circles_report(const CirclesConfig& config,
                                                        const CirclesResult& result,
                                                        const std::filesystem::path& dir);

/// Writes data.txt, grid/ and stats.json.
std::vector<std::filesystem::path> write_modes_report(const ModesConfig& config,
                                                      const ModesResult& result,
                                                      const std::filesystem::path& dir);

/// Writes mean_<space>/ per space, features.csv and stats.json.
std::vector<std::filesystem::path> write_curvature_report(const CurvatureConfig& config,
                                                          const CurvatureResult& result,
                                                          const std::filesystem::path& dir);

}  // namespace mpland::io
