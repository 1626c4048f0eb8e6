/// @file io.hpp
/// @brief Snapshot and trajectory persistence (schema "ovallab-flow-1").
///
/// Layout of a trajectory directory:
///   manifest.json              config echo, snapshot tau list, per-step
///                              scalars, schema id
///   snapshot_NNNN.csv          one file per stored snapshot, NNNN = index
///
/// Radial snapshot CSV: two blocks, "y,v" (outer chart) then "v,Y" (tip
/// chart, omitted when disabled), each value %.17g so re-reading reproduces
/// the exact doubles.  Grid snapshot CSV: row-major v matrix, one grid row
/// per line, with R/h/tau in comments; zeros mark masked-out nodes.
/// No timestamps anywhere: reruns are byte-identical.

#pragma once

#include <string>

#include "ovallab/profile_flow/flow.hpp"

namespace ovallab::flow {

inline constexpr const char* kFlowSchemaId = "ovallab-flow-1";

void write_radial_snapshot_csv(const std::string& path,
                               const ProfileState& state);
void write_grid_snapshot_csv(const std::string& path,
                             const GridProfileState& state);

ProfileState read_radial_snapshot_csv(const std::string& path,
                                      const CylinderParams& params);
GridProfileState read_grid_snapshot_csv(const std::string& path,
                                        const CylinderParams& params);

/// Writes manifest.json + snapshot files into `dir` (created if needed).
void write_trajectory(const std::string& dir, const Trajectory& traj);

/// Reads back what write_trajectory wrote (config echo included).
Trajectory read_trajectory(const std::string& dir);

}  // namespace ovallab::flow
