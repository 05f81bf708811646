#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "podrbf/optimizer.hpp"
#include "podrbf/pod.hpp"
#include "podrbf/refine.hpp"
#include "podrbf/sampling.hpp"
#include "podrbf/snapshot.hpp"
#include "podrbf/surrogate.hpp"

namespace podrbf {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// CSV files use '#' comment lines for metadata and 17 significant digits,
// so values survive a write/read cycle exactly. Readers throw FormatError.

void write_samples_csv(const fs::path& path, const SampleSet& samples);
SampleSet read_samples_csv(const fs::path& path);

/// One row per grid time: t, y_1..y_ny, u_1..u_nu.
void write_trajectory_csv(const fs::path& path, const Trajectory& traj);

/// Column j holds snapshot j; one row per stacked entry.
void write_snapshots_csv(const fs::path& path, const SnapshotMatrix& snapshots);

/// 16-byte header ("SNAP", u32 rows, u32 cols, u32 zero) followed by the
/// matrix in row-major order as little-endian doubles.
void write_matrix_binary(const fs::path& path, const Matrix& Y);
Matrix read_matrix_binary(const fs::path& path);

/// index, sigma, energy.
void write_spectrum_csv(const fs::path& path, const Vector& sigma);

/// Binary dump of everything predict() needs.
void write_surrogate(const fs::path& path, const Surrogate& s);
Surrogate read_surrogate(const fs::path& path);

/// Report objects. With `deterministic` every wall-time field is written as 0.
json to_json(const Vector& v);
json to_json(const Box& box);
json to_json(const ErrorReport& report);
json to_json(const OptResult& result, bool deterministic);
json to_json(const CriterionValues& values);
json to_json(const RefineResult& result, bool deterministic);

/// Pretty-printed with a trailing newline. Non-finite numbers become null.
void write_json(const fs::path& path, const json& doc);

}  // namespace podrbf
