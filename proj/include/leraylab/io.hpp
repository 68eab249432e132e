#pragma once

#include <string>

#include "leraylab/field.hpp"

namespace leray {

/// Binary field container: 64-byte header (magic "LERAYFLD", version,
/// dim, n, ncomp, box_length, alpha, time) followed by component-major
/// little-endian float64 physical values, last axis fastest.
struct SnapshotMeta {
    double alpha = 0.0;
    double time = 0.0;
};

void write_snapshot(const std::string& path, const SpectralField& f, const SnapshotMeta& meta);

struct LoadedSnapshot {
    SpectralField field;
    SnapshotMeta meta;
};
LoadedSnapshot read_snapshot(const std::string& path);

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace leray
