#pragma once

#include <string>

#include "esmicp/geometry.hpp"

namespace esmicp {

enum class CloudFormat { pcd_ascii, off, xyz };

// From the file extension: .pcd, .off, .xyz (case-insensitive).
CloudFormat format_from_path(const std::string& path);
CloudFormat format_from_name(const std::string& name);  // "pcd" | "off" | "xyz"

// PCD: ASCII data only, FIELDS must include x y z (extras ignored);
// binary data is rejected. OFF: vertices only, faces ignored. XYZ:
// whitespace triples, lines starting with '#' skipped. Parse failures
// report the offending line number. Non-finite coordinates are rejected.
PointCloud read_cloud(const std::string& path, CloudFormat format);
PointCloud read_cloud(const std::string& path);  // format from extension

// Coordinates written with 17 significant digits so a read round-trips
// exactly.
void write_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format);
void write_cloud(const PointCloud& cloud, const std::string& path);

struct VoxelFilterParams {
  double leaf = 0.01;  // model units, > 0
};

// One point per occupied voxel (the centroid of its members); voxels are
// cubes of side leaf anchored at the minimum corner of the bounding box.
// Output ordered by voxel index, x fastest.
PointCloud voxel_downsample(const PointCloud& cloud, const VoxelFilterParams& params);

}  // namespace esmicp
