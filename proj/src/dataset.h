// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Batch dataset generation and the on-disk record format.
//
// A dataset is a directory of scene records plus one dataset_manifest.json.
// Scene i (zero-based) lives in scene_%05d and contains exactly:
//   rgb_0.png .. rgb_7.png      8-bit sRGB renders, one per camera
//   depth_0.pfm .. depth_7.pfm  float32 depth along the camera z axis,
//                               0 where no geometry was hit
//   cameras.txt                 intrinsics and world-to-camera matrices
//   manifest.json               seed, config hash, exposure, object summary
//
// Scene i is built from seed mix_seed(global_seed, i), so every record is a
// pure function of (config, i): reruns and any worker count produce
// byte-identical trees. Scenes whose arrangement fails after the configured
// retries are logged and skipped; the dataset manifest records the gap.
//
// cameras.txt layout (all numbers printed with 17 significant digits):
//   LOFTGEN_CAMERAS 1
//   count <n>
//   camera <i>
//   size <width> <height>
//   K
//   <3 rows of 3>        row-major pinhole intrinsics, fx == fy
//   P
//   <4 rows of 4>        row-major world-to-camera, x right / y down /
//                        z forward, last row 0 0 0 1

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "camera.h"
#include "config.h"
#include "image_io.h"

namespace loftgen {

struct SceneRecord {
  int index = 0;
  uint64_t seed = 0;
  std::string dir;  // "<out_dir>/scene_%05d"
  bool ok = false;
  std::string error;  // set when !ok
};

struct DatasetResult {
  std::vector<SceneRecord> records;  // one per scene index, in order
  int n_ok = 0;
  int n_skipped = 0;
};

// Raw matrices read back from cameras.txt.
struct CameraFileEntry {
  int width = 0, height = 0;
  std::array<double, 9> k{};   // row-major 3x3
  std::array<double, 16> p{};  // row-major 4x4 world-to-camera
};

// Renders every view of one already-built scene and writes a complete
// record into `dir` (created if needed). The exposure is pooled over all
// views, so the record is self-consistent.
void write_scene_record(const SceneSpec& scene, const GeneratorConfig& config, int scene_index,
                        const std::string& dir);

// Builds and writes scenes 0..n_scenes-1 under out_dir with a pool of
// `workers` threads (1 = serial; output is identical either way).
// `progress`, when set, is called once per finished scene from a single
// lock; it must not throw. Throws ConfigError for an invalid config and
// std::runtime_error when out_dir cannot be created.
DatasetResult generate_dataset(const GeneratorConfig& config, const std::string& out_dir,
                               int workers,
                               const std::function<void(const SceneRecord&)>& progress = {});

void write_cameras(const std::vector<CameraModel>& cams, const std::string& path);
std::vector<CameraFileEntry> read_cameras(const std::string& path);

// One scene as a horizontal strip of its 8 views.
ImageU8 preview_sheet(const std::string& scene_dir);

// Several scenes stacked vertically, one sheet row per scene.
ImageU8 preview_grid(const std::vector<std::string>& scene_dirs);

}  // namespace loftgen
