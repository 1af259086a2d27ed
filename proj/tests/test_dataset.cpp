// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "render.h"
#include "rng.h"
#include "scene.h"

using namespace loftgen;
namespace fs = std::filesystem;

namespace {

// Small, fast recipe: 160x120 keeps the 4:3 contract, two large objects and
// a couple of small ones, six lights, coarse tessellation.
GeneratorConfig tiny_config() {
  return parse_config(R"({
    "n_scenes": 2,
    "image": {"width": 160, "height": 120, "spp": 1},
    "arrangement": {"n_large": 2, "n_small": 8},
    "scatter": {"count": 6},
    "lights": {"count": [6, 6]},
    "tessellation": {"large": [16, 12, 0], "small": [10, 8, 0], "tiny": [8, 6, 0]}
  })");
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("loftgen_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(bool(f));
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return bytes;
}

// Relative path -> file bytes for the whole tree.
std::map<std::string, std::string> tree_bytes(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file())
      files[fs::relative(entry.path(), root).generic_string()] = read_file(entry.path());
  return files;
}

}  // namespace

TEST_CASE("camera file round-trips matrices bit for bit") {
  Pcg32 rng(99);
  RigParams rig;
  rig.width = 320;
  rig.height = 240;
  const std::vector<CameraModel> cams = place_cameras(rng, rig);
  const fs::path dir = fresh_dir("cameras");
  fs::create_directories(dir);
  const std::string path = (dir / "cameras.txt").string();
  write_cameras(cams, path);

  const std::vector<CameraFileEntry> entries = read_cameras(path);
  REQUIRE(entries.size() == cams.size());
  for (size_t i = 0; i < cams.size(); ++i) {
    const CameraModel& cam = cams[i];
    const CameraFileEntry& e = entries[i];
    CHECK(e.width == cam.width);
    CHECK(e.height == cam.height);
    CHECK(e.k[0] == cam.fx());
    CHECK(e.k[1] == 0.0);
    CHECK(e.k[2] == cam.cx());
    CHECK(e.k[4] == cam.fy());
    CHECK(e.k[5] == cam.cy());
    CHECK(e.k[6] == 0.0);
    CHECK(e.k[7] == 0.0);
    CHECK(e.k[8] == 1.0);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) CHECK(e.p[size_t(r) * 4 + c] == cam.world_to_cam.m[r][c]);
    }
    CHECK(e.p[3] == cam.cam_offset.x);
    CHECK(e.p[7] == cam.cam_offset.y);
    CHECK(e.p[11] == cam.cam_offset.z);
    CHECK(e.p[12] == 0.0);
    CHECK(e.p[15] == 1.0);
  }
  fs::remove_all(dir);
}

TEST_CASE("unproject-reproject through the written matrices stays under 1e-6 px") {
  Pcg32 rng(7);
  RigParams rig;
  const std::vector<CameraModel> cams = place_cameras(rng, rig);
  const fs::path dir = fresh_dir("cameras_reproject");
  fs::create_directories(dir);
  const std::string path = (dir / "cameras.txt").string();
  write_cameras(cams, path);
  const std::vector<CameraFileEntry> entries = read_cameras(path);

  Pcg32 pix(123);
  double worst = 0.0;
  for (const CameraFileEntry& e : entries) {
    const double fx = e.k[0], fy = e.k[4], cx = e.k[2], cy = e.k[5];
    for (int trial = 0; trial < 200; ++trial) {
      const double u = pix.uniform(0.0, double(e.width));
      const double v = pix.uniform(0.0, double(e.height));
      const double z = pix.uniform(0.5, 10.0);
      // Unproject to world through the file's K and P; the rotation block
      // is orthonormal, so its inverse is the transpose.
      const double xc = (u - cx) / fx * z, yc = (v - cy) / fy * z;
      double pw[3];
      const double pc[3] = {xc - e.p[3], yc - e.p[7], z - e.p[11]};
      for (int r = 0; r < 3; ++r)
        pw[r] = e.p[0 * 4 + r] * pc[0] + e.p[1 * 4 + r] * pc[1] + e.p[2 * 4 + r] * pc[2];
      // Reproject.
      double qc[3];
      for (int r = 0; r < 3; ++r)
        qc[r] = e.p[size_t(r) * 4 + 0] * pw[0] + e.p[size_t(r) * 4 + 1] * pw[1] +
                e.p[size_t(r) * 4 + 2] * pw[2] + e.p[size_t(r) * 4 + 3];
      const double u2 = fx * qc[0] / qc[2] + cx;
      const double v2 = fy * qc[1] / qc[2] + cy;
      worst = std::max({worst, std::abs(u2 - u), std::abs(v2 - v)});
    }
  }
  CHECK(worst < 1e-6);
  fs::remove_all(dir);
}

TEST_CASE("generated records are complete and the manifest matches") {
  GeneratorConfig cfg = tiny_config();
  cfg.global_seed = 31337;
  const fs::path dir = fresh_dir("records");
  const DatasetResult result = generate_dataset(cfg, dir.string(), 1);
  REQUIRE(result.records.size() == 2);
  CHECK(result.n_ok == 2);
  CHECK(result.n_skipped == 0);

  for (const SceneRecord& rec : result.records) {
    CHECK(rec.ok);
    CHECK(rec.seed == mix_seed(cfg.global_seed, uint64_t(rec.index)));
    // Exactly 8 RGB + 8 depth + cameras.txt + manifest.json.
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(rec.dir))
      names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    REQUIRE(names.size() == 18);
    for (int c = 0; c < 8; ++c) {
      CHECK(fs::exists(fs::path(rec.dir) / ("rgb_" + std::to_string(c) + ".png")));
      CHECK(fs::exists(fs::path(rec.dir) / ("depth_" + std::to_string(c) + ".pfm")));
    }
    CHECK(fs::exists(fs::path(rec.dir) / "cameras.txt"));
    CHECK(fs::exists(fs::path(rec.dir) / "manifest.json"));

    const nlohmann::json m = nlohmann::json::parse(read_file(fs::path(rec.dir) / "manifest.json"));
    CHECK(m.at("seed").get<uint64_t>() == rec.seed);
    CHECK(m.at("config_hash").get<uint64_t>() == config_hash(cfg));
    CHECK(m.at("n_cameras").get<int>() == 8);
    CHECK(m.at("objects").size() >= 2);
    CHECK(m.at("exposure").get<double>() > 0.0);

    // Images and depth read back at the configured size, and the scene
    // re-renders to the identical record content.
    const ImageU8 rgb0 = read_png_rgb8(rec.dir + "/rgb_0.png");
    CHECK(rgb0.width == cfg.width);
    CHECK(rgb0.height == cfg.height);
    const DepthImage d0 = read_pfm_depth(rec.dir + "/depth_0.pfm");
    CHECK(d0.width == cfg.width);
    CHECK(d0.height == cfg.height);
  }

  const nlohmann::json dm = nlohmann::json::parse(read_file(dir / "dataset_manifest.json"));
  CHECK(dm.at("n_scenes").get<int>() == 2);
  CHECK(dm.at("n_ok").get<int>() == 2);
  CHECK(dm.at("n_skipped").get<int>() == 0);
  CHECK(dm.at("config_hash").get<uint64_t>() == config_hash(cfg));
  CHECK(dm.at("scenes").size() == 2);
  CHECK(dm.at("scenes")[0].at("status") == "ok");
  // The embedded config reproduces the one we ran with.
  CHECK(serialize_config(parse_config(dm.at("config").dump())) == serialize_config(cfg));
  fs::remove_all(dir);
}

TEST_CASE("worker counts do not change a single byte of the dataset") {
  GeneratorConfig cfg = tiny_config();
  cfg.global_seed = 777;
  cfg.n_scenes = 3;
  const fs::path dir1 = fresh_dir("workers1");
  const fs::path dir2 = fresh_dir("workers4");
  const DatasetResult r1 = generate_dataset(cfg, dir1.string(), 1);
  const DatasetResult r2 = generate_dataset(cfg, dir2.string(), 4);
  CHECK(r1.n_ok == 3);
  CHECK(r2.n_ok == 3);
  const auto t1 = tree_bytes(dir1);
  const auto t2 = tree_bytes(dir2);
  REQUIRE(t1.size() == t2.size());
  REQUIRE(t1.size() == 3 * 18 + 1);
  for (const auto& [rel, bytes] : t1) {
    CAPTURE(rel);
    auto it = t2.find(rel);
    REQUIRE(it != t2.end());
    CHECK(bytes == it->second);
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("impossible arrangements are skipped, logged, and leave no files") {
  GeneratorConfig cfg = tiny_config();
  cfg.n_scenes = 2;
  // Cameras land inside the main object, so every other large object is
  // occluded and placement must fail after the bounded retries.
  cfg.rig.radius_min = 0.05;
  cfg.rig.radius_max = 0.05;
  cfg.arrange.max_scene_attempts = 2;
  cfg.arrange.place_rounds = 1;
  cfg.arrange.place_retries_per_round = 2;
  const fs::path dir = fresh_dir("skipped");
  int progress_calls = 0;
  const DatasetResult result =
      generate_dataset(cfg, dir.string(), 1, [&](const SceneRecord& rec) {
        ++progress_calls;
        CHECK_FALSE(rec.ok);
        CHECK_FALSE(rec.error.empty());
      });
  CHECK(progress_calls == 2);
  CHECK(result.n_ok == 0);
  CHECK(result.n_skipped == 2);
  CHECK_FALSE(fs::exists(dir / "scene_00000"));
  CHECK_FALSE(fs::exists(dir / "scene_00001"));
  const nlohmann::json dm = nlohmann::json::parse(read_file(dir / "dataset_manifest.json"));
  CHECK(dm.at("n_skipped").get<int>() == 2);
  CHECK(dm.at("scenes")[0].at("status") == "skipped");
  CHECK_FALSE(dm.at("scenes")[0].at("error").get<std::string>().empty());
  fs::remove_all(dir);
}

TEST_CASE("preview sheet tiles the eight views in order") {
  GeneratorConfig cfg = tiny_config();
  cfg.global_seed = 4242;
  cfg.n_scenes = 1;
  const fs::path dir = fresh_dir("preview");
  const DatasetResult result = generate_dataset(cfg, dir.string(), 1);
  REQUIRE(result.n_ok == 1);
  const std::string scene_dir = result.records[0].dir;

  const ImageU8 sheet = preview_sheet(scene_dir);
  CHECK(sheet.width == 8 * cfg.width);
  CHECK(sheet.height == cfg.height);
  for (int k = 0; k < 8; ++k) {
    const ImageU8 view = read_png_rgb8(scene_dir + "/rgb_" + std::to_string(k) + ".png");
    bool equal = true;
    for (int y = 0; y < view.height && equal; ++y)
      for (int x = 0; x < view.width && equal; ++x)
        for (int ch = 0; ch < 3; ++ch) {
          const size_t src = (size_t(y) * view.width + x) * 3 + size_t(ch);
          const size_t dst = (size_t(y) * sheet.width + size_t(k) * view.width + x) * 3 +
                             size_t(ch);
          if (view.rgb[src] != sheet.rgb[dst]) {
            equal = false;
            break;
          }
        }
    CHECK(equal);
  }

  const ImageU8 grid = preview_grid({scene_dir, scene_dir});
  CHECK(grid.width == sheet.width);
  CHECK(grid.height == 2 * sheet.height);
  CHECK_THROWS(preview_sheet((dir / "missing").string()));
  fs::remove_all(dir);
}
