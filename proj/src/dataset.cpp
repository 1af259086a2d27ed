// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "dataset.h"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "render.h"
#include "rng.h"
#include "scene.h"

namespace loftgen {

namespace {

using nlohmann::json;

// 17 significant digits identify a double uniquely, so text files written
// through this round-trip bit for bit.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(text.data(), std::streamsize(text.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

const char* size_class_name(SizeClass c) {
  switch (c) {
    case SizeClass::kLarge: return "large";
    case SizeClass::kSmall: return "small";
    case SizeClass::kTiny: return "tiny";
  }
  return "large";
}

// FNV-1a over the raw vertex position bytes; a cheap cross-run fingerprint
// of the generated geometry for determinism diagnostics.
uint64_t mesh_hash(const TriangleMesh& mesh) {
  uint64_t h = 14695981039346656037ull;
  for (const Vec3& p : mesh.positions) {
    const double v[3] = {p.x, p.y, p.z};
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(v);
    for (size_t i = 0; i < sizeof(v); ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::string scene_dir_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%05d", index);
  return buf;
}

json scene_manifest(const SceneSpec& scene, const GeneratorConfig& config, int scene_index,
                    double exposure) {
  json m;
  m["format"] = "loftgen_scene";
  m["version"] = 1;
  m["scene_index"] = scene_index;
  m["seed"] = scene.seed;
  m["config_hash"] = config_hash(config);
  m["exposure"] = exposure;
  m["image"] = {{"width", config.width}, {"height", config.height}, {"spp", config.spp}};
  m["n_cameras"] = scene.cameras.size();
  m["room_box"] = scene.room_box.has_value();
  m["ground_scatter"] = scene.ground_scatter.has_value();
  m["n_lights"] = scene.lights.size();
  m["n_extras"] = scene.extras.size();
  json objects = json::array();
  for (const PlacedObject& o : scene.objects) {
    json jo;
    jo["class"] = size_class_name(o.size_class);
    jo["seed"] = o.shape_seed;
    jo["bounding_radius"] = o.bounding_radius;
    jo["scale"] = o.to_world.scale;
    jo["translation"] = {o.to_world.translation.x, o.to_world.translation.y,
                         o.to_world.translation.z};
    json rot = json::array();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) rot.push_back(o.to_world.rotation.m[r][c]);
    jo["rotation"] = rot;
    jo["n_vertices"] = o.mesh.positions.size();
    jo["n_triangles"] = o.mesh.triangles.size();
    jo["mesh_hash"] = mesh_hash(o.mesh);
    objects.push_back(jo);
  }
  m["objects"] = objects;
  return m;
}

}  // namespace

void write_cameras(const std::vector<CameraModel>& cams, const std::string& path) {
  std::ostringstream out;
  out << "LOFTGEN_CAMERAS 1\n";
  out << "count " << cams.size() << "\n";
  for (size_t i = 0; i < cams.size(); ++i) {
    const CameraModel& cam = cams[i];
    out << "camera " << i << "\n";
    out << "size " << cam.width << " " << cam.height << "\n";
    out << "K\n";
    out << fmt17(cam.fx()) << " 0 " << fmt17(cam.cx()) << "\n";
    out << "0 " << fmt17(cam.fy()) << " " << fmt17(cam.cy()) << "\n";
    out << "0 0 1\n";
    out << "P\n";
    const Vec3 t = cam.cam_offset;
    const double t_rows[3] = {t.x, t.y, t.z};
    for (int r = 0; r < 3; ++r) {
      out << fmt17(cam.world_to_cam.m[r][0]) << " " << fmt17(cam.world_to_cam.m[r][1]) << " "
          << fmt17(cam.world_to_cam.m[r][2]) << " " << fmt17(t_rows[r]) << "\n";
    }
    out << "0 0 0 1\n";
  }
  write_text_file(path, out.str());
}

std::vector<CameraFileEntry> read_cameras(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open camera file: " + path);
  auto expect = [&f, &path](const char* literal) {
    std::string tok;
    if (!(f >> tok) || tok != literal)
      throw std::runtime_error("camera file " + path + ": expected \"" + std::string(literal) +
                               "\", got \"" + tok + "\"");
  };
  expect("LOFTGEN_CAMERAS");
  int version = 0;
  if (!(f >> version) || version != 1)
    throw std::runtime_error("camera file " + path + ": unsupported version");
  expect("count");
  int count = 0;
  if (!(f >> count) || count < 0)
    throw std::runtime_error("camera file " + path + ": bad count");
  std::vector<CameraFileEntry> entries;
  entries.resize(size_t(count));
  for (int i = 0; i < count; ++i) {
    expect("camera");
    int index = 0;
    f >> index;
    CameraFileEntry& e = entries[size_t(i)];
    expect("size");
    f >> e.width >> e.height;
    expect("K");
    for (double& v : e.k) f >> v;
    expect("P");
    for (double& v : e.p) f >> v;
    if (!f || index != i)
      throw std::runtime_error("camera file " + path + ": malformed camera block");
  }
  return entries;
}

void write_scene_record(const SceneSpec& scene, const GeneratorConfig& config, int scene_index,
                        const std::string& dir) {
  std::filesystem::create_directories(dir);
  const Renderer renderer(scene);
  const int n_cams = int(scene.cameras.size());
  std::vector<HdrImage> hdrs;
  hdrs.reserve(size_t(n_cams));
  for (int c = 0; c < n_cams; ++c) hdrs.push_back(renderer.render_hdr(c, config.spp));
  const double exposure = compute_auto_exposure(hdrs);
  for (int c = 0; c < n_cams; ++c) {
    const DepthImage depth = renderer.render_depth(c);
    const RenderTarget target = assemble_target(hdrs[c], depth, exposure);
    write_png_rgb8(dir + "/rgb_" + std::to_string(c) + ".png", encode_srgb(target));
    write_pfm_depth(dir + "/depth_" + std::to_string(c) + ".pfm", depth);
  }
  write_cameras(scene.cameras, dir + "/cameras.txt");
  write_text_file(dir + "/manifest.json",
                  scene_manifest(scene, config, scene_index, exposure).dump(2) + "\n");
}

DatasetResult generate_dataset(const GeneratorConfig& config, const std::string& out_dir,
                               int workers,
                               const std::function<void(const SceneRecord&)>& progress) {
  validate_config(config);
  if (workers < 1) throw ConfigError("config: worker count must be >= 1");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir + ": " +
                                   ec.message());

  const int n = config.n_scenes;
  const SceneParams params = scene_params(config);
  DatasetResult result;
  result.records.resize(size_t(n));
  std::atomic<int> next{0};
  std::mutex progress_mutex;

  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      SceneRecord rec;
      rec.index = i;
      rec.seed = mix_seed(config.global_seed, uint64_t(i));
      rec.dir = out_dir + "/" + scene_dir_name(i);
      try {
        const SceneSpec scene = build_scene(rec.seed, params);
        write_scene_record(scene, config, i, rec.dir);
        rec.ok = true;
      } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
        // Never leave a partial record behind; the manifest marks the gap.
        std::error_code cleanup;
        std::filesystem::remove_all(rec.dir, cleanup);
      }
      {
        std::lock_guard<std::mutex> lock(progress_mutex);
        if (progress) progress(rec);
      }
      result.records[size_t(i)] = std::move(rec);
    }
  };

  const int n_threads = std::max(1, std::min(workers, n));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(size_t(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  json scenes = json::array();
  for (const SceneRecord& rec : result.records) {
    rec.ok ? ++result.n_ok : ++result.n_skipped;
    json js;
    js["index"] = rec.index;
    js["dir"] = scene_dir_name(rec.index);
    js["seed"] = rec.seed;
    js["status"] = rec.ok ? "ok" : "skipped";
    if (!rec.ok) js["error"] = rec.error;
    scenes.push_back(js);
  }
  json m;
  m["format"] = "loftgen_dataset";
  m["version"] = 1;
  m["config"] = json::parse(serialize_config(config));
  m["config_hash"] = config_hash(config);
  m["n_scenes"] = n;
  m["n_ok"] = result.n_ok;
  m["n_skipped"] = result.n_skipped;
  m["scenes"] = scenes;
  write_text_file(out_dir + "/dataset_manifest.json", m.dump(2) + "\n");
  return result;
}

ImageU8 preview_sheet(const std::string& scene_dir) {
  std::vector<ImageU8> views;
  views.reserve(8);
  for (int c = 0; c < 8; ++c)
    views.push_back(read_png_rgb8(scene_dir + "/rgb_" + std::to_string(c) + ".png"));
  const int w = views[0].width, h = views[0].height;
  for (const ImageU8& v : views)
    if (v.width != w || v.height != h)
      throw std::runtime_error("preview: views of " + scene_dir + " differ in size");
  ImageU8 sheet;
  sheet.width = 8 * w;
  sheet.height = h;
  sheet.rgb.resize(size_t(sheet.width) * sheet.height * 3);
  for (int k = 0; k < 8; ++k)
    for (int y = 0; y < h; ++y) {
      const uint8_t* src = &views[size_t(k)].rgb[size_t(y) * w * 3];
      uint8_t* dst = &sheet.rgb[(size_t(y) * sheet.width + size_t(k) * w) * 3];
      std::copy(src, src + size_t(w) * 3, dst);
    }
  return sheet;
}

ImageU8 preview_grid(const std::vector<std::string>& scene_dirs) {
  if (scene_dirs.empty()) throw std::runtime_error("preview: no scene directories given");
  std::vector<ImageU8> rows;
  rows.reserve(scene_dirs.size());
  for (const std::string& dir : scene_dirs) rows.push_back(preview_sheet(dir));
  const int w = rows[0].width, h = rows[0].height;
  for (const ImageU8& r : rows)
    if (r.width != w || r.height != h)
      throw std::runtime_error("preview: scene sheets differ in size");
  ImageU8 grid;
  grid.width = w;
  grid.height = int(rows.size()) * h;
  grid.rgb.resize(size_t(grid.width) * grid.height * 3);
  for (size_t r = 0; r < rows.size(); ++r)
    std::copy(rows[r].rgb.begin(), rows[r].rgb.end(),
              grid.rgb.begin() + std::ptrdiff_t(r * rows[r].rgb.size()));
  return grid;
}

}  // namespace loftgen
