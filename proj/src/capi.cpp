// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "loftgen/loftgen.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "config.h"
#include "dataset.h"
#include "image_io.h"
#include "scene.h"

struct lg_config {
  loftgen::GeneratorConfig cfg;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(::operator new(s.size() + 1, std::nothrow));
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `fn` and funnels every exception into (status, lg_last_error).
template <typename Fn>
lg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const loftgen::ConfigError& e) {
    set_error(e.what());
    return LG_ERROR_CONFIG;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return LG_ERROR_CONFIG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return LG_ERROR_RUNTIME;
  } catch (...) {
    set_error("unknown error");
    return LG_ERROR_RUNTIME;
  }
}

template <typename Fn>
lg_config* guarded_config(Fn&& fn) {
  lg_config* out = nullptr;
  const lg_status status = guarded([&]() {
    out = new lg_config{fn()};
    return LG_OK;
  });
  return status == LG_OK ? out : nullptr;
}

void write_obj(const std::string& path, const loftgen::TriangleMesh& mesh) {
  std::ostringstream out;
  out << "# loftgen mesh\n";
  char buf[128];
  for (const loftgen::Vec3& p : mesh.positions) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
    out << buf;
  }
  for (const loftgen::Vec3& n : mesh.normals) {
    std::snprintf(buf, sizeof(buf), "vn %.17g %.17g %.17g\n", n.x, n.y, n.z);
    out << buf;
  }
  for (const auto& tri : mesh.triangles) {
    // OBJ indices are 1-based; reuse the vertex index for its normal.
    out << "f " << tri[0] + 1 << "//" << tri[0] + 1 << " " << tri[1] + 1 << "//" << tri[1] + 1
        << " " << tri[2] + 1 << "//" << tri[2] + 1 << "\n";
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) throw std::runtime_error("cannot open for writing: " + path);
  const std::string text = out.str();
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw std::runtime_error("write failed: " + path);
}

}  // namespace

extern "C" {

const char* lg_version(void) { return "0.1.0"; }

const char* lg_last_error(void) { return g_last_error.c_str(); }

lg_config* lg_config_create(void) {
  return guarded_config([]() { return loftgen::GeneratorConfig{}; });
}

lg_config* lg_config_from_json(const char* json_text) {
  if (json_text == nullptr) {
    set_error("json_text is NULL");
    return nullptr;
  }
  return guarded_config([&]() { return loftgen::parse_config(json_text); });
}

lg_config* lg_config_from_file(const char* path) {
  if (path == nullptr) {
    set_error("path is NULL");
    return nullptr;
  }
  return guarded_config([&]() { return loftgen::parse_config_file(path); });
}

lg_config* lg_config_variant(const char* label) {
  if (label == nullptr) {
    set_error("label is NULL");
    return nullptr;
  }
  return guarded_config([&]() { return loftgen::variant_config(label); });
}

void lg_config_destroy(lg_config* cfg) { delete cfg; }

char* lg_config_to_json(const lg_config* cfg) {
  if (cfg == nullptr) {
    set_error("cfg is NULL");
    return nullptr;
  }
  char* out = nullptr;
  guarded([&]() {
    out = copy_string(loftgen::serialize_config(cfg->cfg));
    if (out == nullptr) throw std::bad_alloc();
    return LG_OK;
  });
  return out;
}

char* lg_variant_labels(void) {
  char* out = nullptr;
  guarded([&]() {
    std::string joined;
    for (const std::string& label : loftgen::variant_labels()) {
      joined += label;
      joined += '\n';
    }
    out = copy_string(joined);
    if (out == nullptr) throw std::bad_alloc();
    return LG_OK;
  });
  return out;
}

void lg_string_free(char* text) { ::operator delete(text, std::nothrow); }

lg_status lg_config_validate(const lg_config* cfg) {
  if (cfg == nullptr) {
    set_error("cfg is NULL");
    return LG_ERROR_CONFIG;
  }
  return guarded([&]() {
    loftgen::validate_config(cfg->cfg);
    return LG_OK;
  });
}

uint64_t lg_config_hash(const lg_config* cfg) {
  if (cfg == nullptr) return 0;
  return loftgen::config_hash(cfg->cfg);
}

lg_status lg_config_set_seed(lg_config* cfg, uint64_t seed) {
  if (cfg == nullptr) {
    set_error("cfg is NULL");
    return LG_ERROR_CONFIG;
  }
  cfg->cfg.global_seed = seed;
  return LG_OK;
}

lg_status lg_config_set_scenes(lg_config* cfg, int32_t n_scenes) {
  if (cfg == nullptr || n_scenes < 0) {
    set_error(cfg == nullptr ? "cfg is NULL" : "n_scenes must be >= 0");
    return LG_ERROR_CONFIG;
  }
  cfg->cfg.n_scenes = n_scenes;
  return LG_OK;
}

lg_status lg_generate(const lg_config* cfg, const char* out_dir, int32_t workers,
                      lg_progress_fn progress, void* user, lg_generate_stats* stats) {
  if (cfg == nullptr || out_dir == nullptr) {
    set_error(cfg == nullptr ? "cfg is NULL" : "out_dir is NULL");
    return LG_ERROR_CONFIG;
  }
  return guarded([&]() {
    std::function<void(const loftgen::SceneRecord&)> cb;
    if (progress != nullptr) {
      cb = [progress, user](const loftgen::SceneRecord& rec) {
        progress(int32_t(rec.index), rec.ok ? 1 : 0, user);
      };
    }
    const loftgen::DatasetResult result =
        loftgen::generate_dataset(cfg->cfg, out_dir, int(workers), cb);
    if (stats != nullptr) {
      stats->n_scenes = int32_t(result.records.size());
      stats->n_ok = int32_t(result.n_ok);
      stats->n_skipped = int32_t(result.n_skipped);
    }
    if (result.n_skipped > 0) {
      set_error(std::to_string(result.n_skipped) + " of " +
                std::to_string(result.records.size()) + " scenes were skipped");
      return LG_ERROR_PARTIAL;
    }
    return LG_OK;
  });
}

lg_status lg_preview_scene(const char* scene_dir, const char* out_png) {
  if (scene_dir == nullptr || out_png == nullptr) {
    set_error("scene_dir and out_png must not be NULL");
    return LG_ERROR_CONFIG;
  }
  return guarded([&]() {
    loftgen::write_png_rgb8(out_png, loftgen::preview_sheet(scene_dir));
    return LG_OK;
  });
}

lg_status lg_preview_grid(const char* const* scene_dirs, int32_t n, const char* out_png) {
  if (scene_dirs == nullptr || n <= 0 || out_png == nullptr) {
    set_error("need at least one scene directory and an output path");
    return LG_ERROR_CONFIG;
  }
  return guarded([&]() {
    std::vector<std::string> dirs;
    dirs.reserve(size_t(n));
    for (int32_t i = 0; i < n; ++i) {
      if (scene_dirs[i] == nullptr) throw std::invalid_argument("scene directory is NULL");
      dirs.emplace_back(scene_dirs[i]);
    }
    loftgen::write_png_rgb8(out_png, loftgen::preview_grid(dirs));
    return LG_OK;
  });
}

lg_status lg_export_mesh(const lg_config* cfg, uint64_t seed, const char* out_obj) {
  if (out_obj == nullptr) {
    set_error("out_obj is NULL");
    return LG_ERROR_CONFIG;
  }
  return guarded([&]() {
    const loftgen::GeneratorConfig config = cfg != nullptr ? cfg->cfg : loftgen::GeneratorConfig{};
    loftgen::validate_config(config);
    const loftgen::SceneParams params = loftgen::scene_params(config);
    const loftgen::GeneratedShape shape =
        loftgen::generate_shape(seed, params, params.tess.large_res_u, params.tess.large_res_v,
                                params.tess.large_subdiv);
    write_obj(out_obj, shape.mesh);
    return LG_OK;
  });
}

}  // extern "C"
