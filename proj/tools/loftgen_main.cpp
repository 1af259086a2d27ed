// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C API.
//
//   loftgen generate --config cfg.json --seed 7 --scenes 100 --out data/
//   loftgen preview --scene data/scene_00000 --out sheet.png
//   loftgen export-mesh --seed 7 --out shape.obj
//
// Exit codes: 0 success, 1 configuration or runtime error, 2 partial
// (some scenes were skipped; see the dataset manifest).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "loftgen/loftgen.h"

namespace {

// --workers default: LOFTGEN_WORKERS when set to a sane value, else all
// hardware threads.
int default_workers() {
  if (const char* env = std::getenv("LOFTGEN_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return int(v);
    std::fprintf(stderr, "warning: ignoring invalid LOFTGEN_WORKERS=\"%s\"\n", env);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

int status_to_exit(lg_status s) {
  switch (s) {
    case LG_OK: return 0;
    case LG_ERROR_PARTIAL: return 2;
    case LG_ERROR_CONFIG:
    case LG_ERROR_RUNTIME: return 1;
  }
  return 1;
}

int fail_with_last_error() {
  std::fprintf(stderr, "error: %s\n", lg_last_error());
  return 1;
}

struct ConfigHandle {
  lg_config* ptr = nullptr;
  ~ConfigHandle() { lg_config_destroy(ptr); }
};

void progress_line(int32_t index, int32_t ok, void*) {
  std::fprintf(stderr, "scene %05d %s\n", index, ok != 0 ? "ok" : "SKIPPED");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("loftgen ") + lg_version() +
               " - procedural multi-view stereo dataset generator"};
  app.require_subcommand(1);

  std::string g_config, g_out;
  uint64_t g_seed = 0;
  int g_scenes = 0;
  int g_workers = default_workers();
  bool g_quiet = false;
  CLI::App* gen = app.add_subcommand("generate", "Build and render a batch of scenes");
  gen->add_option("--config", g_config, "JSON configuration file (defaults apply when omitted)");
  CLI::Option* seed_opt = gen->add_option("--seed", g_seed, "Override the global seed");
  CLI::Option* scenes_opt = gen->add_option("--scenes", g_scenes, "Override the scene count");
  gen->add_option("--out", g_out, "Output dataset directory")->required();
  gen->add_option("--workers", g_workers,
                  "Worker threads (default: LOFTGEN_WORKERS or all hardware threads)");
  gen->add_flag("--quiet", g_quiet, "Suppress per-scene progress lines");

  std::vector<std::string> p_scenes;
  std::string p_out;
  CLI::App* prev =
      app.add_subcommand("preview", "Tile a scene's 8 views into one contact-sheet PNG");
  prev->add_option("--scene", p_scenes, "Scene directory (repeat for a multi-row grid)")
      ->required();
  prev->add_option("--out", p_out, "Output PNG path")->required();

  uint64_t m_seed = 0;
  std::string m_out, m_config;
  CLI::App* mesh = app.add_subcommand("export-mesh", "Write one generated shape as Wavefront OBJ");
  mesh->add_option("--seed", m_seed, "Shape seed")->required();
  mesh->add_option("--out", m_out, "Output .obj path")->required();
  mesh->add_option("--config", m_config, "JSON configuration file for shape parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // --help exits 0; any usage error is a config error
  }

  if (gen->parsed()) {
    ConfigHandle cfg;
    cfg.ptr = g_config.empty() ? lg_config_create() : lg_config_from_file(g_config.c_str());
    if (cfg.ptr == nullptr) return fail_with_last_error();
    if (seed_opt->count() > 0 && lg_config_set_seed(cfg.ptr, g_seed) != LG_OK)
      return fail_with_last_error();
    if (scenes_opt->count() > 0 && lg_config_set_scenes(cfg.ptr, g_scenes) != LG_OK)
      return fail_with_last_error();
    if (lg_config_validate(cfg.ptr) != LG_OK) return fail_with_last_error();
    if (g_workers < 1) {
      std::fprintf(stderr, "error: --workers must be >= 1\n");
      return 1;
    }
    lg_generate_stats stats{};
    const lg_status status = lg_generate(cfg.ptr, g_out.c_str(), g_workers,
                                         g_quiet ? nullptr : progress_line, nullptr, &stats);
    if (status == LG_OK) {
      std::fprintf(stderr, "wrote %d scenes to %s\n", int(stats.n_ok), g_out.c_str());
    } else {
      std::fprintf(stderr, "error: %s\n", lg_last_error());
    }
    return status_to_exit(status);
  }

  if (prev->parsed()) {
    lg_status status;
    if (p_scenes.size() == 1) {
      status = lg_preview_scene(p_scenes[0].c_str(), p_out.c_str());
    } else {
      std::vector<const char*> dirs;
      dirs.reserve(p_scenes.size());
      for (const std::string& s : p_scenes) dirs.push_back(s.c_str());
      status = lg_preview_grid(dirs.data(), int32_t(dirs.size()), p_out.c_str());
    }
    if (status != LG_OK) std::fprintf(stderr, "error: %s\n", lg_last_error());
    return status_to_exit(status);
  }

  if (mesh->parsed()) {
    ConfigHandle cfg;
    if (!m_config.empty()) {
      cfg.ptr = lg_config_from_file(m_config.c_str());
      if (cfg.ptr == nullptr) return fail_with_last_error();
    }
    const lg_status status = lg_export_mesh(cfg.ptr, m_seed, m_out.c_str());
    if (status != LG_OK) std::fprintf(stderr, "error: %s\n", lg_last_error());
    return status_to_exit(status);
  }

  return 1;
}
