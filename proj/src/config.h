// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dataset configuration: one JSON document covering every generator knob,
// with defaults matching the shipped recipe (8 large objects, 320 small,
// 50-50 placement, room box and scatter at probability 0.5, 80 lights,
// 640x480, 1 sample per pixel). Parsing is strict — unknown keys raise an
// error naming the full key path — and serialization is canonical, so the
// 64-bit config hash recorded in dataset manifests is stable. Named variant
// presets expose every documented single-axis study configuration.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "scene.h"

namespace loftgen {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometry source for generated objects. Only kNurbs is implemented; the
// other labels parse (so documents that request them get a clear diagnostic)
// but are rejected by validate_config.
enum class ShapeType { kNurbs, kPrimitives, kPrimitivesNurbs };

// Camera-rig ranges in the units the config file uses (degrees); converted
// to radians by scene_params().
struct RigConfig {
  int n_cameras = 8;
  double elevation_min_deg = -5.0, elevation_max_deg = 30.0;
  double azimuth_span_deg = 45.0;
  double radius_min = 2.5, radius_max = 4.0;  // of the main-object radius
  double fov_min_deg = 35.0, fov_max_deg = 65.0;
  double perturb_sigma_deg = 2.0;
};

struct GeneratorConfig {
  uint64_t global_seed = 0;
  int n_scenes = 1;
  int width = 640;  // 4:3 aspect enforced by validate_config
  int height = 480;
  int spp = 1;  // color samples per pixel; depth always uses center rays
  ShapeType shape_type = ShapeType::kNurbs;
  TextureMode texture_mode = TextureMode::kNoiseBoolean;
  RigConfig rig;
  ShapeParams shape;
  MaterialSampleParams material;
  ArrangeParams arrange;
  LightParams lights;
  TessellationParams tess;
};

// Assembles the scene-module parameter struct: rig angles in radians, image
// size copied into the rig, remaining blocks verbatim.
SceneParams scene_params(const GeneratorConfig& config);

// Parses a JSON object; absent keys keep their defaults, unknown keys raise
// ConfigError with the full key path. "{}" yields the default config.
// Parsing checks types only; call validate_config for range checks.
GeneratorConfig parse_config(const std::string& json_text);
GeneratorConfig parse_config_file(const std::string& path);

// Canonical JSON (sorted keys, two-space indent) listing every field.
// parse_config(serialize_config(c)) reproduces c bit for bit.
std::string serialize_config(const GeneratorConfig& config);

// Range and consistency checks; throws ConfigError naming the field.
void validate_config(const GeneratorConfig& config);

// FNV-1a (64-bit) over the canonical serialization.
uint64_t config_hash(const GeneratorConfig& config);

// Named single-axis variants of the default recipe, e.g. "displacement/off",
// "lights/5-20", "cameras/fov-35". Includes "default". Every label yields a
// config that passes validate_config.
std::vector<std::string> variant_labels();
GeneratorConfig variant_config(const std::string& label);

}  // namespace loftgen
