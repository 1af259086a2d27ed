// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.h"

#include <cmath>
#include <set>
#include <string>

#include <doctest.h>

#include "vec.h"

using namespace loftgen;

TEST_CASE("empty document yields the default recipe") {
  const GeneratorConfig c = parse_config("{}");
  CHECK(c.global_seed == 0);
  CHECK(c.width == 640);
  CHECK(c.height == 480);
  CHECK(c.spp == 1);
  CHECK(c.shape_type == ShapeType::kNurbs);
  CHECK(c.texture_mode == TextureMode::kNoiseBoolean);
  CHECK(c.rig.n_cameras == 8);
  CHECK(c.arrange.n_large == 8);
  CHECK(c.arrange.n_small == 320);
  CHECK(c.arrange.small_strategy == SmallStrategy::kMixed);
  CHECK(c.arrange.small_scale_lo == 0.1);
  CHECK(c.arrange.small_scale_hi == 0.3);
  CHECK(c.arrange.room_box_probability == 0.5);
  CHECK(c.arrange.scatter_probability == 0.5);
  CHECK(c.lights.count_lo == 80);
  CHECK(c.lights.count_hi == 80);
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("explicit keys override defaults") {
  const GeneratorConfig c = parse_config(R"({
    "global_seed": 12345,
    "n_scenes": 7,
    "image": {"width": 320, "height": 240, "spp": 4},
    "texture_mode": "noise",
    "rig": {"fov_deg": [40, 40], "azimuth_span_deg": 90},
    "arrangement": {"n_large": 2, "small_strategy": "clustered"},
    "lights": {"count": [5, 20]},
    "tessellation": {"large": [24, 16, 0]}
  })");
  CHECK(c.global_seed == 12345);
  CHECK(c.n_scenes == 7);
  CHECK(c.width == 320);
  CHECK(c.height == 240);
  CHECK(c.spp == 4);
  CHECK(c.texture_mode == TextureMode::kNoise);
  CHECK(c.rig.fov_min_deg == 40.0);
  CHECK(c.rig.azimuth_span_deg == 90.0);
  CHECK(c.arrange.n_large == 2);
  CHECK(c.arrange.small_strategy == SmallStrategy::kClustered);
  CHECK(c.lights.count_lo == 5);
  CHECK(c.lights.count_hi == 20);
  CHECK(c.tess.large_res_u == 24);
  CHECK(c.tess.large_subdiv == 0);
  // Untouched blocks keep defaults.
  CHECK(c.arrange.n_small == 320);
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("unknown keys are rejected with their path") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"rigg": {}})"), doctest::Contains("rigg"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"rig": {"fov": [30, 40]}})"),
                       doctest::Contains("rig.fov"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"image": {"widht": 640}})"),
                       doctest::Contains("image.widht"), ConfigError);
}

TEST_CASE("type errors are rejected") {
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"n_scenes": 1.5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"global_seed": -1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"image": 640})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"loft": {"scale": [1.0]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"loft": {"scale": 1.0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"shape_type": "cubes"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"texture_mode": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"arrangement": {"small_strategy": "typo"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"tessellation": {"large": [24, 16]}})"), ConfigError);
}

TEST_CASE("validation rejects bad ranges and unsupported modes") {
  auto invalid = [](const std::string& text) {
    const GeneratorConfig c = parse_config(text);
    CHECK_THROWS_AS(validate_config(c), ConfigError);
  };
  invalid(R"({"image": {"width": 640, "height": 360}})");  // 16:9
  invalid(R"({"image": {"spp": 0}})");
  invalid(R"({"shape_type": "primitives"})");
  invalid(R"({"shape_type": "primitives_nurbs"})");
  invalid(R"({"rig": {"n_cameras": 6}})");
  invalid(R"({"rig": {"fov_deg": [65, 35]}})");
  invalid(R"({"rig": {"radius": [0, 4]}})");
  invalid(R"({"rig": {"azimuth_span_deg": 0}})");
  invalid(R"({"profile": {"degree": 4}})");
  invalid(R"({"profile": {"n_points": 3}})");
  invalid(R"({"stem": {"n_steps": 1}})");
  invalid(R"({"loft": {"scale": [1.4, 0.6]}})");
  invalid(R"({"displacement": {"coarse_octaves": [0, 2]}})");
  invalid(R"({"material": {"roughness": [0.5, 0.2]}})");
  invalid(R"({"material": {"mortar_fraction": 0.9}})");
  invalid(R"({"arrangement": {"n_large": 0}})");
  invalid(R"({"arrangement": {"room_box_probability": 1.5}})");
  invalid(R"({"scatter": {"tiny_scale": [0.06, 0.02]}})");
  invalid(R"({"lights": {"count": [10, 5]}})");
  invalid(R"({"tessellation": {"large": [2, 16, 0]}})");
}

TEST_CASE("serialize and parse round-trip bit for bit") {
  GeneratorConfig c;
  c.global_seed = 0xF00DF00DF00Dull;
  c.n_scenes = 42;
  c.width = 1280;
  c.height = 960;
  c.spp = 9;
  c.texture_mode = TextureMode::kUniform;
  c.rig.elevation_min_deg = -3.5;
  c.rig.perturb_sigma_deg = 1.25;
  c.shape.coarse_magnitude_hi = 0.0625;
  c.material.threshold_lo = -0.21;
  c.arrange.small_strategy = SmallStrategy::kUniform;
  c.arrange.annulus_hi = 1.75;
  c.lights.power_lo = 21.5;
  c.tess.tiny_res_v = 10;

  const std::string text = serialize_config(c);
  const GeneratorConfig d = parse_config(text);
  CHECK(serialize_config(d) == text);
  CHECK(d.global_seed == c.global_seed);
  CHECK(d.n_scenes == c.n_scenes);
  CHECK(d.texture_mode == c.texture_mode);
  CHECK(d.rig.elevation_min_deg == c.rig.elevation_min_deg);
  CHECK(d.rig.perturb_sigma_deg == c.rig.perturb_sigma_deg);
  CHECK(d.shape.coarse_magnitude_hi == c.shape.coarse_magnitude_hi);
  CHECK(d.material.threshold_lo == c.material.threshold_lo);
  CHECK(d.arrange.small_strategy == c.arrange.small_strategy);
  CHECK(d.arrange.annulus_hi == c.arrange.annulus_hi);
  CHECK(d.lights.power_lo == c.lights.power_lo);
  CHECK(d.tess.tiny_res_v == c.tess.tiny_res_v);
}

TEST_CASE("config hash tracks content") {
  const GeneratorConfig a = parse_config("{}");
  GeneratorConfig b = a;
  CHECK(config_hash(a) == config_hash(b));
  b.global_seed = 1;
  CHECK(config_hash(a) != config_hash(b));
  // The hash is pinned to the canonical serialization, so it is stable
  // across runs and machines.
  CHECK(config_hash(a) == config_hash(parse_config(serialize_config(a))));
}

TEST_CASE("scene_params converts angles and copies the image size") {
  GeneratorConfig c = parse_config("{}");
  c.width = 320;
  c.height = 240;
  const SceneParams p = scene_params(c);
  CHECK(p.rig.width == 320);
  CHECK(p.rig.height == 240);
  CHECK(std::abs(p.rig.elevation_min - radians(-5.0)) == 0.0);
  CHECK(std::abs(p.rig.fov_max - radians(65.0)) == 0.0);
  CHECK(p.rig.azimuth_span == radians(45.0));
  CHECK(p.texture_mode == c.texture_mode);
  CHECK(p.arrange.n_small == 320);
}

TEST_CASE("every variant label parses, validates, and differs as labeled") {
  const std::vector<std::string> labels = variant_labels();
  CHECK(labels.size() >= 34);
  std::set<std::string> seen;
  for (const std::string& label : labels) {
    CAPTURE(label);
    const GeneratorConfig c = variant_config(label);
    CHECK_NOTHROW(validate_config(c));
    CHECK(seen.insert(label).second);  // no duplicate labels
    // Round-trips like any other config.
    CHECK(serialize_config(parse_config(serialize_config(c))) == serialize_config(c));
  }
  CHECK(variant_config("displacement/off").shape.displacement == false);
  CHECK(variant_config("materials/uniform").texture_mode == TextureMode::kUniform);
  CHECK(variant_config("large-objects/2").arrange.n_large == 2);
  CHECK(variant_config("small-objects/160-smaller").arrange.n_small == 160);
  CHECK(variant_config("small-objects/160-smaller").arrange.small_scale_hi == 0.15);
  CHECK(variant_config("room-box/on").arrange.room_box_probability == 1.0);
  CHECK(variant_config("scatter/off").arrange.scatter_probability == 0.0);
  CHECK(variant_config("lights/5-40").lights.count_lo == 5);
  CHECK(variant_config("lights/5-40").lights.count_hi == 40);
  CHECK(variant_config("cameras/fov-50").rig.fov_min_deg == 50.0);
  CHECK(variant_config("cameras/fixed-distance").rig.radius_min == 3.25);
  CHECK(variant_config("cameras/azimuth-20").rig.azimuth_span_deg == 20.0);
  CHECK_THROWS_AS(variant_config("nope"), ConfigError);
}
