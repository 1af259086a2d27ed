// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.h"

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vec.h"

namespace loftgen {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + (where.empty() ? what : where + ": " + what));
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(join(path, item.key()), "unknown key");
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json* find_object(const json& j, const std::string& path, const char* key) {
  const json* v = find(j, key);
  if (v != nullptr && !v->is_object()) fail(join(path, key), "expected an object");
  return v;
}

void read_double(const json& j, const std::string& path, const char* key, double* out) {
  if (const json* v = find(j, key)) {
    if (!v->is_number()) fail(join(path, key), "expected a number");
    *out = v->get<double>();
  }
}

void read_int(const json& j, const std::string& path, const char* key, int* out) {
  if (const json* v = find(j, key)) {
    if (!v->is_number_integer()) fail(join(path, key), "expected an integer");
    *out = v->get<int>();
  }
}

void read_u64(const json& j, const std::string& path, const char* key, uint64_t* out) {
  if (const json* v = find(j, key)) {
    if (!v->is_number_integer() || (!v->is_number_unsigned() && v->get<int64_t>() < 0))
      fail(join(path, key), "expected a nonnegative integer");
    *out = v->get<uint64_t>();
  }
}

void read_bool(const json& j, const std::string& path, const char* key, bool* out) {
  if (const json* v = find(j, key)) {
    if (!v->is_boolean()) fail(join(path, key), "expected true or false");
    *out = v->get<bool>();
  }
}

void read_range(const json& j, const std::string& path, const char* key, double* lo, double* hi) {
  if (const json* v = find(j, key)) {
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number())
      fail(join(path, key), "expected a [lo, hi] number pair");
    *lo = (*v)[0].get<double>();
    *hi = (*v)[1].get<double>();
  }
}

void read_int_range(const json& j, const std::string& path, const char* key, int* lo, int* hi) {
  if (const json* v = find(j, key)) {
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number_integer() ||
        !(*v)[1].is_number_integer())
      fail(join(path, key), "expected a [lo, hi] integer pair");
    *lo = (*v)[0].get<int>();
    *hi = (*v)[1].get<int>();
  }
}

void read_int_triple(const json& j, const std::string& path, const char* key, int* a, int* b,
                     int* c) {
  if (const json* v = find(j, key)) {
    if (!v->is_array() || v->size() != 3 || !(*v)[0].is_number_integer() ||
        !(*v)[1].is_number_integer() || !(*v)[2].is_number_integer())
      fail(join(path, key), "expected [res_u, res_v, subdivisions]");
    *a = (*v)[0].get<int>();
    *b = (*v)[1].get<int>();
    *c = (*v)[2].get<int>();
  }
}

const char* shape_type_name(ShapeType t) {
  switch (t) {
    case ShapeType::kNurbs: return "nurbs";
    case ShapeType::kPrimitives: return "primitives";
    case ShapeType::kPrimitivesNurbs: return "primitives_nurbs";
  }
  return "nurbs";
}

ShapeType parse_shape_type(const std::string& s, const std::string& where) {
  if (s == "nurbs") return ShapeType::kNurbs;
  if (s == "primitives") return ShapeType::kPrimitives;
  if (s == "primitives_nurbs") return ShapeType::kPrimitivesNurbs;
  fail(where, "unknown shape type \"" + s +
                  "\" (expected \"nurbs\", \"primitives\" or \"primitives_nurbs\")");
}

const char* texture_mode_name(TextureMode m) {
  switch (m) {
    case TextureMode::kUniform: return "uniform";
    case TextureMode::kNoise: return "noise";
    case TextureMode::kNoiseBoolean: return "noise_boolean";
  }
  return "noise_boolean";
}

TextureMode parse_texture_mode(const std::string& s, const std::string& where) {
  if (s == "uniform") return TextureMode::kUniform;
  if (s == "noise") return TextureMode::kNoise;
  if (s == "noise_boolean") return TextureMode::kNoiseBoolean;
  fail(where, "unknown texture mode \"" + s +
                  "\" (expected \"uniform\", \"noise\" or \"noise_boolean\")");
}

const char* small_strategy_name(SmallStrategy s) {
  switch (s) {
    case SmallStrategy::kNone: return "none";
    case SmallStrategy::kUniform: return "uniform";
    case SmallStrategy::kClustered: return "clustered";
    case SmallStrategy::kMixed: return "mixed";
  }
  return "mixed";
}

SmallStrategy parse_small_strategy(const std::string& s, const std::string& where) {
  if (s == "none") return SmallStrategy::kNone;
  if (s == "uniform") return SmallStrategy::kUniform;
  if (s == "clustered") return SmallStrategy::kClustered;
  if (s == "mixed") return SmallStrategy::kMixed;
  fail(where, "unknown placement strategy \"" + s +
                  "\" (expected \"none\", \"uniform\", \"clustered\" or \"mixed\")");
}

void read_enum_string(const json& j, const std::string& path, const char* key, std::string* out,
                      bool* present) {
  *present = false;
  if (const json* v = find(j, key)) {
    if (!v->is_string()) fail(join(path, key), "expected a string");
    *out = v->get<std::string>();
    *present = true;
  }
}

}  // namespace

SceneParams scene_params(const GeneratorConfig& c) {
  SceneParams p;
  p.rig.n_cameras = c.rig.n_cameras;
  p.rig.elevation_min = radians(c.rig.elevation_min_deg);
  p.rig.elevation_max = radians(c.rig.elevation_max_deg);
  p.rig.azimuth_span = radians(c.rig.azimuth_span_deg);
  p.rig.radius_min = c.rig.radius_min;
  p.rig.radius_max = c.rig.radius_max;
  p.rig.fov_min = radians(c.rig.fov_min_deg);
  p.rig.fov_max = radians(c.rig.fov_max_deg);
  p.rig.perturb_sigma = radians(c.rig.perturb_sigma_deg);
  p.rig.width = c.width;
  p.rig.height = c.height;
  p.shape = c.shape;
  p.material = c.material;
  p.texture_mode = c.texture_mode;
  p.arrange = c.arrange;
  p.lights = c.lights;
  p.tess = c.tess;
  return p;
}

GeneratorConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  GeneratorConfig c;
  check_keys(j, "",
             {"global_seed", "n_scenes", "image", "shape_type", "texture_mode", "profile", "stem",
              "loft", "displacement", "material", "rig", "arrangement", "scatter", "lights",
              "tessellation"});
  read_u64(j, "", "global_seed", &c.global_seed);
  read_int(j, "", "n_scenes", &c.n_scenes);

  if (const json* v = find_object(j, "", "image")) {
    check_keys(*v, "image", {"width", "height", "spp"});
    read_int(*v, "image", "width", &c.width);
    read_int(*v, "image", "height", &c.height);
    read_int(*v, "image", "spp", &c.spp);
  }

  std::string s;
  bool present = false;
  read_enum_string(j, "", "shape_type", &s, &present);
  if (present) c.shape_type = parse_shape_type(s, "shape_type");
  read_enum_string(j, "", "texture_mode", &s, &present);
  if (present) c.texture_mode = parse_texture_mode(s, "texture_mode");

  if (const json* v = find_object(j, "", "profile")) {
    check_keys(*v, "profile",
               {"n_points", "degree", "radial_sigma", "tangential_sigma", "walk_steps",
                "step_sigma", "offset_radius"});
    ProfileSpec& pr = c.shape.profile;
    read_int(*v, "profile", "n_points", &pr.n_points);
    read_int(*v, "profile", "degree", &pr.degree);
    read_double(*v, "profile", "radial_sigma", &pr.radial_sigma);
    read_double(*v, "profile", "tangential_sigma", &pr.tangential_sigma);
    read_int(*v, "profile", "walk_steps", &pr.walk_steps);
    read_double(*v, "profile", "step_sigma", &pr.step_sigma);
    read_double(*v, "profile", "offset_radius", &pr.offset_radius);
  }

  if (const json* v = find_object(j, "", "stem")) {
    check_keys(*v, "stem", {"n_steps", "step_sigma", "degree", "persistence"});
    StemSpec& st = c.shape.stem;
    read_int(*v, "stem", "n_steps", &st.n_steps);
    read_double(*v, "stem", "step_sigma", &st.step_sigma);
    read_int(*v, "stem", "degree", &st.degree);
    read_double(*v, "stem", "persistence", &st.persistence);
  }

  if (const json* v = find_object(j, "", "loft")) {
    check_keys(*v, "loft", {"n_profiles", "scale"});
    read_int(*v, "loft", "n_profiles", &c.shape.loft.n_profiles);
    read_range(*v, "loft", "scale", &c.shape.loft.scale_min, &c.shape.loft.scale_max);
  }

  if (const json* v = find_object(j, "", "displacement")) {
    check_keys(*v, "displacement",
               {"enabled", "coarse_scale", "coarse_octaves", "coarse_magnitude", "fine_scale",
                "fine_octaves", "fine_magnitude"});
    ShapeParams& sh = c.shape;
    read_bool(*v, "displacement", "enabled", &sh.displacement);
    read_range(*v, "displacement", "coarse_scale", &sh.coarse_scale_lo, &sh.coarse_scale_hi);
    read_int_range(*v, "displacement", "coarse_octaves", &sh.coarse_octaves_lo,
                   &sh.coarse_octaves_hi);
    read_range(*v, "displacement", "coarse_magnitude", &sh.coarse_magnitude_lo,
               &sh.coarse_magnitude_hi);
    read_range(*v, "displacement", "fine_scale", &sh.fine_scale_lo, &sh.fine_scale_hi);
    read_int_range(*v, "displacement", "fine_octaves", &sh.fine_octaves_lo, &sh.fine_octaves_hi);
    read_range(*v, "displacement", "fine_magnitude", &sh.fine_magnitude_lo,
               &sh.fine_magnitude_hi);
  }

  if (const json* v = find_object(j, "", "material")) {
    check_keys(*v, "material",
               {"roughness_fixed", "roughness", "metallic_max", "field_scale", "octaves",
                "threshold", "brick_size", "mortar_fraction"});
    MaterialSampleParams& m = c.material;
    read_double(*v, "material", "roughness_fixed", &m.roughness_fixed);
    read_range(*v, "material", "roughness", &m.roughness_lo, &m.roughness_hi);
    read_double(*v, "material", "metallic_max", &m.metallic_hi);
    read_range(*v, "material", "field_scale", &m.field_scale_lo, &m.field_scale_hi);
    read_int_range(*v, "material", "octaves", &m.octaves_lo, &m.octaves_hi);
    read_range(*v, "material", "threshold", &m.threshold_lo, &m.threshold_hi);
    read_range(*v, "material", "brick_size", &m.brick_size_lo, &m.brick_size_hi);
    read_double(*v, "material", "mortar_fraction", &m.mortar_fraction);
  }

  if (const json* v = find_object(j, "", "rig")) {
    check_keys(*v, "rig",
               {"n_cameras", "elevation_deg", "azimuth_span_deg", "radius", "fov_deg",
                "perturb_sigma_deg"});
    RigConfig& r = c.rig;
    read_int(*v, "rig", "n_cameras", &r.n_cameras);
    read_range(*v, "rig", "elevation_deg", &r.elevation_min_deg, &r.elevation_max_deg);
    read_double(*v, "rig", "azimuth_span_deg", &r.azimuth_span_deg);
    read_range(*v, "rig", "radius", &r.radius_min, &r.radius_max);
    read_range(*v, "rig", "fov_deg", &r.fov_min_deg, &r.fov_max_deg);
    read_double(*v, "rig", "perturb_sigma_deg", &r.perturb_sigma_deg);
  }

  if (const json* v = find_object(j, "", "arrangement")) {
    check_keys(*v, "arrangement",
               {"n_large", "n_small", "small_strategy", "small_scale", "large_scale", "annulus",
                "room_box_probability", "room_scale", "place_retries_per_round", "place_rounds",
                "max_scene_attempts"});
    ArrangeParams& a = c.arrange;
    read_int(*v, "arrangement", "n_large", &a.n_large);
    read_int(*v, "arrangement", "n_small", &a.n_small);
    read_enum_string(*v, "arrangement", "small_strategy", &s, &present);
    if (present) a.small_strategy = parse_small_strategy(s, "arrangement.small_strategy");
    read_range(*v, "arrangement", "small_scale", &a.small_scale_lo, &a.small_scale_hi);
    read_range(*v, "arrangement", "large_scale", &a.large_scale_lo, &a.large_scale_hi);
    read_range(*v, "arrangement", "annulus", &a.annulus_lo, &a.annulus_hi);
    read_double(*v, "arrangement", "room_box_probability", &a.room_box_probability);
    read_range(*v, "arrangement", "room_scale", &a.room_scale_lo, &a.room_scale_hi);
    read_int(*v, "arrangement", "place_retries_per_round", &a.place_retries_per_round);
    read_int(*v, "arrangement", "place_rounds", &a.place_rounds);
    read_int(*v, "arrangement", "max_scene_attempts", &a.max_scene_attempts);
  }

  if (const json* v = find_object(j, "", "scatter")) {
    check_keys(*v, "scatter", {"probability", "count", "tiny_scale"});
    ArrangeParams& a = c.arrange;
    read_double(*v, "scatter", "probability", &a.scatter_probability);
    read_int(*v, "scatter", "count", &a.scatter_count);
    read_range(*v, "scatter", "tiny_scale", &a.tiny_scale_lo, &a.tiny_scale_hi);
  }

  if (const json* v = find_object(j, "", "lights")) {
    check_keys(*v, "lights", {"count", "size_fraction", "power", "saturation_max"});
    LightParams& l = c.lights;
    read_int_range(*v, "lights", "count", &l.count_lo, &l.count_hi);
    read_range(*v, "lights", "size_fraction", &l.size_lo, &l.size_hi);
    read_range(*v, "lights", "power", &l.power_lo, &l.power_hi);
    read_double(*v, "lights", "saturation_max", &l.saturation_max);
  }

  if (const json* v = find_object(j, "", "tessellation")) {
    check_keys(*v, "tessellation", {"large", "small", "tiny"});
    TessellationParams& t = c.tess;
    read_int_triple(*v, "tessellation", "large", &t.large_res_u, &t.large_res_v, &t.large_subdiv);
    read_int_triple(*v, "tessellation", "small", &t.small_res_u, &t.small_res_v, &t.small_subdiv);
    read_int_triple(*v, "tessellation", "tiny", &t.tiny_res_u, &t.tiny_res_v, &t.tiny_subdiv);
  }

  return c;
}

GeneratorConfig parse_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config: cannot open \"" + path + "\"");
  std::ostringstream text;
  text << f.rdbuf();
  if (!f.good() && !f.eof()) throw ConfigError("config: cannot read \"" + path + "\"");
  return parse_config(text.str());
}

std::string serialize_config(const GeneratorConfig& c) {
  json j;
  j["global_seed"] = c.global_seed;
  j["n_scenes"] = c.n_scenes;
  j["image"] = {{"width", c.width}, {"height", c.height}, {"spp", c.spp}};
  j["shape_type"] = shape_type_name(c.shape_type);
  j["texture_mode"] = texture_mode_name(c.texture_mode);
  const ProfileSpec& pr = c.shape.profile;
  j["profile"] = {{"n_points", pr.n_points},
                  {"degree", pr.degree},
                  {"radial_sigma", pr.radial_sigma},
                  {"tangential_sigma", pr.tangential_sigma},
                  {"walk_steps", pr.walk_steps},
                  {"step_sigma", pr.step_sigma},
                  {"offset_radius", pr.offset_radius}};
  const StemSpec& st = c.shape.stem;
  j["stem"] = {{"n_steps", st.n_steps},
               {"step_sigma", st.step_sigma},
               {"degree", st.degree},
               {"persistence", st.persistence}};
  j["loft"] = {{"n_profiles", c.shape.loft.n_profiles},
               {"scale", {c.shape.loft.scale_min, c.shape.loft.scale_max}}};
  const ShapeParams& sh = c.shape;
  j["displacement"] = {{"enabled", sh.displacement},
                       {"coarse_scale", {sh.coarse_scale_lo, sh.coarse_scale_hi}},
                       {"coarse_octaves", {sh.coarse_octaves_lo, sh.coarse_octaves_hi}},
                       {"coarse_magnitude", {sh.coarse_magnitude_lo, sh.coarse_magnitude_hi}},
                       {"fine_scale", {sh.fine_scale_lo, sh.fine_scale_hi}},
                       {"fine_octaves", {sh.fine_octaves_lo, sh.fine_octaves_hi}},
                       {"fine_magnitude", {sh.fine_magnitude_lo, sh.fine_magnitude_hi}}};
  const MaterialSampleParams& m = c.material;
  j["material"] = {{"roughness_fixed", m.roughness_fixed},
                   {"roughness", {m.roughness_lo, m.roughness_hi}},
                   {"metallic_max", m.metallic_hi},
                   {"field_scale", {m.field_scale_lo, m.field_scale_hi}},
                   {"octaves", {m.octaves_lo, m.octaves_hi}},
                   {"threshold", {m.threshold_lo, m.threshold_hi}},
                   {"brick_size", {m.brick_size_lo, m.brick_size_hi}},
                   {"mortar_fraction", m.mortar_fraction}};
  const RigConfig& r = c.rig;
  j["rig"] = {{"n_cameras", r.n_cameras},
              {"elevation_deg", {r.elevation_min_deg, r.elevation_max_deg}},
              {"azimuth_span_deg", r.azimuth_span_deg},
              {"radius", {r.radius_min, r.radius_max}},
              {"fov_deg", {r.fov_min_deg, r.fov_max_deg}},
              {"perturb_sigma_deg", r.perturb_sigma_deg}};
  const ArrangeParams& a = c.arrange;
  j["arrangement"] = {{"n_large", a.n_large},
                      {"n_small", a.n_small},
                      {"small_strategy", small_strategy_name(a.small_strategy)},
                      {"small_scale", {a.small_scale_lo, a.small_scale_hi}},
                      {"large_scale", {a.large_scale_lo, a.large_scale_hi}},
                      {"annulus", {a.annulus_lo, a.annulus_hi}},
                      {"room_box_probability", a.room_box_probability},
                      {"room_scale", {a.room_scale_lo, a.room_scale_hi}},
                      {"place_retries_per_round", a.place_retries_per_round},
                      {"place_rounds", a.place_rounds},
                      {"max_scene_attempts", a.max_scene_attempts}};
  j["scatter"] = {{"probability", a.scatter_probability},
                  {"count", a.scatter_count},
                  {"tiny_scale", {a.tiny_scale_lo, a.tiny_scale_hi}}};
  const LightParams& l = c.lights;
  j["lights"] = {{"count", {l.count_lo, l.count_hi}},
                 {"size_fraction", {l.size_lo, l.size_hi}},
                 {"power", {l.power_lo, l.power_hi}},
                 {"saturation_max", l.saturation_max}};
  const TessellationParams& t = c.tess;
  j["tessellation"] = {{"large", {t.large_res_u, t.large_res_v, t.large_subdiv}},
                       {"small", {t.small_res_u, t.small_res_v, t.small_subdiv}},
                       {"tiny", {t.tiny_res_u, t.tiny_res_v, t.tiny_subdiv}}};
  return j.dump(2) + "\n";
}

void validate_config(const GeneratorConfig& c) {
  if (c.n_scenes < 0) throw ConfigError("config: n_scenes must be >= 0");
  if (c.width <= 0 || c.height <= 0) throw ConfigError("config: image size must be positive");
  if (3 * c.width != 4 * c.height)
    throw ConfigError("config: image must have a 4:3 aspect ratio, got " +
                      std::to_string(c.width) + "x" + std::to_string(c.height));
  if (c.spp < 1) throw ConfigError("config: image.spp must be >= 1");
  if (c.shape_type != ShapeType::kNurbs)
    throw ConfigError(std::string("config: shape_type \"") + shape_type_name(c.shape_type) +
                      "\" is not supported; only \"nurbs\" is implemented");

  const RigConfig& r = c.rig;
  if (r.n_cameras != 8) throw ConfigError("config: rig.n_cameras must be 8");
  if (!(r.elevation_min_deg >= -90.0 && r.elevation_min_deg <= r.elevation_max_deg &&
        r.elevation_max_deg <= 90.0))
    throw ConfigError("config: rig.elevation_deg must be ordered within [-90, 90]");
  if (!(r.azimuth_span_deg > 0.0 && r.azimuth_span_deg <= 360.0))
    throw ConfigError("config: rig.azimuth_span_deg must be in (0, 360]");
  if (!(r.radius_min > 0.0 && r.radius_min <= r.radius_max))
    throw ConfigError("config: rig.radius must be positive and ordered");
  if (!(r.fov_min_deg > 0.0 && r.fov_min_deg <= r.fov_max_deg && r.fov_max_deg < 180.0))
    throw ConfigError("config: rig.fov_deg must be ordered within (0, 180)");
  if (!(r.perturb_sigma_deg >= 0.0))
    throw ConfigError("config: rig.perturb_sigma_deg must be >= 0");

  const ProfileSpec& pr = c.shape.profile;
  if (pr.degree < 1 || pr.degree > 3) throw ConfigError("config: profile.degree must be 1..3");
  if (pr.n_points < pr.degree + 1)
    throw ConfigError("config: profile.n_points must be at least degree+1");
  if (!(pr.radial_sigma >= 0.0 && pr.tangential_sigma >= 0.0))
    throw ConfigError("config: profile sigmas must be >= 0");
  if (pr.walk_steps < 2) throw ConfigError("config: profile.walk_steps must be >= 2");
  if (!(pr.step_sigma > 0.0)) throw ConfigError("config: profile.step_sigma must be > 0");
  if (!(pr.offset_radius > 0.0)) throw ConfigError("config: profile.offset_radius must be > 0");

  const StemSpec& st = c.shape.stem;
  if (st.n_steps < 2) throw ConfigError("config: stem.n_steps must be >= 2");
  if (!(st.step_sigma > 0.0)) throw ConfigError("config: stem.step_sigma must be > 0");
  if (st.degree < 1 || st.degree > 3) throw ConfigError("config: stem.degree must be 1..3");
  if (!(st.persistence >= 0.0)) throw ConfigError("config: stem.persistence must be >= 0");

  if (c.shape.loft.n_profiles < 2) throw ConfigError("config: loft.n_profiles must be >= 2");
  if (!(c.shape.loft.scale_min > 0.0 && c.shape.loft.scale_min <= c.shape.loft.scale_max))
    throw ConfigError("config: loft.scale must be positive and ordered");

  const ShapeParams& sh = c.shape;
  if (!(sh.coarse_scale_lo > 0.0 && sh.coarse_scale_lo <= sh.coarse_scale_hi) ||
      !(sh.fine_scale_lo > 0.0 && sh.fine_scale_lo <= sh.fine_scale_hi))
    throw ConfigError("config: displacement scales must be positive and ordered");
  if (sh.coarse_octaves_lo < 1 || sh.coarse_octaves_lo > sh.coarse_octaves_hi ||
      sh.fine_octaves_lo < 1 || sh.fine_octaves_lo > sh.fine_octaves_hi)
    throw ConfigError("config: displacement octaves must be >= 1 and ordered");
  if (!(sh.coarse_magnitude_lo >= 0.0 && sh.coarse_magnitude_lo <= sh.coarse_magnitude_hi) ||
      !(sh.fine_magnitude_lo >= 0.0 && sh.fine_magnitude_lo <= sh.fine_magnitude_hi))
    throw ConfigError("config: displacement magnitudes must be >= 0 and ordered");

  const MaterialSampleParams& m = c.material;
  if (!(m.roughness_fixed > 0.0 && m.roughness_fixed <= 1.0))
    throw ConfigError("config: material.roughness_fixed must be in (0, 1]");
  if (!(m.roughness_lo > 0.0 && m.roughness_lo <= m.roughness_hi && m.roughness_hi <= 1.0))
    throw ConfigError("config: material.roughness must be ordered within (0, 1]");
  if (!(m.metallic_hi >= 0.0 && m.metallic_hi <= 1.0))
    throw ConfigError("config: material.metallic_max must be in [0, 1]");
  if (!(m.field_scale_lo > 0.0 && m.field_scale_lo <= m.field_scale_hi))
    throw ConfigError("config: material.field_scale must be positive and ordered");
  if (m.octaves_lo < 1 || m.octaves_lo > m.octaves_hi)
    throw ConfigError("config: material.octaves must be >= 1 and ordered");
  if (!(m.threshold_lo <= m.threshold_hi))
    throw ConfigError("config: material.threshold must be ordered");
  if (!(m.brick_size_lo > 0.0 && m.brick_size_lo <= m.brick_size_hi))
    throw ConfigError("config: material.brick_size must be positive and ordered");
  if (!(m.mortar_fraction >= 0.0 && m.mortar_fraction <= 0.5))
    throw ConfigError("config: material.mortar_fraction must be in [0, 0.5]");

  try {
    validate_scene_params(scene_params(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

uint64_t config_hash(const GeneratorConfig& c) {
  const std::string text = serialize_config(c);
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct Variant {
  const char* label;
  void (*apply)(GeneratorConfig&);
};

// One entry per single-axis study configuration of the default recipe.
const Variant kVariants[] = {
    {"default", [](GeneratorConfig&) {}},
    {"shape-type/nurbs", [](GeneratorConfig& c) { c.shape_type = ShapeType::kNurbs; }},
    {"displacement/off", [](GeneratorConfig& c) { c.shape.displacement = false; }},
    {"displacement/on", [](GeneratorConfig& c) { c.shape.displacement = true; }},
    {"materials/uniform", [](GeneratorConfig& c) { c.texture_mode = TextureMode::kUniform; }},
    {"materials/noise", [](GeneratorConfig& c) { c.texture_mode = TextureMode::kNoise; }},
    {"materials/noise-boolean",
     [](GeneratorConfig& c) { c.texture_mode = TextureMode::kNoiseBoolean; }},
    {"large-objects/1", [](GeneratorConfig& c) { c.arrange.n_large = 1; }},
    {"large-objects/2", [](GeneratorConfig& c) { c.arrange.n_large = 2; }},
    {"large-objects/8", [](GeneratorConfig& c) { c.arrange.n_large = 8; }},
    {"small-objects/none",
     [](GeneratorConfig& c) { c.arrange.small_strategy = SmallStrategy::kNone; }},
    {"small-objects/uniform",
     [](GeneratorConfig& c) { c.arrange.small_strategy = SmallStrategy::kUniform; }},
    {"small-objects/clustered",
     [](GeneratorConfig& c) { c.arrange.small_strategy = SmallStrategy::kClustered; }},
    {"small-objects/mixed",
     [](GeneratorConfig& c) { c.arrange.small_strategy = SmallStrategy::kMixed; }},
    {"small-objects/160-smaller",
     [](GeneratorConfig& c) {
       c.arrange.n_small = 160;
       c.arrange.small_scale_lo = 0.05;
       c.arrange.small_scale_hi = 0.15;
     }},
    {"small-objects/160-larger",
     [](GeneratorConfig& c) {
       c.arrange.n_small = 160;
       c.arrange.small_scale_lo = 0.1;
       c.arrange.small_scale_hi = 0.3;
     }},
    {"small-objects/320-smaller",
     [](GeneratorConfig& c) {
       c.arrange.n_small = 320;
       c.arrange.small_scale_lo = 0.05;
       c.arrange.small_scale_hi = 0.15;
     }},
    {"small-objects/320-larger",
     [](GeneratorConfig& c) {
       c.arrange.n_small = 320;
       c.arrange.small_scale_lo = 0.1;
       c.arrange.small_scale_hi = 0.3;
     }},
    {"room-box/off", [](GeneratorConfig& c) { c.arrange.room_box_probability = 0.0; }},
    {"room-box/on", [](GeneratorConfig& c) { c.arrange.room_box_probability = 1.0; }},
    {"scatter/off", [](GeneratorConfig& c) { c.arrange.scatter_probability = 0.0; }},
    {"scatter/on", [](GeneratorConfig& c) { c.arrange.scatter_probability = 1.0; }},
    {"lights/5-10",
     [](GeneratorConfig& c) {
       c.lights.count_lo = 5;
       c.lights.count_hi = 10;
     }},
    {"lights/5-20",
     [](GeneratorConfig& c) {
       c.lights.count_lo = 5;
       c.lights.count_hi = 20;
     }},
    {"lights/5-40",
     [](GeneratorConfig& c) {
       c.lights.count_lo = 5;
       c.lights.count_hi = 40;
     }},
    {"lights/5-80",
     [](GeneratorConfig& c) {
       c.lights.count_lo = 5;
       c.lights.count_hi = 80;
     }},
    {"lights/40",
     [](GeneratorConfig& c) {
       c.lights.count_lo = 40;
       c.lights.count_hi = 40;
     }},
    {"lights/80",
     [](GeneratorConfig& c) {
       c.lights.count_lo = 80;
       c.lights.count_hi = 80;
     }},
    {"cameras/fov-35",
     [](GeneratorConfig& c) {
       c.rig.fov_min_deg = 35.0;
       c.rig.fov_max_deg = 35.0;
     }},
    {"cameras/fov-50",
     [](GeneratorConfig& c) {
       c.rig.fov_min_deg = 50.0;
       c.rig.fov_max_deg = 50.0;
     }},
    {"cameras/fov-65",
     [](GeneratorConfig& c) {
       c.rig.fov_min_deg = 65.0;
       c.rig.fov_max_deg = 65.0;
     }},
    {"cameras/fixed-distance",
     [](GeneratorConfig& c) {
       c.rig.radius_min = 3.25;
       c.rig.radius_max = 3.25;
     }},
    {"cameras/azimuth-90", [](GeneratorConfig& c) { c.rig.azimuth_span_deg = 90.0; }},
    {"cameras/azimuth-20", [](GeneratorConfig& c) { c.rig.azimuth_span_deg = 20.0; }},
    {"cameras/default", [](GeneratorConfig&) {}},
};

}  // namespace

std::vector<std::string> variant_labels() {
  std::vector<std::string> labels;
  for (const Variant& v : kVariants) labels.emplace_back(v.label);
  return labels;
}

GeneratorConfig variant_config(const std::string& label) {
  for (const Variant& v : kVariants) {
    if (label == v.label) {
      GeneratorConfig c;
      v.apply(c);
      return c;
    }
  }
  throw ConfigError("config: unknown variant label \"" + label + "\"");
}

}  // namespace loftgen
