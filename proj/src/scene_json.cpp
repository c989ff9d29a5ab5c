#include "visualenv/scene_json.hpp"

namespace visualenv {

using nlohmann::json;

namespace {

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }
json col(const Color& c) { return json::array({c.r, c.g, c.b}); }

[[noreturn]] void bad(const std::string& what) {
  throw SceneError(SceneErrorCode::InvalidValue, "scene json: " + what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

double num(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Vec3 read_vec(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number())
    bad(std::string("field '") + key + "' must be a 3-element number array");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Color read_color(const json& v) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number())
    bad("color must be a 3-element number array");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json transform_json(const Transform& t) {
  return {{"position", vec(t.position)}, {"rotation", vec(t.rotation)}, {"scale", vec(t.scale)}};
}

Transform read_transform(const json& j) {
  Transform t;
  t.position = read_vec(j, "position");
  t.rotation = read_vec(j, "rotation");
  if (j.contains("scale")) t.scale = read_vec(j, "scale");
  return t;
}

json primitive_json(const Primitive& p) {
  return std::visit(
      [](const auto& prim) -> json {
        using T = std::decay_t<decltype(prim)>;
        if constexpr (std::is_same_v<T, Plane>) {
          return {{"kind", "plane"}, {"half_extent", prim.half_extent}};
        } else if constexpr (std::is_same_v<T, Box>) {
          return {{"kind", "box"}, {"half_extents", vec(prim.half_extents)}};
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return {{"kind", "sphere"}, {"radius", prim.radius}};
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return {{"kind", "cylinder"}, {"radius", prim.radius}, {"half_height", prim.half_height}};
        } else {
          return {{"kind", "ring"},
                  {"inner_radius", prim.inner_radius},
                  {"outer_radius", prim.outer_radius}};
        }
      },
      p);
}

Primitive read_primitive(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("primitive kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "plane") return Plane{num(j, "half_extent")};
  if (k == "box") return Box{read_vec(j, "half_extents")};
  if (k == "sphere") return Sphere{num(j, "radius")};
  if (k == "cylinder") return Cylinder{num(j, "radius"), num(j, "half_height")};
  if (k == "ring") return Ring{num(j, "inner_radius"), num(j, "outer_radius")};
  bad("unknown primitive kind '" + k + "'");
}

json material_json(const Material& m) {
  return std::visit(
      [](const auto& mat) -> json {
        using T = std::decay_t<decltype(mat)>;
        if constexpr (std::is_same_v<T, FlatMaterial>) {
          return {{"kind", "flat"}, {"albedo", col(mat.albedo)}};
        } else if constexpr (std::is_same_v<T, NoiseTexture>) {
          return {{"kind", "noise"},
                  {"seed", mat.seed},
                  {"scale", mat.scale},
                  {"palette", json::array({col(mat.palette.first), col(mat.palette.second)})}};
        } else {
          return {{"kind", "checker_hash"}, {"seed", mat.seed}, {"cell_size", mat.cell_size}};
        }
      },
      m);
}

std::uint64_t read_seed(const json& j) {
  const json& s = field(j, "seed");
  if (!s.is_number_unsigned()) bad("seed must be a non-negative integer");
  return s.get<std::uint64_t>();
}

Material read_material(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("material kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "flat") return FlatMaterial{read_color(field(j, "albedo"))};
  if (k == "noise") {
    const json& pal = field(j, "palette");
    if (!pal.is_array() || pal.size() != 2) bad("palette must hold two colors");
    return NoiseTexture{read_seed(j), num(j, "scale"), {read_color(pal[0]), read_color(pal[1])}};
  }
  if (k == "checker_hash") return CheckerHash{read_seed(j), num(j, "cell_size")};
  bad("unknown material kind '" + k + "'");
}

}  // namespace

json scene_to_json(const Scene& scene) {
  const Camera& cam = scene.camera();
  const DirectionalLight& light = scene.light();
  json objects = json::array();
  for (const SceneObject& o : scene.objects()) {
    objects.push_back({{"id", o.id},
                       {"visible", o.visible},
                       {"primitive", primitive_json(o.primitive)},
                       {"material", material_json(o.material)},
                       {"transform", transform_json(o.transform)}});
  }
  return {{"background", col(scene.background())},
          {"light",
           {{"direction", vec(light.direction)},
            {"intensity", light.intensity},
            {"ambient", light.ambient}}},
          {"camera",
           {{"focal_length", cam.focal_length},
            {"sensor_width", cam.sensor_width},
            {"resolution", json::array({cam.resolution.width, cam.resolution.height})},
            {"pose", transform_json(cam.pose)}}},
          {"objects", std::move(objects)}};
}

Scene scene_from_json(const json& doc) {
  const json& cj = field(doc, "camera");
  Camera cam;
  cam.focal_length = num(cj, "focal_length");
  cam.sensor_width = num(cj, "sensor_width");
  const json& res = field(cj, "resolution");
  if (!res.is_array() || res.size() != 2 || !res[0].is_number_integer() ||
      !res[1].is_number_integer())
    bad("resolution must be [width, height] integers");
  cam.resolution = {res[0].get<int>(), res[1].get<int>()};
  cam.pose = read_transform(field(cj, "pose"));
  if (!cam.valid()) bad("camera violates its invariants");

  const json& lj = field(doc, "light");
  DirectionalLight light{read_vec(lj, "direction"), num(lj, "intensity"), num(lj, "ambient")};

  Scene scene(cam, light, read_color(field(doc, "background")));
  const json& objs = field(doc, "objects");
  if (!objs.is_array()) bad("objects must be an array");
  for (const json& oj : objs) {
    const json& id = field(oj, "id");
    if (!id.is_string()) bad("object id must be a string");
    SceneObject obj{id.get<std::string>(), read_primitive(field(oj, "primitive")),
                    read_material(field(oj, "material")), read_transform(field(oj, "transform")),
                    oj.value("visible", true)};
    scene.add_object(std::move(obj));
  }
  return scene;
}

}  // namespace visualenv
