#include "visualenv/scene.hpp"

#include <algorithm>
#include <cmath>

#include "visualenv/noise.hpp"

namespace visualenv {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw SceneError(SceneErrorCode::InvalidValue, what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

bool valid_color(const Color& c) {
  auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
  return ok(c.r) && ok(c.g) && ok(c.b);
}

Color lerp(const Color& a, const Color& b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

}  // namespace

void validate(const Primitive& p) {
  std::visit(
      [](const auto& prim) {
        using T = std::decay_t<decltype(prim)>;
        if constexpr (std::is_same_v<T, Plane>) {
          if (!positive(prim.half_extent)) invalid("plane half_extent must be > 0");
        } else if constexpr (std::is_same_v<T, Box>) {
          const auto& h = prim.half_extents;
          if (!positive(h.x) || !positive(h.y) || !positive(h.z))
            invalid("box half_extents must be > 0");
        } else if constexpr (std::is_same_v<T, Sphere>) {
          if (!positive(prim.radius)) invalid("sphere radius must be > 0");
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          if (!positive(prim.radius) || !positive(prim.half_height))
            invalid("cylinder dimensions must be > 0");
        } else {
          if (!positive(prim.inner_radius) || !positive(prim.outer_radius) ||
              prim.inner_radius >= prim.outer_radius)
            invalid("ring requires 0 < inner_radius < outer_radius");
        }
      },
      p);
}

void validate(const Material& m) {
  std::visit(
      [](const auto& mat) {
        using T = std::decay_t<decltype(mat)>;
        if constexpr (std::is_same_v<T, FlatMaterial>) {
          if (!valid_color(mat.albedo)) invalid("albedo channels must lie in [0,1]");
        } else if constexpr (std::is_same_v<T, NoiseTexture>) {
          if (!positive(mat.scale)) invalid("noise scale must be > 0");
          if (!valid_color(mat.palette.first) || !valid_color(mat.palette.second))
            invalid("palette channels must lie in [0,1]");
        } else {
          if (!positive(mat.cell_size)) invalid("checker cell_size must be > 0");
        }
      },
      m);
}

void validate(const Transform& t) {
  if (!t.position.finite() || !t.rotation.finite()) invalid("transform must be finite");
  if (!positive(t.scale.x) || !positive(t.scale.y) || !positive(t.scale.z))
    invalid("transform scale must be > 0");
}

void validate(const DirectionalLight& light) {
  if (!light.direction.finite() || std::abs(light.direction.norm() - 1.0) > 1e-9)
    invalid("light direction must be unit length");
  if (!(light.intensity >= 0.0) || !(light.ambient >= 0.0 && light.ambient <= 1.0))
    invalid("light requires intensity >= 0 and ambient in [0,1]");
}

Scene::Scene(Camera camera, DirectionalLight light, Color background)
    : light_(light), camera_(std::move(camera)), background_(background) {
  validate(light_);
}

void Scene::set_light(const DirectionalLight& light) {
  validate(light);
  light_ = light;
}

double Camera::horizontal_fov() const {
  return 2.0 * std::atan(sensor_width / (2.0 * focal_length));
}

bool Camera::valid() const {
  return positive(focal_length) && positive(sensor_width) && resolution.width >= 1 &&
         resolution.height >= 1 && pose.position.finite() && pose.rotation.finite();
}

Scene& Scene::add_object(SceneObject obj) {
  if (contains(obj.id)) throw SceneError(SceneErrorCode::DuplicateId, "duplicate object id: " + obj.id);
  validate(obj.primitive);
  validate(obj.material);
  validate(obj.transform);
  objects_.push_back(std::move(obj));
  return *this;
}

Scene& Scene::set_transform(const std::string& id, const Transform& t) {
  SceneObject& obj = find(id);
  validate(t);
  obj.transform = t;
  return *this;
}

Scene& Scene::set_visible(const std::string& id, bool visible) {
  find(id).visible = visible;
  return *this;
}

const SceneObject& Scene::get_object(const std::string& id) const {
  auto it = std::find_if(objects_.begin(), objects_.end(),
                         [&](const SceneObject& o) { return o.id == id; });
  if (it == objects_.end()) throw SceneError(SceneErrorCode::UnknownId, "unknown object id: " + id);
  return *it;
}

bool Scene::contains(const std::string& id) const {
  return std::any_of(objects_.begin(), objects_.end(),
                     [&](const SceneObject& o) { return o.id == id; });
}

SceneObject& Scene::find(const std::string& id) {
  auto it = std::find_if(objects_.begin(), objects_.end(),
                         [&](const SceneObject& o) { return o.id == id; });
  if (it == objects_.end()) throw SceneError(SceneErrorCode::UnknownId, "unknown object id: " + id);
  return *it;
}

Vec3 camera_space(const Camera& camera, const Vec3& p_world) {
  return camera.pose.rotation_matrix().transposed() * (p_world - camera.pose.position);
}

std::optional<PixelCoord> camera_project(const Camera& camera, const Vec3& p_world) {
  const Vec3 pc = camera_space(camera, p_world);
  if (!(pc.z < 0.0)) return std::nullopt;
  const double depth = -pc.z;
  const double w = camera.resolution.width;
  const double h = camera.resolution.height;
  const double u = w / 2.0 + (camera.focal_length * pc.x / depth) / camera.sensor_width * w;
  const double v = h / 2.0 - (camera.focal_length * pc.y / depth) / camera.sensor_height() * h;
  if (!(u >= 0.0 && u < w && v >= 0.0 && v < h)) return std::nullopt;
  return PixelCoord{u, v};
}

Vec3 camera_ray_direction(const Camera& camera, double u, double v) {
  const double w = camera.resolution.width;
  const double h = camera.resolution.height;
  const Vec3 local{(u - w / 2.0) / w * camera.sensor_width / camera.focal_length,
                   -(v - h / 2.0) / h * camera.sensor_height() / camera.focal_length, -1.0};
  return (camera.pose.rotation_matrix() * local).normalized();
}

Color texture_sample(const Material& material, double u, double v) {
  return std::visit(
      [&](const auto& mat) -> Color {
        using T = std::decay_t<decltype(mat)>;
        if constexpr (std::is_same_v<T, FlatMaterial>) {
          throw SceneError(SceneErrorCode::NotATexture, "flat material has no texture");
        } else if constexpr (std::is_same_v<T, NoiseTexture>) {
          const double n =
              std::clamp(noise::value_noise(u / mat.scale, v / mat.scale, mat.seed), 0.0, 1.0);
          return lerp(mat.palette.first, mat.palette.second, n);
        } else {
          const auto ix = static_cast<std::int64_t>(std::floor(u / mat.cell_size));
          const auto iy = static_cast<std::int64_t>(std::floor(v / mat.cell_size));
          const std::uint64_t h = noise::lattice_hash(ix, iy, mat.seed);
          return {static_cast<double>(h & 0xff) / 255.0,
                  static_cast<double>((h >> 8) & 0xff) / 255.0,
                  static_cast<double>((h >> 16) & 0xff) / 255.0};
        }
      },
      material);
}

Color material_albedo(const Material& material, double u, double v) {
  if (const auto* flat = std::get_if<FlatMaterial>(&material)) return flat->albedo;
  return texture_sample(material, u, v);
}

}  // namespace visualenv
