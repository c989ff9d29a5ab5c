#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "visualenv/math.hpp"

namespace visualenv {

struct Transform {
  Vec3 position;
  Vec3 rotation;  // Euler angles in radians, applied Z then Y then X (intrinsic ZYX)
  Vec3 scale{1.0, 1.0, 1.0};

  bool operator==(const Transform&) const = default;

  Mat3 rotation_matrix() const { return Mat3::from_euler_zyx(rotation); }
};

struct Color {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  bool operator==(const Color&) const = default;

  static constexpr Color gray(double v) { return {v, v, v}; }
};

struct FlatMaterial {
  Color albedo;
  bool operator==(const FlatMaterial&) const = default;
};

// Seeded value noise; `scale` is the lattice spacing in meters.
struct NoiseTexture {
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::pair<Color, Color> palette;
  bool operator==(const NoiseTexture&) const = default;
};

// Square cells of side `cell_size`, each with a hashed color.
struct CheckerHash {
  std::uint64_t seed = 0;
  double cell_size = 1.0;
  bool operator==(const CheckerHash&) const = default;
};

using Material = std::variant<FlatMaterial, NoiseTexture, CheckerHash>;

// All primitives are defined in object space. Planar shapes lie in the local
// XY plane with normal +Z; the cylinder axis is local Z.
struct Plane {
  double half_extent = 1.0;
  bool operator==(const Plane&) const = default;
};
struct Box {
  Vec3 half_extents{0.5, 0.5, 0.5};
  bool operator==(const Box&) const = default;
};
struct Sphere {
  double radius = 0.5;
  bool operator==(const Sphere&) const = default;
};
struct Cylinder {
  double radius = 0.5;
  double half_height = 0.5;
  bool operator==(const Cylinder&) const = default;
};
struct Ring {
  double inner_radius = 0.5;
  double outer_radius = 1.0;
  bool operator==(const Ring&) const = default;
};

using Primitive = std::variant<Plane, Box, Sphere, Cylinder, Ring>;

struct SceneObject {
  std::string id;
  Primitive primitive;
  Material material;
  Transform transform;
  bool visible = true;

  bool operator==(const SceneObject&) const = default;
};

struct DirectionalLight {
  Vec3 direction{0.0, 0.0, -1.0};  // direction the light travels, unit length
  double intensity = 1.0;
  double ambient = 0.2;

  bool operator==(const DirectionalLight&) const = default;
};

struct Resolution {
  int width = 100;
  int height = 100;
  bool operator==(const Resolution&) const = default;
};

// Pinhole camera parameterized like a DCC tool: focal length and sensor width
// in millimeters. The camera looks along its local -Z with +Y up; pose scale
// is ignored.
struct Camera {
  double focal_length = 50.0;
  double sensor_width = 36.0;
  Resolution resolution;
  Transform pose;

  bool operator==(const Camera&) const = default;

  double sensor_height() const {
    return sensor_width * resolution.height / resolution.width;
  }
  double horizontal_fov() const;
  bool valid() const;
};

struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
};

enum class SceneErrorCode { DuplicateId, UnknownId, InvalidValue, NotATexture };

class SceneError : public std::runtime_error {
 public:
  SceneError(SceneErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  SceneErrorCode code() const { return code_; }

 private:
  SceneErrorCode code_;
};

class Scene {
 public:
  Scene() = default;
  /// Throws SceneError(InvalidValue) if the light is not unit-length.
  Scene(Camera camera, DirectionalLight light, Color background);

  /// Throws SceneError(DuplicateId) if the id is taken, SceneError(InvalidValue)
  /// if the object violates a geometric invariant.
  Scene& add_object(SceneObject obj);
  Scene& set_transform(const std::string& id, const Transform& t);
  Scene& set_visible(const std::string& id, bool visible);
  const SceneObject& get_object(const std::string& id) const;
  bool contains(const std::string& id) const;

  const std::vector<SceneObject>& objects() const { return objects_; }
  const DirectionalLight& light() const { return light_; }
  const Camera& camera() const { return camera_; }
  const Color& background() const { return background_; }

  void set_light(const DirectionalLight& light);
  void set_camera(const Camera& camera) { camera_ = camera; }
  void set_background(const Color& c) { background_ = c; }

  bool operator==(const Scene&) const = default;

 private:
  SceneObject& find(const std::string& id);

  std::vector<SceneObject> objects_;
  DirectionalLight light_;
  Camera camera_;
  Color background_;
};

void validate(const Primitive& p);
void validate(const Material& m);
void validate(const Transform& t);
void validate(const DirectionalLight& light);

/// World point to continuous pixel coordinates (origin top-left, v down).
/// Empty when the point is behind the camera or outside the image.
std::optional<PixelCoord> camera_project(const Camera& camera, const Vec3& p_world);

/// World point expressed in the camera frame (camera looks down -Z).
Vec3 camera_space(const Camera& camera, const Vec3& p_world);

/// Unit world-space direction of the ray through continuous pixel (u, v).
Vec3 camera_ray_direction(const Camera& camera, double u, double v);

/// Throws SceneError(NotATexture) for FlatMaterial.
Color texture_sample(const Material& material, double u, double v);

/// Albedo at surface coordinates (u, v); flat materials ignore them.
Color material_albedo(const Material& material, double u, double v);

}  // namespace visualenv
