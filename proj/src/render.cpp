#include "visualenv/render.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace visualenv {

namespace {

constexpr double kMinT = 1e-9;

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  Vec3 normal;  // object space, not normalized
};

// Ray (o, d) in object space; d is not unit length after scaling.
std::optional<Hit> intersect_planar_disk(const Vec3& o, const Vec3& d, double r_in, double r_out) {
  if (d.z == 0.0) return std::nullopt;
  const double t = -o.z / d.z;
  if (t <= kMinT) return std::nullopt;
  const double x = o.x + t * d.x;
  const double y = o.y + t * d.y;
  const double r2 = x * x + y * y;
  if (r2 < r_in * r_in || r2 > r_out * r_out) return std::nullopt;
  return Hit{t, {0.0, 0.0, 1.0}};
}

std::optional<Hit> intersect(const Plane& p, const Vec3& o, const Vec3& d) {
  if (d.z == 0.0) return std::nullopt;
  const double t = -o.z / d.z;
  if (t <= kMinT) return std::nullopt;
  const double x = o.x + t * d.x;
  const double y = o.y + t * d.y;
  if (std::abs(x) > p.half_extent || std::abs(y) > p.half_extent) return std::nullopt;
  return Hit{t, {0.0, 0.0, 1.0}};
}

std::optional<Hit> intersect(const Ring& r, const Vec3& o, const Vec3& d) {
  return intersect_planar_disk(o, d, r.inner_radius, r.outer_radius);
}

std::optional<Hit> intersect(const Sphere& s, const Vec3& o, const Vec3& d) {
  const double a = d.dot(d);
  const double b = o.dot(d);
  const double c = o.dot(o) - s.radius * s.radius;
  const double disc = b * b - a * c;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  double t = (-b - sq) / a;
  if (t <= kMinT) t = (-b + sq) / a;
  if (t <= kMinT) return std::nullopt;
  return Hit{t, o + d * t};
}

std::optional<Hit> intersect(const Box& box, const Vec3& o, const Vec3& d) {
  const double oa[3] = {o.x, o.y, o.z};
  const double da[3] = {d.x, d.y, d.z};
  const double ha[3] = {box.half_extents.x, box.half_extents.y, box.half_extents.z};
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  int near_axis = -1, far_axis = -1;
  double near_sign = 0.0, far_sign = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (da[i] == 0.0) {
      if (std::abs(oa[i]) > ha[i]) return std::nullopt;
      continue;
    }
    double t0 = (-ha[i] - oa[i]) / da[i];
    double t1 = (ha[i] - oa[i]) / da[i];
    double s0 = -1.0, s1 = 1.0;
    if (t0 > t1) {
      std::swap(t0, t1);
      std::swap(s0, s1);
    }
    if (t0 > t_near) {
      t_near = t0;
      near_axis = i;
      near_sign = s0;
    }
    if (t1 < t_far) {
      t_far = t1;
      far_axis = i;
      far_sign = s1;
    }
    if (t_near > t_far) return std::nullopt;
  }
  double t = t_near;
  int axis = near_axis;
  double sign = near_sign;
  if (t <= kMinT) {
    t = t_far;
    axis = far_axis;
    sign = far_sign;
  }
  if (t <= kMinT || axis < 0) return std::nullopt;
  Vec3 n;
  (axis == 0 ? n.x : axis == 1 ? n.y : n.z) = sign;
  return Hit{t, n};
}

std::optional<Hit> intersect(const Cylinder& cyl, const Vec3& o, const Vec3& d) {
  std::optional<Hit> best;
  auto consider = [&](double t, const Vec3& n) {
    if (t > kMinT && (!best || t < best->t)) best = Hit{t, n};
  };

  const double a = d.x * d.x + d.y * d.y;
  if (a > 0.0) {
    const double b = o.x * d.x + o.y * d.y;
    const double c = o.x * o.x + o.y * o.y - cyl.radius * cyl.radius;
    const double disc = b * b - a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-b - sq) / a, (-b + sq) / a}) {
        const double z = o.z + t * d.z;
        if (std::abs(z) <= cyl.half_height) consider(t, {o.x + t * d.x, o.y + t * d.y, 0.0});
      }
    }
  }
  if (d.z != 0.0) {
    for (double cap : {-cyl.half_height, cyl.half_height}) {
      const double t = (cap - o.z) / d.z;
      const double x = o.x + t * d.x;
      const double y = o.y + t * d.y;
      if (x * x + y * y <= cyl.radius * cyl.radius) consider(t, {0.0, 0.0, cap > 0 ? 1.0 : -1.0});
    }
  }
  return best;
}

// Object-space placement cached per render.
struct Placed {
  const SceneObject* object;
  Mat3 rotation;
  Mat3 rotation_t;
  Vec3 inv_scale;
  bool flat_surface;
};

std::vector<Placed> place_objects(const Scene& scene) {
  std::vector<Placed> placed;
  placed.reserve(scene.objects().size());
  for (const SceneObject& obj : scene.objects()) {
    if (!obj.visible) continue;
    const Mat3 r = obj.transform.rotation_matrix();
    const Vec3& s = obj.transform.scale;
    const bool flat = std::holds_alternative<Plane>(obj.primitive) ||
                      std::holds_alternative<Ring>(obj.primitive);
    placed.push_back({&obj, r, r.transposed(), {1.0 / s.x, 1.0 / s.y, 1.0 / s.z}, flat});
  }
  return placed;
}

struct Shaded {
  double t;
  Color color;
};

std::optional<Shaded> trace(const std::vector<Placed>& placed, const DirectionalLight& light,
                            const Vec3& origin, const Vec3& dir) {
  const Placed* best = nullptr;
  Hit best_hit;
  Vec3 best_o, best_d;
  for (const Placed& p : placed) {
    const Vec3 o = (p.rotation_t * (origin - p.object->transform.position)).hadamard(p.inv_scale);
    const Vec3 d = (p.rotation_t * dir).hadamard(p.inv_scale);
    const auto hit = std::visit([&](const auto& prim) { return intersect(prim, o, d); },
                                p.object->primitive);
    if (hit && hit->t < best_hit.t) {
      best = &p;
      best_hit = *hit;
      best_o = o;
      best_d = d;
    }
  }
  if (best == nullptr) return std::nullopt;

  Vec3 normal = (best->rotation * best_hit.normal.hadamard(best->inv_scale)).normalized();
  if (normal.dot(dir) > 0.0) normal = -normal;

  const Vec3& s = best->object->transform.scale;
  const Vec3 local = best_o + best_d * best_hit.t;
  double u = local.x * s.x;
  const double v = local.y * s.y;
  if (!best->flat_surface) u += local.z * s.z;

  const Color albedo = material_albedo(best->object->material, u, v);
  return Shaded{best_hit.t, shade(albedo, normal, light)};
}

}  // namespace

std::uint8_t to_byte(double channel) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(channel, 0.0, 1.0) * 255.0));
}

Color shade(const Color& albedo, const Vec3& normal, const DirectionalLight& light) {
  const double lambert = std::max(0.0, normal.dot(-light.direction));
  const double k = light.ambient + light.intensity * lambert;
  return {std::clamp(albedo.r * k, 0.0, 1.0), std::clamp(albedo.g * k, 0.0, 1.0),
          std::clamp(albedo.b * k, 0.0, 1.0)};
}

RenderOutput render_with_depth(const Scene& scene) {
  const Camera& cam = scene.camera();
  if (!cam.valid()) throw RenderError("degenerate camera");
  const int w = cam.resolution.width;
  const int h = cam.resolution.height;
  RenderOutput out{FrameBuffer(w, h), DepthBuffer(w, h)};

  const std::vector<Placed> placed = place_objects(scene);
  const Vec3 origin = cam.pose.position;
  const std::uint8_t bg[3] = {to_byte(scene.background().r), to_byte(scene.background().g),
                              to_byte(scene.background().b)};
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const Vec3 dir = camera_ray_direction(cam, col + 0.5, row + 0.5);
      std::uint8_t* px = out.color.pixel(row, col);
      if (const auto hit = trace(placed, scene.light(), origin, dir)) {
        px[0] = to_byte(hit->color.r);
        px[1] = to_byte(hit->color.g);
        px[2] = to_byte(hit->color.b);
        out.depth.depth[static_cast<std::size_t>(row) * w + col] = hit->t;
      } else {
        std::copy(bg, bg + 3, px);
      }
    }
  }
  return out;
}

FrameBuffer render(const Scene& scene) { return render_with_depth(scene).color; }

GrayFrame to_grayscale(const FrameBuffer& fb) {
  GrayFrame out(fb.width, fb.height);
  const std::size_t n = static_cast<std::size_t>(fb.width) * fb.height;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned r = fb.rgb[3 * i], g = fb.rgb[3 * i + 1], b = fb.rgb[3 * i + 2];
    out.pixels[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
  return out;
}

}  // namespace visualenv
