#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <tuple>

#include "visualenv/rng.hpp"
#include "visualenv/scene.hpp"
#include "visualenv/scene_json.hpp"

using namespace visualenv;

namespace {

SceneObject box(const std::string& id) {
  return {id, Box{{0.5, 0.5, 0.5}}, FlatMaterial{Color::gray(0.5)}, Transform{}, true};
}

// Camera at the origin looking down -Z.
Camera axis_camera(double focal, double sensor, int w, int h) {
  Camera c;
  c.focal_length = focal;
  c.sensor_width = sensor;
  c.resolution = {w, h};
  return c;
}

}  // namespace

TEST(SceneTest, AddObject) {
  Scene scene;
  scene.add_object(box("cart"));
  EXPECT_EQ(scene.objects().size(), 1u);
}

TEST(SceneTest, AddDuplicateIdThrows) {
  Scene scene;
  scene.add_object(box("cart"));
  SceneObject sphere{"cart", Sphere{0.3}, FlatMaterial{}, Transform{}, true};
  try {
    scene.add_object(sphere);
    FAIL() << "expected DuplicateId";
  } catch (const SceneError& e) {
    EXPECT_EQ(e.code(), SceneErrorCode::DuplicateId);
  }
  EXPECT_EQ(scene.objects().size(), 1u);
}

TEST(SceneTest, AddSecondObjectLeavesFirstUntouched) {
  Scene scene;
  scene.add_object(box("cart"));
  const SceneObject before = scene.get_object("cart");
  scene.add_object({"pole", Cylinder{0.05, 0.5}, FlatMaterial{}, Transform{}, true});
  EXPECT_EQ(scene.objects().size(), 2u);
  EXPECT_EQ(scene.get_object("cart"), before);
}

TEST(SceneTest, SetTransform) {
  Scene scene;
  scene.add_object(box("cart"));
  Transform t;
  t.position = {1.0, 0.0, 0.0};
  scene.set_transform("cart", t);
  EXPECT_EQ(scene.get_object("cart").transform.position, (Vec3{1.0, 0.0, 0.0}));
}

TEST(SceneTest, SetTransformUnknownIdThrows) {
  Scene scene;
  scene.add_object(box("cart"));
  try {
    scene.set_transform("ball", Transform{});
    FAIL() << "expected UnknownId";
  } catch (const SceneError& e) {
    EXPECT_EQ(e.code(), SceneErrorCode::UnknownId);
  }
}

TEST(SceneTest, TransformRoundTripIsBitIdentical) {
  Scene scene;
  scene.add_object(box("cart"));
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Transform t;
    t.position = {rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
    t.rotation = {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
    t.scale = {rng.uniform(0.01, 5), rng.uniform(0.01, 5), rng.uniform(0.01, 5)};
    scene.set_transform("cart", t);
    EXPECT_EQ(scene.get_object("cart").transform, t);
  }
  Transform quarter;
  quarter.rotation = {0.0, 0.0, kPi / 2};
  scene.set_transform("cart", quarter);
  EXPECT_EQ(scene.get_object("cart").transform.rotation, (Vec3{0.0, 0.0, kPi / 2}));
}

TEST(SceneTest, RejectsInvalidGeometry) {
  Scene scene;
  EXPECT_THROW(scene.add_object({"r", Ring{2.0, 1.0}, FlatMaterial{}, Transform{}, true}), SceneError);
  EXPECT_THROW(scene.add_object({"s", Sphere{0.0}, FlatMaterial{}, Transform{}, true}), SceneError);
  Transform flat;
  flat.scale = {1.0, 0.0, 1.0};
  EXPECT_THROW(scene.add_object({"b", Box{}, FlatMaterial{}, flat, true}), SceneError);
  EXPECT_THROW(scene.add_object({"n", Plane{1.0}, NoiseTexture{1, 0.0, {}}, Transform{}, true}),
               SceneError);
  EXPECT_THROW(Scene(Camera{}, DirectionalLight{{0.0, 0.0, -2.0}, 1.0, 0.1}, Color{}), SceneError);
  EXPECT_TRUE(scene.objects().empty());
}

TEST(CameraProjectTest, OpticalAxisMapsToCenter) {
  const Camera cam = axis_camera(50, 36, 100, 100);
  const auto p = camera_project(cam, {0.0, 0.0, -1.0});
  ASSERT_TRUE(p);
  EXPECT_DOUBLE_EQ(p->u, 50.0);
  EXPECT_DOUBLE_EQ(p->v, 50.0);
}

TEST(CameraProjectTest, OffAxisPointMatchesIntrinsicMatrixOracle) {
  // tests/oracle/projection.py: K-matrix projection gives u = 63.888888888888886.
  const Camera cam = axis_camera(50, 36, 100, 100);
  const auto p = camera_project(cam, {0.1, 0.0, -1.0});
  ASSERT_TRUE(p);
  EXPECT_NEAR(p->u, 63.888888888888886, 1e-12);
  EXPECT_NEAR(p->v, 50.0, 1e-12);
}

TEST(CameraProjectTest, PointBehindCameraIsNone) {
  const Camera cam = axis_camera(50, 36, 100, 100);
  EXPECT_FALSE(camera_project(cam, {0.0, 0.0, 1.0}));
  EXPECT_FALSE(camera_project(cam, {0.0, 0.0, 0.0}));
}

TEST(CameraProjectTest, PoseIsApplied) {
  // Camera 5 m up, identity rotation: looks straight down.
  Camera cam = axis_camera(18, 36, 100, 100);
  cam.pose.position = {2.0, 3.0, 5.0};
  const auto p = camera_project(cam, {2.0, 3.0, 0.0});
  ASSERT_TRUE(p);
  EXPECT_DOUBLE_EQ(p->u, 50.0);
  EXPECT_DOUBLE_EQ(p->v, 50.0);
  // 90 degree FOV: ground half-width at 5 m is 5 m.
  EXPECT_NEAR(cam.horizontal_fov(), kPi / 2, 1e-12);
  EXPECT_FALSE(camera_project(cam, {2.0 + 5.01, 3.0, 0.0}));
  EXPECT_TRUE(camera_project(cam, {2.0 + 4.99, 3.0, 0.0}));
}

TEST(CameraProjectTest, RayThroughPixelProjectsBackToPixel) {
  Camera cam = axis_camera(25, 36, 80, 60);
  cam.pose.position = {0.3, -4.0, 1.2};
  cam.pose.rotation = {1.4, 0.1, -0.2};
  for (double u : {0.5, 13.25, 40.0, 79.5}) {
    for (double v : {0.5, 29.0, 59.5}) {
      const Vec3 p = cam.pose.position + camera_ray_direction(cam, u, v) * 7.0;
      const auto back = camera_project(cam, p);
      ASSERT_TRUE(back);
      EXPECT_NEAR(back->u, u, 1e-9);
      EXPECT_NEAR(back->v, v, 1e-9);
    }
  }
}

TEST(CameraProjectTest, PropertyScaleConsistentAndInsideImage) {
  SplitMix64 rng(5);
  int projected = 0;
  for (int i = 0; i < 5000; ++i) {
    Camera cam = axis_camera(rng.uniform(10, 80), rng.uniform(20, 40),
                             1 + static_cast<int>(rng.below(200)),
                             1 + static_cast<int>(rng.below(200)));
    cam.pose.position = {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    cam.pose.rotation = {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
    const Vec3 p{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const auto a = camera_project(cam, p);
    if (a) {
      ++projected;
      EXPECT_GE(a->u, 0.0);
      EXPECT_LT(a->u, cam.resolution.width);
      EXPECT_GE(a->v, 0.0);
      EXPECT_LT(a->v, cam.resolution.height);
    }
    Camera big = cam;
    big.resolution = {cam.resolution.width * 2, cam.resolution.height * 2};
    const auto b = camera_project(big, p);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_NEAR(b->u, 2 * a->u, 1e-9 * (1 + a->u));
      EXPECT_NEAR(b->v, 2 * a->v, 1e-9 * (1 + a->v));
    }
  }
  EXPECT_GT(projected, 100);
}

TEST(TextureTest, Deterministic) {
  const Material m = NoiseTexture{42, 0.7, {Color{0.1, 0.2, 0.3}, Color{0.9, 0.8, 0.7}}};
  EXPECT_EQ(texture_sample(m, 1.25, -3.5), texture_sample(m, 1.25, -3.5));
  const Material c = CheckerHash{3, 0.5};
  EXPECT_EQ(texture_sample(c, 10.1, 2.2), texture_sample(c, 10.1, 2.2));
}

TEST(TextureTest, PureOverMillionCalls) {
  const Material m = NoiseTexture{9, 1.3, {Color::gray(0.0), Color::gray(1.0)}};
  std::set<std::tuple<double, double, double>> outputs;
  for (int i = 0; i < 1'000'000; ++i) {
    const Color c = texture_sample(m, 0.37, 12.9);
    outputs.emplace(c.r, c.g, c.b);
  }
  EXPECT_EQ(outputs.size(), 1u);
}

TEST(TextureTest, DegeneratePaletteIsConstant) {
  const Material m = NoiseTexture{77, 0.5, {Color::gray(0.0), Color::gray(0.0)}};
  SplitMix64 rng(1);
  for (int i = 0; i < 1000; ++i)
    EXPECT_EQ(texture_sample(m, rng.uniform(-50, 50), rng.uniform(-50, 50)), Color::gray(0.0));
}

TEST(TextureTest, SeedsDisagreeAlmostEverywhere) {
  const auto palette = std::make_pair(Color::gray(0.0), Color::gray(1.0));
  const Material a = NoiseTexture{1, 1.0, palette};
  const Material b = NoiseTexture{2, 1.0, palette};
  EXPECT_NE(texture_sample(a, 0.5, 0.5), texture_sample(b, 0.5, 0.5));
  SplitMix64 rng(2024);
  int differ = 0;
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-100, 100), v = rng.uniform(-100, 100);
    if (!(texture_sample(a, u, v) == texture_sample(b, u, v))) ++differ;
  }
  EXPECT_GE(differ, 990);
}

TEST(TextureTest, NoiseStaysInsidePalette) {
  const Material m = NoiseTexture{5, 0.25, {Color::gray(0.2), Color::gray(0.6)}};
  SplitMix64 rng(8);
  for (int i = 0; i < 10000; ++i) {
    const Color c = texture_sample(m, rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3));
    EXPECT_GE(c.r, 0.2);
    EXPECT_LE(c.r, 0.6);
  }
}

TEST(TextureTest, NoiseIsContinuousAcrossLatticeLines) {
  const Material m = NoiseTexture{12, 1.0, {Color::gray(0.0), Color::gray(1.0)}};
  for (double x : {-3.0, 0.0, 1.0, 7.0}) {
    const Color l = texture_sample(m, x - 1e-9, 0.3);
    const Color r = texture_sample(m, x + 1e-9, 0.3);
    EXPECT_NEAR(l.r, r.r, 1e-6);
  }
}

TEST(TextureTest, FlatIsNotATexture) {
  try {
    texture_sample(FlatMaterial{Color::gray(0.5)}, 0.0, 0.0);
    FAIL() << "expected NotATexture";
  } catch (const SceneError& e) {
    EXPECT_EQ(e.code(), SceneErrorCode::NotATexture);
  }
}

TEST(SceneJsonTest, RoundTripPreservesEverything) {
  Camera cam = axis_camera(18, 36, 64, 48);
  cam.pose.position = {1.0 / 3.0, -2.5, 1e-7};
  cam.pose.rotation = {kPi / 2, 0.1, -0.3};
  Scene scene(cam, DirectionalLight{Vec3{0.3, 0.5, -0.8}.normalized(), 0.75, 0.3},
              Color{0.1, 0.2, 0.3});
  scene.add_object({"plane", Plane{12.0},
                    NoiseTexture{0xffffffffffffffffULL, 0.75, {Color::gray(0.1), Color::gray(0.9)}},
                    Transform{}, true});
  Transform t;
  t.position = {0.1, 0.2, 0.3};
  t.rotation = {0.4, 0.5, 0.6};
  t.scale = {1.5, 2.0, 0.25};
  scene.add_object({"box", Box{{0.1, 0.2, 0.3}}, FlatMaterial{Color{0.5, 0.25, 1.0}}, t, false});
  scene.add_object({"sphere", Sphere{0.3}, CheckerHash{7, 0.5}, t, true});
  scene.add_object({"cyl", Cylinder{0.05, 0.5}, FlatMaterial{}, t, true});
  scene.add_object({"ring", Ring{1.9, 2.1}, FlatMaterial{}, t, true});

  const std::string text = scene_to_json(scene).dump();
  EXPECT_EQ(scene_from_json(nlohmann::json::parse(text)), scene);
}

TEST(SceneJsonTest, RejectsMalformedDocuments) {
  EXPECT_THROW(scene_from_json(nlohmann::json::object()), SceneError);
  auto doc = scene_to_json(Scene(axis_camera(18, 36, 10, 10), DirectionalLight{}, Color{}));
  doc["objects"] = nlohmann::json::array(
      {{{"id", "x"}, {"primitive", {{"kind", "torus"}}}, {"material", {{"kind", "flat"}, {"albedo", {0, 0, 0}}}},
        {"transform", {{"position", {0, 0, 0}}, {"rotation", {0, 0, 0}}}}}});
  EXPECT_THROW(scene_from_json(doc), SceneError);
  doc["objects"] = nlohmann::json::array();
  doc["camera"]["focal_length"] = 0.0;
  EXPECT_THROW(scene_from_json(doc), SceneError);
}
