#pragma once

#include <array>
#include <string>
#include <vector>

namespace tact {

using Vec3 = std::array<double, 3>;

// Unit quaternion (w, x, y, z) + translation, cm.
struct Pose {
  std::array<double, 4> rotation{1.0, 0.0, 0.0, 0.0};
  std::array<double, 3> translation{0.0, 0.0, 0.0};

  Vec3 to_local(const Vec3& world) const;
  Vec3 to_world(const Vec3& local) const;
  static Pose from_yaw_tilt(double yaw, double tilt_axis_angle, double tilt);
  static std::array<double, 4> quat_normalize(std::array<double, 4> q);
};

// The rigid primitive catalog used to generate contacts. Shapes are authored
// with their contact feature facing -z (approach direction) and parameters in
// cm. Signed distances are exact or conservative 1-Lipschitz bounds
// (min/max compositions), which the solver's projection step tolerates.
enum class IndenterShape : int {
  sphere = 0,
  cube,
  cylinder,
  cone,
  capsule,
  torus,
  hex_prism,
  tri_prism,
  pyramid,
  cross,
  ring,
  wedge,
  dome,
  stud,
  slot_plate,
  textured_plate,
};

constexpr int kIndenterCount = 16;

struct Indenter {
  IndenterShape shape = IndenterShape::sphere;
  std::vector<double> params;
  Pose pose;

  double sdf_local(const Vec3& p) const;
  double sdf(const Vec3& world) const;
  Vec3 sdf_gradient(const Vec3& world) const;  // normalized, central diff

  static Indenter make(IndenterShape shape, std::vector<double> params);
  // Catalog instance `id` in [0, 16) with its default dimensions.
  static Indenter standard(int id);
  static const char* shape_name(IndenterShape shape);
};

}  // namespace tact
