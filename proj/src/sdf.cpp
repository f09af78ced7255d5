#include "tactmesh/sdf.hpp"

#include <algorithm>
#include <cmath>

#include "tactmesh/common.hpp"

namespace tact {

namespace {

inline double len2(double x, double y) { return std::sqrt(x * x + y * y); }
inline double len3(double x, double y, double z) {
  return std::sqrt(x * x + y * y + z * z);
}
inline double clampd(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

double sd_sphere(const Vec3& p, double r) {
  return len3(p[0], p[1], p[2]) - r;
}

double sd_box(const Vec3& p, double bx, double by, double bz) {
  const double qx = std::abs(p[0]) - bx;
  const double qy = std::abs(p[1]) - by;
  const double qz = std::abs(p[2]) - bz;
  const double outside = len3(std::max(qx, 0.0), std::max(qy, 0.0), std::max(qz, 0.0));
  return outside + std::min(std::max({qx, qy, qz}), 0.0);
}

double sd_cylinder(const Vec3& p, double r, double hh) {
  const double dx = len2(p[0], p[1]) - r;
  const double dz = std::abs(p[2]) - hh;
  return std::min(std::max(dx, dz), 0.0) +
         len2(std::max(dx, 0.0), std::max(dz, 0.0));
}

// Capped cone along z: radius r_lo at z=-hh, r_hi at z=+hh.
double sd_cone(const Vec3& p, double r_lo, double r_hi, double hh) {
  const double qx = len2(p[0], p[1]);
  const double qy = p[2];
  const double k1x = r_hi, k1y = hh;
  const double k2x = r_hi - r_lo, k2y = 2.0 * hh;
  const double cax = qx - std::min(qx, (qy < 0.0) ? r_lo : r_hi);
  const double cay = std::abs(qy) - hh;
  const double t = clampd(((k1x - qx) * k2x + (k1y - qy) * k2y) /
                              (k2x * k2x + k2y * k2y),
                          0.0, 1.0);
  const double cbx = qx - k1x + k2x * t;
  const double cby = qy - k1y + k2y * t;
  const double s = (cbx < 0.0 && cay < 0.0) ? -1.0 : 1.0;
  return s * std::sqrt(std::min(cax * cax + cay * cay, cbx * cbx + cby * cby));
}

double sd_capsule(const Vec3& p, double r, double half_len) {
  const double z = clampd(p[2], -half_len, half_len);
  return len3(p[0], p[1], p[2] - z) - r;
}

double sd_torus(const Vec3& p, double ring_r, double tube_r) {
  return len2(len2(p[0], p[1]) - ring_r, p[2]) - tube_r;
}

double sd_hex_prism(const Vec3& p, double r, double hh) {
  const double kx = -0.8660254037844386, ky = 0.5, kz = 0.5773502691896258;
  double px = std::abs(p[0]), py = std::abs(p[1]);
  const double d = 2.0 * std::min(kx * px + ky * py, 0.0);
  px -= d * kx;
  py -= d * ky;
  const double ex = px - clampd(px, -kz * r, kz * r);
  const double ey = py - r;
  const double d1 = len2(ex, ey) * ((py - r < 0.0) ? -1.0 : 1.0);
  const double d2 = std::abs(p[2]) - hh;
  return std::min(std::max(d1, d2), 0.0) +
         len2(std::max(d1, 0.0), std::max(d2, 0.0));
}

double sd_tri_prism(const Vec3& p, double r, double hh) {
  const double qx = std::abs(p[0]), qz = std::abs(p[2]);
  return std::max(qz - hh,
                  std::max(qx * 0.8660254037844386 + p[1] * 0.5, -p[1]) -
                      r * 0.5);
}

// Square pyramid, apex at z=-hh, base (half-extent ha) at z=+hh.
double sd_pyramid(const Vec3& p, double ha, double hh) {
  const double norm = len2(2.0 * hh, ha);
  const double side =
      (2.0 * hh * std::max(std::abs(p[0]), std::abs(p[1])) -
       ha * (p[2] + hh)) /
      norm;
  return std::max(side, p[2] - hh);
}

double sd_cross(const Vec3& p, double half_len, double half_w, double hh) {
  return std::min(sd_box(p, half_len, half_w, hh),
                  sd_box(p, half_w, half_len, hh));
}

double sd_ring(const Vec3& p, double r_out, double r_in, double hh) {
  return std::max(sd_cylinder(p, r_out, hh), r_in - len2(p[0], p[1]));
}

// Triangular wedge with its edge along y at the bottom.
double sd_wedge(const Vec3& p, double half_w, double hh, double half_len) {
  const double norm = len2(2.0 * hh, half_w);
  const double slant =
      (2.0 * hh * std::abs(p[0]) - half_w * (p[2] + hh)) / norm;
  return std::max({slant, std::abs(p[1]) - half_len, p[2] - hh});
}

double sd_dome(const Vec3& p, double r) {
  return std::max(sd_sphere(p, r), p[2]);
}

double sd_stud(const Vec3& p, double plate_r, double plate_hh, double boss_r,
               double boss_hh) {
  Vec3 plate_p = {p[0], p[1], p[2] - plate_hh};
  Vec3 boss_p = {p[0], p[1], p[2] + boss_hh};
  return std::min(sd_cylinder(plate_p, plate_r, plate_hh),
                  sd_cylinder(boss_p, boss_r, boss_hh));
}

double sd_slot_plate(const Vec3& p, double half_a, double half_t,
                     double slot_half_w) {
  const Vec3 slot_p = {p[0], p[1], p[2] + half_t};
  return std::max(sd_box(p, half_a, half_a, half_t),
                  -sd_box(slot_p, slot_half_w, half_a * 2.0, half_t));
}

double sd_textured_plate(const Vec3& p, double half_a, double half_t,
                         double bump_r, double pitch) {
  const double plate = sd_box(p, half_a, half_a, half_t);
  const double m = std::floor(half_a / pitch);
  const double ix = clampd(std::round(p[0] / pitch), -m, m);
  const double iy = clampd(std::round(p[1] / pitch), -m, m);
  const Vec3 bump_p = {p[0] - ix * pitch, p[1] - iy * pitch, p[2] + half_t};
  return std::min(plate, sd_sphere(bump_p, bump_r));
}

}  // namespace

Vec3 Pose::to_local(const Vec3& world) const {
  const double w = rotation[0], x = rotation[1], y = rotation[2],
               z = rotation[3];
  const Vec3 t = {world[0] - translation[0], world[1] - translation[1],
                  world[2] - translation[2]};
  // Rotate by the conjugate quaternion.
  const double cw = w, cx = -x, cy = -y, cz = -z;
  const double tx = 2.0 * (cy * t[2] - cz * t[1]);
  const double ty = 2.0 * (cz * t[0] - cx * t[2]);
  const double tz = 2.0 * (cx * t[1] - cy * t[0]);
  return {t[0] + cw * tx + (cy * tz - cz * ty),
          t[1] + cw * ty + (cz * tx - cx * tz),
          t[2] + cw * tz + (cx * ty - cy * tx)};
}

Vec3 Pose::to_world(const Vec3& local) const {
  const double w = rotation[0], x = rotation[1], y = rotation[2],
               z = rotation[3];
  const double tx = 2.0 * (y * local[2] - z * local[1]);
  const double ty = 2.0 * (z * local[0] - x * local[2]);
  const double tz = 2.0 * (x * local[1] - y * local[0]);
  return {local[0] + w * tx + (y * tz - z * ty) + translation[0],
          local[1] + w * ty + (z * tx - x * tz) + translation[1],
          local[2] + w * tz + (x * ty - y * tx) + translation[2]};
}

std::array<double, 4> Pose::quat_normalize(std::array<double, 4> q) {
  const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (auto& v : q) v /= n;
  return q;
}

Pose Pose::from_yaw_tilt(double yaw, double tilt_axis_angle, double tilt) {
  // Tilt about a horizontal axis, then yaw about z.
  const double cy = std::cos(yaw * 0.5), sy = std::sin(yaw * 0.5);
  const double ct = std::cos(tilt * 0.5), st = std::sin(tilt * 0.5);
  const double ax = std::cos(tilt_axis_angle), ay = std::sin(tilt_axis_angle);
  const std::array<double, 4> qt = {ct, st * ax, st * ay, 0.0};
  const std::array<double, 4> qy = {cy, 0.0, 0.0, sy};
  Pose pose;
  pose.rotation = quat_normalize({
      qy[0] * qt[0] - qy[1] * qt[1] - qy[2] * qt[2] - qy[3] * qt[3],
      qy[0] * qt[1] + qy[1] * qt[0] + qy[2] * qt[3] - qy[3] * qt[2],
      qy[0] * qt[2] - qy[1] * qt[3] + qy[2] * qt[0] + qy[3] * qt[1],
      qy[0] * qt[3] + qy[1] * qt[2] - qy[2] * qt[1] + qy[3] * qt[0],
  });
  return pose;
}

double Indenter::sdf_local(const Vec3& p) const {
  const auto& q = params;
  switch (shape) {
    case IndenterShape::sphere: return sd_sphere(p, q[0]);
    case IndenterShape::cube: return sd_box(p, q[0], q[0], q[0]);
    case IndenterShape::cylinder: return sd_cylinder(p, q[0], q[1]);
    case IndenterShape::cone: return sd_cone(p, 0.0, q[0], q[1]);
    case IndenterShape::capsule: return sd_capsule(p, q[0], q[1]);
    case IndenterShape::torus: return sd_torus(p, q[0], q[1]);
    case IndenterShape::hex_prism: return sd_hex_prism(p, q[0], q[1]);
    case IndenterShape::tri_prism: return sd_tri_prism(p, q[0], q[1]);
    case IndenterShape::pyramid: return sd_pyramid(p, q[0], q[1]);
    case IndenterShape::cross: return sd_cross(p, q[0], q[1], q[2]);
    case IndenterShape::ring: return sd_ring(p, q[0], q[1], q[2]);
    case IndenterShape::wedge: return sd_wedge(p, q[0], q[1], q[2]);
    case IndenterShape::dome: return sd_dome(p, q[0]);
    case IndenterShape::stud: return sd_stud(p, q[0], q[1], q[2], q[3]);
    case IndenterShape::slot_plate: return sd_slot_plate(p, q[0], q[1], q[2]);
    case IndenterShape::textured_plate:
      return sd_textured_plate(p, q[0], q[1], q[2], q[3]);
  }
  return 1e9;
}

double Indenter::sdf(const Vec3& world) const {
  return sdf_local(pose.to_local(world));
}

Vec3 Indenter::sdf_gradient(const Vec3& world) const {
  const double h = 1e-5;
  Vec3 g;
  for (int a = 0; a < 3; ++a) {
    Vec3 up = world, dn = world;
    up[a] += h;
    dn[a] -= h;
    g[a] = (sdf(up) - sdf(dn)) / (2.0 * h);
  }
  const double n = len3(g[0], g[1], g[2]);
  if (n > 1e-12)
    for (auto& v : g) v /= n;
  else
    g = {0.0, 0.0, 1.0};
  return g;
}

namespace {
int param_count(IndenterShape s) {
  switch (s) {
    case IndenterShape::sphere:
    case IndenterShape::dome: return 1;
    case IndenterShape::cube: return 1;
    case IndenterShape::cylinder:
    case IndenterShape::cone:
    case IndenterShape::capsule:
    case IndenterShape::torus:
    case IndenterShape::hex_prism:
    case IndenterShape::tri_prism:
    case IndenterShape::pyramid: return 2;
    case IndenterShape::cross:
    case IndenterShape::ring:
    case IndenterShape::wedge:
    case IndenterShape::slot_plate: return 3;
    case IndenterShape::stud:
    case IndenterShape::textured_plate: return 4;
  }
  return 0;
}
}  // namespace

Indenter Indenter::make(IndenterShape shape, std::vector<double> params) {
  require(int(params.size()) == param_count(shape), ErrorCode::contract,
          "wrong parameter count for indenter shape");
  for (double p : params)
    require(p > 0.0, ErrorCode::contract,
            "indenter parameters must be strictly positive");
  Indenter ind;
  ind.shape = shape;
  ind.params = std::move(params);
  return ind;
}

Indenter Indenter::standard(int id) {
  require(id >= 0 && id < kIndenterCount, ErrorCode::contract,
          "indenter id out of range");
  switch (static_cast<IndenterShape>(id)) {
    case IndenterShape::sphere: return make(IndenterShape::sphere, {0.50});
    case IndenterShape::cube: return make(IndenterShape::cube, {0.40});
    case IndenterShape::cylinder:
      return make(IndenterShape::cylinder, {0.45, 0.40});
    case IndenterShape::cone: return make(IndenterShape::cone, {0.50, 0.40});
    case IndenterShape::capsule:
      return make(IndenterShape::capsule, {0.30, 0.40});
    case IndenterShape::torus: return make(IndenterShape::torus, {0.45, 0.18});
    case IndenterShape::hex_prism:
      return make(IndenterShape::hex_prism, {0.45, 0.30});
    case IndenterShape::tri_prism:
      return make(IndenterShape::tri_prism, {0.50, 0.35});
    case IndenterShape::pyramid:
      return make(IndenterShape::pyramid, {0.40, 0.30});
    case IndenterShape::cross:
      return make(IndenterShape::cross, {0.45, 0.15, 0.25});
    case IndenterShape::ring:
      return make(IndenterShape::ring, {0.50, 0.32, 0.30});
    case IndenterShape::wedge:
      return make(IndenterShape::wedge, {0.40, 0.25, 0.45});
    case IndenterShape::dome: return make(IndenterShape::dome, {0.55});
    case IndenterShape::stud:
      return make(IndenterShape::stud, {0.60, 0.125, 0.20, 0.125});
    case IndenterShape::slot_plate:
      return make(IndenterShape::slot_plate, {0.45, 0.15, 0.12});
    case IndenterShape::textured_plate:
      return make(IndenterShape::textured_plate, {0.45, 0.12, 0.08, 0.30});
  }
  return {};
}

const char* Indenter::shape_name(IndenterShape shape) {
  switch (shape) {
    case IndenterShape::sphere: return "sphere";
    case IndenterShape::cube: return "cube";
    case IndenterShape::cylinder: return "cylinder";
    case IndenterShape::cone: return "cone";
    case IndenterShape::capsule: return "capsule";
    case IndenterShape::torus: return "torus";
    case IndenterShape::hex_prism: return "hex_prism";
    case IndenterShape::tri_prism: return "tri_prism";
    case IndenterShape::pyramid: return "pyramid";
    case IndenterShape::cross: return "cross";
    case IndenterShape::ring: return "ring";
    case IndenterShape::wedge: return "wedge";
    case IndenterShape::dome: return "dome";
    case IndenterShape::stud: return "stud";
    case IndenterShape::slot_plate: return "slot_plate";
    case IndenterShape::textured_plate: return "textured_plate";
  }
  return "?";
}

}  // namespace tact
