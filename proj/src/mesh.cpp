#include "tactmesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "tactmesh/bytes.hpp"
#include "tactmesh/common.hpp"

namespace tact {

namespace {

constexpr double kPi = 3.14159265358979323846;

double signed_volume(const std::array<double, 3>& a,
                     const std::array<double, 3>& b,
                     const std::array<double, 3>& c,
                     const std::array<double, 3>& d) {
  const double ab[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double ac[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const double ad[3] = {d[0] - a[0], d[1] - a[1], d[2] - a[2]};
  const double det = ab[0] * (ac[1] * ad[2] - ac[2] * ad[1]) -
                     ab[1] * (ac[0] * ad[2] - ac[2] * ad[0]) +
                     ab[2] * (ac[0] * ad[1] - ac[1] * ad[0]);
  return det / 6.0;
}

// Concentric-ring disk lattice: ring j of nr has round(2*pi*j*density) points,
// alternate rings staggered by half a step. Returns 2D points and triangles.
struct DiskLattice {
  std::vector<std::array<double, 2>> points;  // [0] is the center
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> ring_sizes;
};

DiskLattice build_disk(double radius, int rings, double density) {
  DiskLattice disk;
  disk.points.push_back({0.0, 0.0});
  std::vector<int> ring_start;
  for (int j = 1; j <= rings; ++j) {
    const int s = std::max(3, int(std::lround(2.0 * kPi * j * density)));
    disk.ring_sizes.push_back(s);
    ring_start.push_back(int(disk.points.size()));
    const double r = radius * double(j) / double(rings);
    const double stagger = (j % 2 == 1) ? 0.0 : kPi / double(s);
    for (int t = 0; t < s; ++t) {
      const double a = 2.0 * kPi * double(t) / double(s) + stagger;
      disk.points.push_back({r * std::cos(a), r * std::sin(a)});
    }
  }

  auto fix_winding = [&disk](std::array<int, 3> tri) {
    const auto& a = disk.points[tri[0]];
    const auto& b = disk.points[tri[1]];
    const auto& c = disk.points[tri[2]];
    const double area2 = (b[0] - a[0]) * (c[1] - a[1]) -
                         (b[1] - a[1]) * (c[0] - a[0]);
    if (area2 < 0.0) std::swap(tri[1], tri[2]);
    return tri;
  };

  // Fan around the center.
  {
    const int s1 = disk.ring_sizes[0];
    for (int t = 0; t < s1; ++t)
      disk.triangles.push_back(
          fix_winding({0, ring_start[0] + t, ring_start[0] + (t + 1) % s1}));
  }

  auto dist2 = [&disk](int a, int b) {
    const double dx = disk.points[a][0] - disk.points[b][0];
    const double dy = disk.points[a][1] - disk.points[b][1];
    return dx * dx + dy * dy;
  };

  // Stitch consecutive rings with a two-pointer advancing front.
  for (int j = 0; j + 1 < rings; ++j) {
    const int si = disk.ring_sizes[j], so = disk.ring_sizes[j + 1];
    const int bi = ring_start[j], bo = ring_start[j + 1];
    // Outer start: nearest to inner point 0, lowest index on ties.
    int o0 = 0;
    double best = std::numeric_limits<double>::max();
    for (int t = 0; t < so; ++t) {
      const double d = dist2(bi, bo + t);
      if (d < best - 1e-15) {
        best = d;
        o0 = t;
      }
    }
    auto inner = [&](int t) { return bi + (t % si); };
    auto outer = [&](int t) { return bo + ((t + o0) % so); };
    int ti = 0, to = 0;
    while (ti < si || to < so) {
      bool advance_outer;
      if (ti == si)
        advance_outer = true;
      else if (to == so)
        advance_outer = false;
      else
        advance_outer = dist2(inner(ti), outer(to + 1)) <=
                        dist2(inner(ti + 1), outer(to));
      if (advance_outer) {
        disk.triangles.push_back(
            fix_winding({inner(ti), outer(to), outer(to + 1)}));
        ++to;
      } else {
        disk.triangles.push_back(
            fix_winding({inner(ti), outer(to), inner(ti + 1)}));
        ++ti;
      }
    }
  }
  return disk;
}

// Orientation-preserving prism relabelings; bottom (0,1,2), top (3,4,5) with
// vertical edges i -- i+3.
constexpr int kPrismPerms[6][6] = {
    {0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3}, {2, 0, 1, 5, 3, 4},
    {3, 5, 4, 0, 2, 1}, {5, 4, 3, 2, 1, 0}, {4, 3, 5, 1, 0, 2}};

// Split a prism into three tets with every quad diagonal drawn through the
// quad's smallest global vertex id, so shared faces of neighboring prisms
// are triangulated identically.
void split_prism(const int prism[6], std::vector<std::array<int, 4>>& tets) {
  int min_slot = 0;
  for (int s = 1; s < 6; ++s)
    if (prism[s] < prism[min_slot]) min_slot = s;
  const int* perm = nullptr;
  for (const auto& p : kPrismPerms)
    if (p[0] == min_slot) {
      perm = p;
      break;
    }
  int v[6];
  for (int s = 0; s < 6; ++s) v[s] = prism[perm[s]];
  if (std::min(v[1], v[5]) < std::min(v[2], v[4])) {
    tets.push_back({v[0], v[1], v[2], v[5]});
    tets.push_back({v[0], v[1], v[5], v[4]});
    tets.push_back({v[0], v[4], v[5], v[3]});
  } else {
    tets.push_back({v[0], v[1], v[2], v[4]});
    tets.push_back({v[0], v[4], v[2], v[5]});
    tets.push_back({v[0], v[4], v[5], v[3]});
  }
}

void finalize_topology(VolumetricMesh& mesh) {
  const int n = mesh.vertex_count();
  // Orient tets positively; swapping two indices flips the sign only.
  for (auto& t : mesh.tets) {
    const double vol = signed_volume(mesh.vertices[t[0]], mesh.vertices[t[1]],
                                     mesh.vertices[t[2]], mesh.vertices[t[3]]);
    if (vol < 0.0) std::swap(t[2], t[3]);
  }

  std::vector<std::set<int>> nbr(n);
  for (const auto& t : mesh.tets)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        nbr[t[a]].insert(t[b]);
        nbr[t[b]].insert(t[a]);
      }
  mesh.adjacency.assign(n, {});
  for (int i = 0; i < n; ++i)
    mesh.adjacency[i].assign(nbr[i].begin(), nbr[i].end());

  // Boundary faces appear in exactly one tet; orient them outward.
  std::map<std::array<int, 3>, std::pair<int, std::array<int, 4>>> faces;
  for (const auto& t : mesh.tets) {
    const int f[4][3] = {{t[1], t[2], t[3]},
                         {t[0], t[3], t[2]},
                         {t[0], t[1], t[3]},
                         {t[0], t[2], t[1]}};
    for (const auto& tri : f) {
      std::array<int, 3> key = {tri[0], tri[1], tri[2]};
      std::sort(key.begin(), key.end());
      auto it = faces.find(key);
      if (it == faces.end())
        faces.emplace(key, std::make_pair(1, t));
      else
        it->second.first++;
    }
  }
  mesh.surface_tris.clear();
  for (const auto& [key, info] : faces) {
    if (info.first != 1) continue;
    const auto& t = info.second;
    int opposite = -1;
    for (int s = 0; s < 4; ++s)
      if (t[s] != key[0] && t[s] != key[1] && t[s] != key[2]) opposite = t[s];
    std::array<int, 3> tri = key;
    const auto& a = mesh.vertices[tri[0]];
    const auto& b = mesh.vertices[tri[1]];
    const auto& c = mesh.vertices[tri[2]];
    const auto& d = mesh.vertices[opposite];
    // Outward when the opposite vertex sits behind the face normal.
    if (signed_volume(a, b, c, d) > 0.0) std::swap(tri[1], tri[2]);
    mesh.surface_tris.push_back(tri);
  }
}

struct MeshPlan {
  int layers = 0;
  int rings = 0;
  double density = 1.0;
  long long vertex_count = 0;
  long long edge_estimate = 0;
  bool aspect_ok = false;
};

// Exact counts for a candidate lattice without building it.
MeshPlan plan_counts(int layers, int rings, double density, double radius,
                     double height) {
  MeshPlan p;
  p.layers = layers;
  p.rings = rings;
  p.density = density;
  long long ssum = 0;
  int s_last = 0, s_first = 0;
  for (int j = 1; j <= rings; ++j) {
    const int s = std::max(3, int(std::lround(2.0 * kPi * j * density)));
    ssum += s;
    s_last = s;
    if (j == 1) s_first = s;
  }
  const long long v2 = 1 + ssum;
  const long long t2 = 2 * ssum - s_last;  // fan + per-gap (s_j + s_{j+1})
  const long long e2 = v2 + t2 - 1;        // Euler for a disk triangulation
  (void)s_first;
  p.vertex_count = v2 * (layers + 1);
  // Each layer gap adds one vertical edge per vertex and one diagonal per
  // 2D edge (quad faces of the prisms are split).
  p.edge_estimate = e2 * (layers + 1) + (long long)layers * (v2 + e2);
  const double h_plane = radius / double(rings);
  const double h_z = height / double(layers);
  const double ratio = std::max(h_plane / h_z, h_z / h_plane);
  p.aspect_ok = ratio <= 3.0;
  return p;
}

}  // namespace

std::size_t VolumetricMesh::edge_count() const {
  std::size_t total = 0;
  for (const auto& nbrs : adjacency) total += nbrs.size();
  return total / 2;
}

double VolumetricMesh::tet_volume(int t) const {
  const auto& tet = tets[std::size_t(t)];
  return signed_volume(vertices[tet[0]], vertices[tet[1]], vertices[tet[2]],
                       vertices[tet[3]]);
}

double VolumetricMesh::total_volume() const {
  double v = 0.0;
  for (int t = 0; t < int(tets.size()); ++t) v += tet_volume(t);
  return v;
}

std::vector<std::array<int, 3>> VolumetricMesh::top_surface_triangles() const {
  std::vector<char> on_top(vertices.size(), 0);
  for (int i : top_surface_ids) on_top[std::size_t(i)] = 1;
  std::vector<std::array<int, 3>> tris;
  for (const auto& tri : surface_tris)
    if (on_top[tri[0]] && on_top[tri[1]] && on_top[tri[2]])
      tris.push_back(tri);
  return tris;
}

std::uint64_t VolumetricMesh::content_hash() const {
  std::uint64_t h = fnv1a64("TMSH-content");
  h = fnv1a64(vertices.data(), vertices.size() * sizeof(vertices[0]), h);
  h = fnv1a64(tets.data(), tets.size() * sizeof(tets[0]), h);
  return h;
}

void VolumetricMesh::validate() const {
  const int n = vertex_count();
  for (const auto& t : tets)
    for (int s = 0; s < 4; ++s)
      require(t[s] >= 0 && t[s] < n, ErrorCode::contract,
              "tet index out of range");
  for (int t = 0; t < int(tets.size()); ++t)
    require(tet_volume(t) > 0.0, ErrorCode::contract,
            "non-positive tet volume");
  require(int(adjacency.size()) == n, ErrorCode::contract,
          "adjacency size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j : adjacency[i]) {
      require(j != i, ErrorCode::contract, "self loop in adjacency");
      require(std::binary_search(adjacency[j].begin(), adjacency[j].end(), i),
              ErrorCode::contract, "asymmetric adjacency");
    }
  std::set<int> base(base_ids.begin(), base_ids.end());
  for (int i : top_surface_ids)
    require(!base.count(i), ErrorCode::contract,
            "vertex on both base and top surface");
}

VolumetricMesh build_cylinder_mesh(double radius_cm, double height_cm,
                                   int target_vertices) {
  require(radius_cm > 0.0 && height_cm > 0.0, ErrorCode::config,
          "cylinder dimensions must be positive");
  if (target_vertices < 50)
    throw ConfigError("target_vertices below minimal resolvable mesh");

  // Candidate search: at least two element layers through the thickness;
  // within the vertex tolerance band prefer the sparsest adjacency.
  const double band_lo = 0.88, band_hi = 1.14;
  MeshPlan best;
  bool have_best = false, have_aspect_ok = false;
  for (int layers = 2; layers <= 48; ++layers) {
    const double v2_target =
        band_lo * double(target_vertices) / double(layers + 1);
    if (v2_target < 7.0) break;  // thinner than one ring around the center
    for (double scale : {1.0, 1.04, 1.09}) {
      const double v2 = v2_target * scale;
      if (v2 * (layers + 1) > band_hi * target_vertices) continue;
      int rings = std::max(1, int(std::lround(std::sqrt(v2 / kPi))));
      for (int dr = -1; dr <= 1; ++dr) {
        const int nr = rings + dr;
        if (nr < 1) continue;
        const double density = (v2 - 1.0) / (kPi * nr * (nr + 1));
        if (density < 0.55 || density > 1.6) continue;
        const MeshPlan p =
            plan_counts(layers, nr, density, radius_cm, height_cm);
        const double rel = double(p.vertex_count) / double(target_vertices);
        if (rel < band_lo || rel > band_hi) continue;
        const bool better =
            !have_best ||
            (p.aspect_ok && !have_aspect_ok) ||
            (p.aspect_ok == have_aspect_ok &&
             (p.edge_estimate < best.edge_estimate ||
              (p.edge_estimate == best.edge_estimate &&
               std::llabs(p.vertex_count - target_vertices) <
                   std::llabs(best.vertex_count - target_vertices))));
        if (better) {
          best = p;
          have_best = true;
          have_aspect_ok = p.aspect_ok;
        }
      }
    }
  }
  if (!have_best)
    throw ConfigError("no cylinder lattice fits the requested vertex budget");

  const DiskLattice disk = build_disk(radius_cm, best.rings, best.density);
  const int v2 = int(disk.points.size());

  VolumetricMesh mesh;
  mesh.radius = radius_cm;
  mesh.height = height_cm;
  mesh.vertices.reserve(std::size_t(v2) * (best.layers + 1));
  for (int l = 0; l <= best.layers; ++l) {
    const double z = height_cm * double(l) / double(best.layers);
    for (const auto& p : disk.points) mesh.vertices.push_back({p[0], p[1], z});
  }
  mesh.tets.reserve(disk.triangles.size() * std::size_t(best.layers) * 3);
  for (int l = 0; l < best.layers; ++l) {
    const int lo = l * v2, hi = (l + 1) * v2;
    for (const auto& tri : disk.triangles) {
      const int prism[6] = {lo + tri[0], lo + tri[1], lo + tri[2],
                            hi + tri[0], hi + tri[1], hi + tri[2]};
      split_prism(prism, mesh.tets);
    }
  }
  for (int i = 0; i < v2; ++i) mesh.base_ids.push_back(i);
  for (int i = 0; i < v2; ++i)
    mesh.top_surface_ids.push_back(best.layers * v2 + i);

  finalize_topology(mesh);
  mesh.validate();
  return mesh;
}

SparseMatrix scaled_laplacian(const std::vector<std::vector<int>>& adjacency) {
  const int n = int(adjacency.size());
  // With lambda_max fixed at 2, L_scaled = L_norm - I, i.e. off-diagonal
  // -1/sqrt(d_i d_j) and zero diagonal (also for isolated vertices, where the
  // identity convention L_ii = 1 cancels exactly).
  std::vector<double> inv_sqrt_deg(std::size_t(n), 0.0);
  for (int i = 0; i < n; ++i)
    if (!adjacency[i].empty())
      inv_sqrt_deg[i] = 1.0 / std::sqrt(double(adjacency[i].size()));
  std::vector<Triplet> trip;
  for (int i = 0; i < n; ++i)
    for (int j : adjacency[i])
      trip.push_back({i, j, -inv_sqrt_deg[i] * inv_sqrt_deg[j]});
  return SparseMatrix(n, n, std::move(trip));
}

SparseMatrix compute_scaled_laplacian(const VolumetricMesh& mesh) {
  return scaled_laplacian(mesh.adjacency);
}

MeshHierarchy build_hierarchy(const VolumetricMesh& mesh, int num_levels,
                              int factor) {
  require(factor >= 2, ErrorCode::config, "pooling factor must be >= 2");
  require(num_levels >= 1, ErrorCode::config, "need at least one pool level");
  {
    long long n = mesh.vertex_count();
    for (int k = 0; k < num_levels; ++k) n = (n + factor - 1) / factor;
    if (n < 4)
      throw ConfigError("hierarchy too deep: coarsest level would drop below "
                        "4 vertices");
  }

  MeshHierarchy h;
  h.levels.resize(std::size_t(num_levels) + 1);
  h.levels[0].vertex_count = mesh.vertex_count();
  h.levels[0].scaled_laplacian = compute_scaled_laplacian(mesh);

  std::vector<std::array<double, 3>> pos = mesh.vertices;
  std::vector<std::vector<int>> adj = mesh.adjacency;

  for (int k = 1; k <= num_levels; ++k) {
    const int nf = int(pos.size());
    const int nc = (nf + factor - 1) / factor;

    // Farthest-point sampling over rest positions, seeded at vertex 0;
    // ties resolve to the lowest index.
    std::vector<int> reps;
    reps.reserve(std::size_t(nc));
    std::vector<double> dmin(std::size_t(nf),
                             std::numeric_limits<double>::max());
    int next = 0;
    for (int c = 0; c < nc; ++c) {
      reps.push_back(next);
      const auto& rp = pos[std::size_t(next)];
      int far = 0;
      double far_d = -1.0;
      for (int i = 0; i < nf; ++i) {
        const double dx = pos[i][0] - rp[0], dy = pos[i][1] - rp[1],
                     dz = pos[i][2] - rp[2];
        const double d = dx * dx + dy * dy + dz * dz;
        if (d < dmin[i]) dmin[i] = d;
        if (dmin[i] > far_d) {
          far_d = dmin[i];
          far = i;
        }
      }
      next = far;
    }

    // Nearest-representative assignment (squared distance, lowest coarse
    // index wins ties).
    std::vector<int> assign(std::size_t(nf), 0);
    for (int i = 0; i < nf; ++i) {
      double bd = std::numeric_limits<double>::max();
      int bc = 0;
      for (int c = 0; c < nc; ++c) {
        const auto& rp = pos[std::size_t(reps[c])];
        const double dx = pos[i][0] - rp[0], dy = pos[i][1] - rp[1],
                     dz = pos[i][2] - rp[2];
        const double d = dx * dx + dy * dy + dz * dz;
        if (d < bd - 1e-18) {
          bd = d;
          bc = c;
        }
      }
      assign[std::size_t(i)] = bc;
    }

    std::vector<Triplet> down_t, up_t;
    down_t.reserve(std::size_t(nc));
    up_t.reserve(std::size_t(nf));
    for (int c = 0; c < nc; ++c) down_t.push_back({c, reps[c], 1.0});
    for (int i = 0; i < nf; ++i) up_t.push_back({i, assign[i], 1.0});

    // Coarse graph by edge contraction.
    std::vector<std::set<int>> cadj_sets(std::size_t(nc));
    for (int i = 0; i < nf; ++i)
      for (int j : adj[std::size_t(i)]) {
        const int ci = assign[std::size_t(i)], cj = assign[std::size_t(j)];
        if (ci != cj) {
          cadj_sets[ci].insert(cj);
          cadj_sets[cj].insert(ci);
        }
      }
    std::vector<std::vector<int>> cadj(std::size_t(nc));
    for (int c = 0; c < nc; ++c)
      cadj[c].assign(cadj_sets[c].begin(), cadj_sets[c].end());

    auto& level = h.levels[std::size_t(k)];
    level.vertex_count = nc;
    level.scaled_laplacian = scaled_laplacian(cadj);
    level.down = SparseMatrix(nc, nf, std::move(down_t));
    level.up = SparseMatrix(nf, nc, std::move(up_t));
    level.representatives = reps;
    level.assignment = assign;

    std::vector<std::array<double, 3>> cpos(std::size_t(nc));
    for (int c = 0; c < nc; ++c) cpos[c] = pos[std::size_t(reps[c])];
    pos = std::move(cpos);
    adj = std::move(cadj);
  }
  return h;
}

std::string export_surface(
    const VolumetricMesh& mesh,
    const std::vector<std::array<double, 3>>& displacements) {
  require(displacements.size() == mesh.vertices.size(), ErrorCode::contract,
          "displacement row count differs from vertex count");

  // Compact the boundary vertex set in ascending order.
  std::vector<int> used;
  {
    std::set<int> s;
    for (const auto& tri : mesh.surface_tris)
      for (int v : tri) s.insert(v);
    used.assign(s.begin(), s.end());
  }
  std::vector<int> remap(mesh.vertices.size(), -1);
  for (int i = 0; i < int(used.size()); ++i) remap[std::size_t(used[i])] = i;

  std::string out;
  out.reserve(used.size() * 64 + mesh.surface_tris.size() * 24 + 256);
  char line[160];
  out += "ply\nformat ascii 1.0\n";
  std::snprintf(line, sizeof(line), "element vertex %zu\n", used.size());
  out += line;
  out +=
      "property double x\nproperty double y\nproperty double z\n"
      "property double displacement\n";
  std::snprintf(line, sizeof(line), "element face %zu\n",
                mesh.surface_tris.size());
  out += line;
  out += "property list uchar int vertex_indices\nend_header\n";
  for (int v : used) {
    const auto& p = mesh.vertices[std::size_t(v)];
    const auto& u = displacements[std::size_t(v)];
    const double mag =
        std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    std::snprintf(line, sizeof(line), "%.9f %.9f %.9f %.9f\n", p[0] + u[0],
                  p[1] + u[1], p[2] + u[2], mag);
    out += line;
  }
  for (const auto& tri : mesh.surface_tris) {
    std::snprintf(line, sizeof(line), "3 %d %d %d\n", remap[tri[0]],
                  remap[tri[1]], remap[tri[2]]);
    out += line;
  }
  return out;
}

ParsedSurface parse_surface(const std::string& ply_text) {
  std::istringstream in(ply_text);
  std::string tok;
  std::size_t nv = 0, nf = 0;
  while (in >> tok) {
    if (tok == "element") {
      std::string kind;
      in >> kind;
      if (kind == "vertex")
        in >> nv;
      else if (kind == "face")
        in >> nf;
    } else if (tok == "end_header") {
      break;
    }
  }
  ParsedSurface s;
  s.vertices.resize(nv);
  s.magnitudes.resize(nv);
  for (std::size_t i = 0; i < nv; ++i)
    in >> s.vertices[i][0] >> s.vertices[i][1] >> s.vertices[i][2] >>
        s.magnitudes[i];
  s.faces.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    int cnt = 0;
    in >> cnt >> s.faces[i][0] >> s.faces[i][1] >> s.faces[i][2];
    require(cnt == 3, ErrorCode::contract, "non-triangle face in surface file");
  }
  require(bool(in), ErrorCode::contract, "malformed surface file");
  return s;
}

void save_mesh(const VolumetricMesh& mesh, const std::string& path) {
  ByteWriter w;
  w.magic("TMSH");
  w.u32(1);
  w.f64(mesh.radius);
  w.f64(mesh.height);
  w.array(mesh.vertices);
  w.array(mesh.tets);
  w.array(mesh.top_surface_ids);
  w.array(mesh.base_ids);
  write_file_bytes(path, w.bytes());
}

VolumetricMesh load_mesh(const std::string& path) {
  const auto bytes = read_file_bytes(path);
  ByteReader r(bytes);
  r.expect_magic("TMSH");
  const std::uint32_t version = r.u32();
  require(version == 1, ErrorCode::missing, "unsupported TMSH version");
  VolumetricMesh mesh;
  mesh.radius = r.f64();
  mesh.height = r.f64();
  mesh.vertices = r.array<std::array<double, 3>>();
  mesh.tets = r.array<std::array<int, 4>>();
  mesh.top_surface_ids = r.array<int>();
  mesh.base_ids = r.array<int>();
  finalize_topology(mesh);
  mesh.validate();
  return mesh;
}

}  // namespace tact
