#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tactmesh/sparse.hpp"

namespace tact {

// Tetrahedral pad mesh. Immutable after construction; every module shares it
// by const reference. Lengths in cm.
struct VolumetricMesh {
  std::vector<std::array<double, 3>> vertices;  // rest positions
  std::vector<std::array<int, 4>> tets;         // positive signed volume
  std::vector<std::array<int, 3>> surface_tris; // outward-oriented boundary
  std::vector<int> top_surface_ids;             // sensing face (z = height)
  std::vector<int> base_ids;                    // backplate face (z = 0)
  std::vector<std::vector<int>> adjacency;      // sorted neighbor lists, no self

  double radius = 0.0;
  double height = 0.0;

  int vertex_count() const { return int(vertices.size()); }
  // Undirected unique vertex pairs appearing in any tet.
  std::size_t edge_count() const;
  double total_volume() const;
  double tet_volume(int t) const;
  // Boundary triangles whose vertices all lie on the sensing face.
  std::vector<std::array<int, 3>> top_surface_triangles() const;

  std::uint64_t content_hash() const;
  void validate() const;  // throws ContractError on broken invariants
};

// Structured cylinder pad: concentric-ring disk lattice extruded into layers,
// prisms split into tets with the smallest-global-index diagonal rule so
// neighboring prisms conform. Among layer/density candidates whose vertex
// count lands within ±12% of the target it picks the sparsest adjacency;
// deterministic, no RNG involved.
VolumetricMesh build_cylinder_mesh(double radius_cm, double height_cm,
                                   int target_vertices);

// ChebNet-convention scaled Laplacian: L_scaled = 2 L / lambda_max - I with
// L the symmetric-normalized Laplacian and the fixed bound lambda_max = 2.
// Isolated vertices get the identity convention (L_ii = 1), which makes their
// scaled row vanish.
SparseMatrix scaled_laplacian(const std::vector<std::vector<int>>& adjacency);
SparseMatrix compute_scaled_laplacian(const VolumetricMesh& mesh);

struct HierarchyLevel {
  int vertex_count = 0;
  SparseMatrix scaled_laplacian;
  // down: [n_k, n_(k-1)] selection of representative vertices (one 1 per row);
  // up: [n_(k-1), n_k] cluster assignment (one 1 per row). Level 0 has none.
  SparseMatrix down;
  SparseMatrix up;
  std::vector<int> representatives;  // coarse -> parent-level vertex index
  std::vector<int> assignment;       // parent-level vertex -> coarse cluster
};

struct MeshHierarchy {
  std::vector<HierarchyLevel> levels;  // levels[0] = full mesh
  int num_pool_levels() const { return int(levels.size()) - 1; }
};

// Farthest-point-sampled vertex clustering; level k keeps
// ceil(n_(k-1) / factor) vertices. Coarse adjacency contracts fine edges.
MeshHierarchy build_hierarchy(const VolumetricMesh& mesh, int num_levels,
                              int factor);

// ASCII polygon (PLY) export of the deformed boundary surface with a
// per-vertex displacement-magnitude attribute. Byte-deterministic.
std::string export_surface(const VolumetricMesh& mesh,
                           const std::vector<std::array<double, 3>>& displacements);

struct ParsedSurface {
  std::vector<std::array<double, 3>> vertices;
  std::vector<double> magnitudes;
  std::vector<std::array<int, 3>> faces;
};
ParsedSurface parse_surface(const std::string& ply_text);

// Binary mesh cache ("TMSH"), byte-exact round trip.
void save_mesh(const VolumetricMesh& mesh, const std::string& path);
VolumetricMesh load_mesh(const std::string& path);

}  // namespace tact
