// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace isaacs {

/// Affine map from the reference triangle (0,0),(1,0),(0,1) onto an element.
struct AffineMap {
  Point2 origin;
  Mat2 jacobian;
  Mat2 inverse;
  double det = 0.0;

  Point2 to_physical(const Point2& xi) const { return origin + jacobian * xi; }
  Point2 to_reference(const Point2& x) const { return inverse * (x - origin); }
};

/// A mesh edge. Local edge e of an element is the edge opposite its local vertex e.
struct Face {
  std::array<int, 2> vertices{};      // sorted global vertex indices
  std::array<int, 2> elements{-1, -1};  // normal points out of elements[0]; elements[1] < 0 on the boundary
  std::array<int, 2> local_edge{-1, -1};
  Point2 normal = Point2::Zero();
  double length = 0.0;

  bool boundary() const { return elements[1] < 0; }
  Point2 tangent() const { return Point2(-normal.y(), normal.x()); }
};

struct MeshSizes {
  std::vector<double> h_element;  // |K|^{1/2}
  std::vector<double> h_face;     // face length
  double shape_regularity = 0.0;  // max diam(K) / inscribed diameter
};

/// Conforming triangulation. Immutable once built; refine() returns a new mesh.
class Mesh {
 public:
  using Triangle = std::array<int, 3>;

  /// Builds topology from raw data. Clockwise triangles are reoriented.
  /// Throws Error(DegenerateElement) for zero-area triangles and
  /// Error(NonConforming) for hanging vertices or edges shared by more than two elements.
  static Mesh build(std::vector<Point2> vertices, std::vector<Triangle> triangles);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Triangle>& elements() const { return elements_; }
  const std::vector<Face>& faces() const { return faces_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_interior_faces() const;
  int num_boundary_faces() const { return num_faces() - num_interior_faces(); }

  /// Face index of local edge e of element k.
  int element_face(int k, int e) const { return element_faces_[k][e]; }
  const std::array<int, 3>& element_faces(int k) const { return element_faces_[k]; }
  /// Local index of the edge bisected next by newest-vertex bisection.
  int refinement_edge(int k) const { return refinement_edge_[k]; }
  /// Element of the previous mesh this element was created from (-1 for an unrefined mesh).
  int parent(int k) const { return parents_.empty() ? -1 : parents_[k]; }
  bool has_parents() const { return !parents_.empty(); }

  const AffineMap& map(int k) const { return maps_[k]; }
  double area(int k) const { return 0.5 * maps_[k].det; }
  double total_area() const;
  double diameter(int k) const;
  Point2 centroid(int k) const;

  /// Newest-vertex bisection with conformity closure. Every marked element is
  /// bisected at least once; parent() of the result refers to this mesh.
  Mesh refine(std::span<const int> marked) const;
  Mesh refine_uniform() const;

  /// Checks face adjacency counts, orientation and the absence of hanging vertices.
  bool audit_conformity(std::string* reason = nullptr) const;

 private:
  static Mesh assemble(std::vector<Point2> vertices, std::vector<Triangle> triangles,
                       std::vector<int> refinement_edges, std::vector<int> parents, bool check_hanging);

  std::vector<Point2> vertices_;
  std::vector<Triangle> elements_;
  std::vector<Face> faces_;
  std::vector<std::array<int, 3>> element_faces_;
  std::vector<int> refinement_edge_;
  std::vector<int> parents_;
  std::vector<AffineMap> maps_;
};

MeshSizes mesh_sizes(const Mesh& mesh);

/// Plain-text format: "nv ne", then "x y" per vertex, then "i j k" per element (0-based).
void write_mesh(const Mesh& mesh, std::ostream& out);
Mesh read_mesh(std::istream& in);
void write_mesh_file(const Mesh& mesh, const std::string& path);
Mesh read_mesh_file(const std::string& path);

}  // namespace isaacs
