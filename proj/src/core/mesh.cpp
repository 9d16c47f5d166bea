// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace isaacs {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

// Start/end local vertices of local edge e, traversed counterclockwise.
constexpr int edge_start(int e) { return (e + 1) % 3; }
constexpr int edge_end(int e) { return (e + 2) % 3; }

int longest_edge(const std::vector<Point2>& v, const Mesh::Triangle& t) {
  int best = 0;
  double best_len = -1.0;
  for (int e = 0; e < 3; ++e) {
    const double len = (v[t[edge_end(e)]] - v[t[edge_start(e)]]).squaredNorm();
    if (len > best_len * (1.0 + 1e-12)) {
      best = e;
      best_len = len;
    }
  }
  return best;
}

// Uniform bucket grid used to find vertices lying in the interior of boundary edges.
bool find_hanging_vertex(const std::vector<Point2>& verts, const std::vector<Face>& faces,
                         std::string* reason) {
  if (verts.empty()) return false;
  Point2 lo = verts[0], hi = verts[0];
  for (const auto& p : verts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const int n = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(verts.size()))));
  const Point2 extent = (hi - lo).cwiseMax(Point2(1e-300, 1e-300));
  auto cell_of = [&](const Point2& p, int axis) {
    const double t = (p[axis] - lo[axis]) / extent[axis];
    return std::clamp(static_cast<int>(t * n), 0, n - 1);
  };
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < static_cast<int>(verts.size()); ++i)
    buckets[cell_of(verts[i], 0) * n + cell_of(verts[i], 1)].push_back(i);

  for (const auto& f : faces) {
    if (!f.boundary()) continue;
    const Point2& a = verts[f.vertices[0]];
    const Point2& b = verts[f.vertices[1]];
    const Point2 d = b - a;
    const double len2 = d.squaredNorm();
    const int i0 = std::min(cell_of(a, 0), cell_of(b, 0)), i1 = std::max(cell_of(a, 0), cell_of(b, 0));
    const int j0 = std::min(cell_of(a, 1), cell_of(b, 1)), j1 = std::max(cell_of(a, 1), cell_of(b, 1));
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) {
        for (int idx : buckets[i * n + j]) {
          if (idx == f.vertices[0] || idx == f.vertices[1]) continue;
          const Point2 r = verts[idx] - a;
          const double cross = d.x() * r.y() - d.y() * r.x();
          const double dot = d.dot(r);
          if (std::abs(cross) <= 1e-12 * len2 && dot > 1e-12 * len2 && dot < (1.0 - 1e-12) * len2) {
            if (reason) {
              std::ostringstream os;
              os << "non-conforming mesh: vertex " << idx << " lies inside edge (" << f.vertices[0]
                 << ", " << f.vertices[1] << ")";
              *reason = os.str();
            }
            return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

Mesh Mesh::build(std::vector<Point2> vertices, std::vector<Triangle> triangles) {
  const int nv = static_cast<int>(vertices.size());
  for (const auto& p : vertices)
    require(std::isfinite(p.x()) && std::isfinite(p.y()), "mesh vertex with non-finite coordinate");
  std::vector<int> refinement(triangles.size());
  for (std::size_t k = 0; k < triangles.size(); ++k) {
    auto& t = triangles[k];
    for (int i : t) require(i >= 0 && i < nv, "triangle references an invalid vertex index");
    require(t[0] != t[1] && t[1] != t[2] && t[0] != t[2], "triangle with repeated vertex",
            ErrorCode::DegenerateElement);
    const double a = signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
    const double scale = std::max({(vertices[t[1]] - vertices[t[0]]).squaredNorm(),
                                   (vertices[t[2]] - vertices[t[0]]).squaredNorm(), 1e-300});
    if (std::abs(a) <= 1e-14 * scale) {
      throw Error(ErrorCode::DegenerateElement,
                  "zero-area triangle " + std::to_string(k) + " in mesh input");
    }
    if (a < 0) std::swap(t[1], t[2]);
    refinement[k] = longest_edge(vertices, t);
  }
  return assemble(std::move(vertices), std::move(triangles), std::move(refinement), {}, true);
}

Mesh Mesh::assemble(std::vector<Point2> vertices, std::vector<Triangle> triangles,
                    std::vector<int> refinement_edges, std::vector<int> parents, bool check_hanging) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.elements_ = std::move(triangles);
  m.refinement_edge_ = std::move(refinement_edges);
  m.parents_ = std::move(parents);
  const int ne = m.num_elements();
  m.element_faces_.resize(ne);
  m.maps_.resize(ne);

  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(static_cast<std::size_t>(ne) * 2);
  for (int k = 0; k < ne; ++k) {
    const auto& t = m.elements_[k];
    AffineMap& am = m.maps_[k];
    am.origin = m.vertices_[t[0]];
    am.jacobian.col(0) = m.vertices_[t[1]] - am.origin;
    am.jacobian.col(1) = m.vertices_[t[2]] - am.origin;
    am.det = am.jacobian.determinant();
    am.inverse = am.jacobian.inverse();

    for (int e = 0; e < 3; ++e) {
      const int a = t[edge_start(e)], b = t[edge_end(e)];
      auto [it, inserted] = lookup.try_emplace(edge_key(a, b), m.num_faces());
      if (inserted) {
        Face f;
        f.vertices = {std::min(a, b), std::max(a, b)};
        f.elements[0] = k;
        f.local_edge[0] = e;
        const Point2 d = m.vertices_[b] - m.vertices_[a];
        f.length = d.norm();
        f.normal = Point2(d.y(), -d.x()) / f.length;  // outward for a counterclockwise element
        m.faces_.push_back(f);
      } else {
        Face& f = m.faces_[it->second];
        if (f.elements[1] >= 0) {
          throw Error(ErrorCode::NonConforming,
                      "non-conforming mesh: edge (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") shared by more than two elements");
        }
        f.elements[1] = k;
        f.local_edge[1] = e;
      }
      m.element_faces_[k][e] = it->second;
    }
  }
  if (check_hanging) {
    std::string reason;
    if (find_hanging_vertex(m.vertices_, m.faces_, &reason))
      throw Error(ErrorCode::NonConforming, reason);
  }
  return m;
}

int Mesh::num_interior_faces() const {
  return static_cast<int>(std::count_if(faces_.begin(), faces_.end(), [](const Face& f) { return !f.boundary(); }));
}

double Mesh::total_area() const {
  double s = 0.0;
  for (int k = 0; k < num_elements(); ++k) s += area(k);
  return s;
}

double Mesh::diameter(int k) const {
  const auto& t = elements_[k];
  return std::max({(vertices_[t[0]] - vertices_[t[1]]).norm(), (vertices_[t[1]] - vertices_[t[2]]).norm(),
                   (vertices_[t[2]] - vertices_[t[0]]).norm()});
}

Point2 Mesh::centroid(int k) const {
  const auto& t = elements_[k];
  return (vertices_[t[0]] + vertices_[t[1]] + vertices_[t[2]]) / 3.0;
}

Mesh Mesh::refine(std::span<const int> marked) const {
  const int ne = num_elements();
  std::vector<char> edge_marked(faces_.size(), 0);
  for (int k : marked) {
    require(k >= 0 && k < ne, "refine: marked element index out of range");
    edge_marked[element_faces_[k][refinement_edge_[k]]] = 1;
  }
  // Closure: an element with any marked edge must also bisect its refinement edge.
  for (bool changed = true; changed;) {
    changed = false;
    for (int k = 0; k < ne; ++k) {
      const auto& ef = element_faces_[k];
      const int ref = ef[refinement_edge_[k]];
      if (!edge_marked[ref] && (edge_marked[ef[0]] || edge_marked[ef[1]] || edge_marked[ef[2]])) {
        edge_marked[ref] = 1;
        changed = true;
      }
    }
  }

  std::vector<Point2> verts = vertices_;
  std::vector<int> midpoint(faces_.size(), -1);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (!edge_marked[f]) continue;
    midpoint[f] = static_cast<int>(verts.size());
    verts.push_back(0.5 * (vertices_[faces_[f].vertices[0]] + vertices_[faces_[f].vertices[1]]));
  }
  std::unordered_map<std::uint64_t, int> mid_lookup;
  for (std::size_t f = 0; f < faces_.size(); ++f)
    if (midpoint[f] >= 0) mid_lookup.emplace(edge_key(faces_[f].vertices[0], faces_[f].vertices[1]), midpoint[f]);
  auto find_mid = [&](int a, int b) {
    auto it = mid_lookup.find(edge_key(a, b));
    return it == mid_lookup.end() ? -1 : it->second;
  };

  std::vector<Triangle> tris;
  std::vector<int> ref_edges, parents;
  tris.reserve(ne * 2);
  auto emit = [&](const Triangle& t, int parent) {
    tris.push_back(t);
    ref_edges.push_back(2);
    parents.push_back(parent);
  };
  // Bisects (a, b, c) with refinement edge (a, b) and newest vertex c; children
  // carry their refinement edge opposite the new vertex (local edge 2).
  auto bisect_once = [&](const Triangle& t, int parent, auto&& self, int depth) -> void {
    const int m = find_mid(t[0], t[1]);
    if (m < 0 || depth > 1) {
      emit(t, parent);
      return;
    }
    self(Triangle{t[2], t[0], m}, parent, self, depth + 1);
    self(Triangle{t[1], t[2], m}, parent, self, depth + 1);
  };
  for (int k = 0; k < ne; ++k) {
    const auto& t = elements_[k];
    const int e = refinement_edge_[k];
    // Rotate so the refinement edge comes first.
    const Triangle rotated{t[edge_start(e)], t[edge_end(e)], t[e]};
    if (!edge_marked[element_faces_[k][e]]) {
      tris.push_back(t);
      ref_edges.push_back(e);
      parents.push_back(k);
      continue;
    }
    bisect_once(rotated, k, bisect_once, 0);
  }
  return assemble(std::move(verts), std::move(tris), std::move(ref_edges), std::move(parents), false);
}

Mesh Mesh::refine_uniform() const {
  std::vector<int> all(num_elements());
  for (int k = 0; k < num_elements(); ++k) all[k] = k;
  return refine(all);
}

bool Mesh::audit_conformity(std::string* reason) const {
  auto fail = [&](const std::string& msg) {
    if (reason) *reason = msg;
    return false;
  };
  std::unordered_map<std::uint64_t, int> counts;
  for (int k = 0; k < num_elements(); ++k) {
    const auto& t = elements_[k];
    if (signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]) <= 0.0)
      return fail("element " + std::to_string(k) + " is not positively oriented");
    for (int e = 0; e < 3; ++e) ++counts[edge_key(t[edge_start(e)], t[edge_end(e)])];
  }
  for (const auto& [key, c] : counts)
    if (c > 2) return fail("edge shared by more than two elements");
  for (const auto& f : faces_) {
    const int expected = f.boundary() ? 1 : 2;
    if (counts[edge_key(f.vertices[0], f.vertices[1])] != expected) return fail("face adjacency mismatch");
  }
  std::string why;
  if (find_hanging_vertex(vertices_, faces_, &why)) return fail(why);
  return true;
}

MeshSizes mesh_sizes(const Mesh& mesh) {
  MeshSizes s;
  s.h_element.resize(mesh.num_elements());
  s.h_face.resize(mesh.num_faces());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const double area = mesh.area(k);
    s.h_element[k] = std::sqrt(area);
    const auto& t = mesh.elements()[k];
    const auto& v = mesh.vertices();
    const double perimeter = (v[t[0]] - v[t[1]]).norm() + (v[t[1]] - v[t[2]]).norm() + (v[t[2]] - v[t[0]]).norm();
    const double inscribed_diameter = 4.0 * area / perimeter;
    s.shape_regularity = std::max(s.shape_regularity, mesh.diameter(k) / inscribed_diameter);
  }
  for (int f = 0; f < mesh.num_faces(); ++f) s.h_face[f] = mesh.faces()[f].length;
  return s;
}

namespace {

void write_double(std::ostream& out, double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  out.write(buf, res.ptr - buf);
}

double parse_double(const std::string& token) {
  double x = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), x);
  require(res.ec == std::errc() && res.ptr == token.data() + token.size(), "mesh file: bad number '" + token + "'",
          ErrorCode::Io);
  return x;
}

}  // namespace

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << mesh.num_vertices() << ' ' << mesh.num_elements() << '\n';
  for (const auto& p : mesh.vertices()) {
    write_double(out, p.x());
    out << ' ';
    write_double(out, p.y());
    out << '\n';
  }
  for (const auto& t : mesh.elements()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

Mesh read_mesh(std::istream& in) {
  long nv = -1, ne = -1;
  require(static_cast<bool>(in >> nv >> ne) && nv >= 0 && ne >= 0, "mesh file: bad header", ErrorCode::Io);
  std::vector<Point2> verts(nv);
  std::string tx, ty;
  for (long i = 0; i < nv; ++i) {
    require(static_cast<bool>(in >> tx >> ty), "mesh file: truncated vertex list", ErrorCode::Io);
    verts[i] = Point2(parse_double(tx), parse_double(ty));
  }
  std::vector<Mesh::Triangle> tris(ne);
  for (long k = 0; k < ne; ++k)
    require(static_cast<bool>(in >> tris[k][0] >> tris[k][1] >> tris[k][2]), "mesh file: truncated element list",
            ErrorCode::Io);
  return Mesh::build(std::move(verts), std::move(tris));
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot open '" + path + "' for writing", ErrorCode::Io);
  write_mesh(mesh, out);
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path + "'", ErrorCode::Io);
  return read_mesh(in);
}

}  // namespace isaacs
