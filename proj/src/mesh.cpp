#include <hhomag/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace hhomag
{

namespace
{

std::vector<std::size_t> canonical_loop(const std::vector<std::size_t> &loop)
{
  auto it = std::min_element(loop.begin(), loop.end());
  std::vector<std::size_t> out(loop.size());
  std::rotate_copy(loop.begin(), it, loop.end(), out.begin());
  return out;
}

// Newell normal, fan area and centroid, frame, diameter
void compute_face_geometry(Face &F, const std::vector<Vector3d> &V)
{
  const std::size_t nv = F.vertices.size();
  Vector3d avg = Vector3d::Zero();
  for (auto v : F.vertices) avg += V[v];
  avg /= double(nv);

  Vector3d newell = Vector3d::Zero();
  for (std::size_t i = 0; i < nv; ++i) {
    const Vector3d a = V[F.vertices[i]] - avg;
    const Vector3d b = V[F.vertices[(i + 1) % nv]] - avg;
    newell += a.cross(b);
  }
  const double nn = newell.norm();
  if (!(nn > 0.)) throw GeometryError("degenerate face with zero area");
  F.normal = newell / nn;

  F.area = 0.;
  F.centroid.setZero();
  for (std::size_t i = 0; i < nv; ++i) {
    const Vector3d &a = V[F.vertices[i]];
    const Vector3d &b = V[F.vertices[(i + 1) % nv]];
    const double ai = 0.5 * ((a - avg).cross(b - avg)).dot(F.normal);
    F.area += ai;
    F.centroid += ai * (avg + a + b) / 3.;
  }
  F.centroid /= F.area;

  F.diameter = 0.;
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j)
      F.diameter = std::max(F.diameter, (V[F.vertices[i]] - V[F.vertices[j]]).norm());

  // tangent frame: start from the axis least aligned with the normal
  int axis = 0;
  for (int d = 1; d < 3; ++d)
    if (std::abs(F.normal(d)) < std::abs(F.normal(axis))) axis = d;
  Vector3d e = Vector3d::Unit(axis);
  F.t1 = (e - e.dot(F.normal) * F.normal).normalized();
  F.t2 = F.normal.cross(F.t1);
}

} // namespace

Mesh::Mesh(std::vector<Vector3d> vertices,
           std::vector<std::vector<std::size_t>> face_loops,
           std::vector<std::vector<SignedFace>> elements,
           bool check)
    : m_vertices(std::move(vertices))
{
  m_faces.resize(face_loops.size());
  for (std::size_t i = 0; i < face_loops.size(); ++i) {
    if (face_loops[i].size() < 3)
      throw GeometryError("face " + std::to_string(i) + " has fewer than 3 vertices");
    for (auto v : face_loops[i])
      if (v >= m_vertices.size())
        throw GeometryError("face " + std::to_string(i) + " references unknown vertex " + std::to_string(v));
    m_faces[i].vertices = canonical_loop(face_loops[i]);
    try {
      compute_face_geometry(m_faces[i], m_vertices);
    } catch (const GeometryError &e) {
      throw GeometryError(std::string(e.what()) + " (face " + std::to_string(i) + ")");
    }
  }

  m_elements.resize(elements.size());
  for (std::size_t iT = 0; iT < elements.size(); ++iT) {
    Element &T = m_elements[iT];
    if (elements[iT].size() < 4)
      throw GeometryError("element " + std::to_string(iT) + " has fewer than 4 faces");
    for (auto [f, s] : elements[iT]) {
      if (f >= m_faces.size())
        throw GeometryError("element " + std::to_string(iT) + " references unknown face " + std::to_string(f));
      if (s != 1 && s != -1)
        throw GeometryError("element " + std::to_string(iT) + " has an invalid orientation sign");
      T.faces.push_back(f);
      T.orientations.push_back(s);
      m_faces[f].elements.push_back(iT);
      for (auto v : m_faces[f].vertices) T.vertices.push_back(v);
    }
    std::sort(T.vertices.begin(), T.vertices.end());
    T.vertices.erase(std::unique(T.vertices.begin(), T.vertices.end()), T.vertices.end());

    Vector3d ref = Vector3d::Zero();
    for (auto v : T.vertices) ref += m_vertices[v];
    ref /= double(T.vertices.size());

    // signed sub-tetrahedra (ref, fan triangle) with outward-oriented bases
    T.volume = 0.;
    T.center.setZero();
    for (std::size_t i = 0; i < T.faces.size(); ++i) {
      const Face &F = m_faces[T.faces[i]];
      const double s = T.orientations[i];
      const std::size_t nv = F.vertices.size();
      for (std::size_t j = 0; j < nv; ++j) {
        const Vector3d &a = m_vertices[F.vertices[j]];
        const Vector3d &b = m_vertices[F.vertices[(j + 1) % nv]];
        const double vol = s * ((a - F.centroid).cross(b - F.centroid)).dot(F.centroid - ref) / 6.;
        T.volume += vol;
        T.center += vol * (ref + F.centroid + a + b) / 4.;
      }
    }
    if (!(T.volume > 0.))
      throw GeometryError("element " + std::to_string(iT) + " has non-positive volume");
    T.center /= T.volume;

    T.diameter = 0.;
    for (std::size_t i = 0; i < T.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < T.vertices.size(); ++j)
        T.diameter = std::max(T.diameter, (m_vertices[T.vertices[i]] - m_vertices[T.vertices[j]]).norm());
    m_h = std::max(m_h, T.diameter);
  }

  m_n_boundary = 0;
  for (const auto &F : m_faces)
    if (F.elements.size() == 1) ++m_n_boundary;

  if (check) validate(*this);
}

bool Mesh::is_tetrahedral() const
{
  for (const auto &T : m_elements) {
    if (T.faces.size() != 4) return false;
    for (auto f : T.faces)
      if (m_faces[f].vertices.size() != 3) return false;
  }
  return true;
}

std::vector<SignedFace> Mesh::signed_faces(std::size_t iT) const
{
  const Element &T = m_elements[iT];
  std::vector<SignedFace> out;
  for (std::size_t i = 0; i < T.faces.size(); ++i) out.emplace_back(T.faces[i], T.orientations[i]);
  return out;
}

MeshReport validate(const Mesh &mesh)
{
  MeshReport r;
  r.n_elements = mesh.n_elements();
  r.n_faces = mesh.n_faces();
  r.n_boundary_faces = mesh.n_boundary_faces();
  r.meshsize = mesh.h();
  r.min_inradius_ratio = r.min_star_margin = r.min_face_ratio = std::numeric_limits<double>::infinity();
  r.min_faces_per_element = std::numeric_limits<std::size_t>::max();

  for (std::size_t iF = 0; iF < mesh.n_faces(); ++iF) {
    const Face &F = mesh.face(iF);
    double defect = 0.;
    for (auto v : F.vertices) defect = std::max(defect, std::abs((mesh.vertex(v) - F.centroid).dot(F.normal)));
    defect /= F.diameter;
    r.max_planarity_defect = std::max(r.max_planarity_defect, defect);
    if (defect > planarity_tolerance)
      throw GeometryError("face not planar (face " + std::to_string(iF) + ")");

    if (F.elements.empty())
      throw GeometryError("face not attached to any element (face " + std::to_string(iF) + ")");
    if (F.elements.size() > 2)
      throw GeometryError("face shared by more than two elements (face " + std::to_string(iF) + ")");
    if (F.elements.size() == 2) {
      auto sign_in = [&](std::size_t iT) {
        const Element &T = mesh.element(iT);
        for (std::size_t i = 0; i < T.faces.size(); ++i)
          if (T.faces[i] == iF) return T.orientations[i];
        return 0;
      };
      if (F.elements[0] == F.elements[1] || sign_in(F.elements[0]) != -sign_in(F.elements[1]))
        throw GeometryError("interface without opposite orientations (face " + std::to_string(iF) + ")");
    }
  }

  for (std::size_t iT = 0; iT < mesh.n_elements(); ++iT) {
    const Element &T = mesh.element(iT);
    r.total_volume += T.volume;
    r.max_faces_per_element = std::max(r.max_faces_per_element, T.faces.size());
    r.min_faces_per_element = std::min(r.min_faces_per_element, T.faces.size());

    Vector3d closure = Vector3d::Zero();
    double boundary_area = 0.;
    for (std::size_t i = 0; i < T.faces.size(); ++i) {
      const Face &F = mesh.face(T.faces[i]);
      closure += F.area * mesh.outward_normal(iT, i);
      boundary_area += F.area;
    }
    r.max_closure_defect = std::max(r.max_closure_defect, closure.norm());
    if (closure.norm() > 1e-10 * boundary_area)
      throw GeometryError("element boundary not closed (element " + std::to_string(iT) + ")");

    for (std::size_t i = 0; i < T.faces.size(); ++i) {
      const Face &F = mesh.face(T.faces[i]);
      // every point of the face plane is at the same signed distance
      const double margin = (F.centroid - T.center).dot(mesh.outward_normal(iT, i)) / T.diameter;
      r.min_star_margin = std::min(r.min_star_margin, margin);
      if (!(margin > 0.))
        throw GeometryError("element not star-shaped with respect to its centroid (element " +
                            std::to_string(iT) + ", face " + std::to_string(T.faces[i]) + ")");
      if (F.diameter > T.diameter * (1. + 1e-12))
        throw GeometryError("face diameter exceeds element diameter (element " + std::to_string(iT) + ")");
      r.min_face_ratio = std::min(r.min_face_ratio, F.diameter / T.diameter);
    }
    r.min_inradius_ratio = std::min(r.min_inradius_ratio, 3. * T.volume / boundary_area / T.diameter);
  }
  return r;
}

//------------------------------------------------------------------------------
// Generators
//------------------------------------------------------------------------------

namespace
{

/// Collects faces given as vertex loops, merging duplicates by vertex set.
class MeshBuilder
{
public:
  explicit MeshBuilder(std::vector<Vector3d> vertices) : m_vertices(std::move(vertices)) {}

  /// Adds an element given by its face loops (any orientation)
  void add_element(const std::vector<std::vector<std::size_t>> &loops)
  {
    std::vector<std::size_t> ids;
    for (const auto &loop : loops) {
      std::vector<std::size_t> key(loop);
      std::sort(key.begin(), key.end());
      auto it = m_index.find(key);
      if (it == m_index.end()) {
        it = m_index.emplace(key, m_loops.size()).first;
        m_loops.push_back(loop);
      }
      ids.push_back(it->second);
    }
    m_elements.push_back(ids);
  }

  Mesh build() const
  {
    // orientation signs from geometry, relative to the vertex average of each element
    std::vector<std::vector<SignedFace>> elements;
    for (const auto &ids : m_elements) {
      Vector3d c = Vector3d::Zero();
      std::size_t count = 0;
      for (auto f : ids)
        for (auto v : m_loops[f]) {
          c += m_vertices[v];
          ++count;
        }
      c /= double(count);
      std::vector<SignedFace> sf;
      for (auto f : ids) {
        const auto &loop = m_loops[f];
        Vector3d n = Vector3d::Zero();
        for (std::size_t i = 0; i < loop.size(); ++i)
          n += m_vertices[loop[i]].cross(m_vertices[loop[(i + 1) % loop.size()]]);
        sf.emplace_back(f, n.dot(m_vertices[loop[0]] - c) > 0. ? 1 : -1);
      }
      elements.push_back(sf);
    }
    return Mesh(m_vertices, m_loops, elements);
  }

private:
  std::vector<Vector3d> m_vertices;
  std::vector<std::vector<std::size_t>> m_loops;
  std::map<std::vector<std::size_t>, std::size_t> m_index;
  std::vector<std::vector<std::size_t>> m_elements;
};

std::vector<Vector3d> grid_vertices(int n)
{
  std::vector<Vector3d> V;
  V.reserve(std::size_t(n + 1) * (n + 1) * (n + 1));
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        V.emplace_back(double(i) / n, double(j) / n, double(k) / n);
  return V;
}

} // namespace

Mesh generate_cubic(int n)
{
  if (n < 1) throw ConfigError("number of subdivisions must be at least 1");
  MeshBuilder b(grid_vertices(n));
  auto id = [n](int i, int j, int k) { return std::size_t(i + (n + 1) * (j + (n + 1) * k)); };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        auto v = [&](int a, int bb, int c) { return id(i + a, j + bb, k + c); };
        b.add_element({{v(0, 0, 0), v(0, 1, 0), v(1, 1, 0), v(1, 0, 0)},
                       {v(0, 0, 1), v(1, 0, 1), v(1, 1, 1), v(0, 1, 1)},
                       {v(0, 0, 0), v(1, 0, 0), v(1, 0, 1), v(0, 0, 1)},
                       {v(0, 1, 0), v(0, 1, 1), v(1, 1, 1), v(1, 1, 0)},
                       {v(0, 0, 0), v(0, 0, 1), v(0, 1, 1), v(0, 1, 0)},
                       {v(1, 0, 0), v(1, 1, 0), v(1, 1, 1), v(1, 0, 1)}});
      }
  return b.build();
}

Mesh generate_tetrahedral(int n)
{
  if (n < 1) throw ConfigError("number of subdivisions must be at least 1");
  MeshBuilder b(grid_vertices(n));
  auto id = [n](int i, int j, int k) { return std::size_t(i + (n + 1) * (j + (n + 1) * k)); };
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (const auto &p : perms) {
          // path from (0,0,0) to (1,1,1) along the axes p[0], p[1], p[2]
          int c[3] = {0, 0, 0};
          std::size_t t[4];
          t[0] = id(i, j, k);
          for (int s = 0; s < 3; ++s) {
            c[p[s]] = 1;
            t[s + 1] = id(i + c[0], j + c[1], k + c[2]);
          }
          b.add_element({{t[0], t[1], t[2]}, {t[0], t[1], t[3]}, {t[0], t[2], t[3]}, {t[1], t[2], t[3]}});
        }
  return b.build();
}

Mesh permute_elements(const Mesh &mesh, const std::vector<std::size_t> &perm)
{
  std::vector<std::vector<std::size_t>> loops;
  for (std::size_t i = 0; i < mesh.n_faces(); ++i) loops.push_back(mesh.face(i).vertices);
  std::vector<std::vector<SignedFace>> elements;
  for (auto iT : perm) elements.push_back(mesh.signed_faces(iT));
  return Mesh(mesh.vertices(), loops, elements);
}

//------------------------------------------------------------------------------
// Text format
//------------------------------------------------------------------------------

namespace
{

class LineReader
{
public:
  explicit LineReader(std::istream &in) : m_in(in) {}

  /// Next non-empty line with comments stripped; false at end of stream
  bool next(std::string &line)
  {
    std::string raw;
    while (std::getline(m_in, raw)) {
      ++m_line;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      line = raw;
      return true;
    }
    return false;
  }

  std::string require(const char *what)
  {
    std::string line;
    if (!next(line)) throw ParseError(std::string("unexpected end of file, expected ") + what, m_line);
    return line;
  }

  std::size_t line() const { return m_line; }

private:
  std::istream &m_in;
  std::size_t m_line = 0;
};

std::size_t parse_count(LineReader &r, const char *what)
{
  std::istringstream ss(r.require(what));
  long long n;
  std::string extra;
  if (!(ss >> n) || n < 0 || (ss >> extra)) throw ParseError(std::string("expected ") + what, r.line());
  return std::size_t(n);
}

} // namespace

Mesh load_mesh(std::istream &in)
{
  LineReader r(in);
  {
    std::istringstream ss(r.require("header"));
    std::string tag, version;
    ss >> tag >> version;
    if (tag != "polymesh" || version != "v1") throw ParseError("expected header 'polymesh v1'", r.line());
  }

  const std::size_t nv = parse_count(r, "vertex count");
  std::vector<Vector3d> vertices(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    std::istringstream ss(r.require("vertex coordinates"));
    std::string extra;
    if (!(ss >> vertices[i](0) >> vertices[i](1) >> vertices[i](2)) || (ss >> extra))
      throw ParseError("expected three vertex coordinates", r.line());
  }

  const std::size_t nf = parse_count(r, "face count");
  std::vector<std::vector<std::size_t>> loops(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    std::istringstream ss(r.require("face loop"));
    long long m, v;
    if (!(ss >> m) || m < 3) throw ParseError("expected face vertex count >= 3", r.line());
    for (long long j = 0; j < m; ++j) {
      if (!(ss >> v) || v < 0 || std::size_t(v) >= nv) throw ParseError("invalid vertex id in face loop", r.line());
      loops[i].push_back(std::size_t(v));
    }
    std::string extra;
    if (ss >> extra) throw ParseError("trailing data after face loop", r.line());
  }

  const std::size_t ne = parse_count(r, "element count");
  std::vector<std::vector<SignedFace>> elements(ne);
  for (std::size_t i = 0; i < ne; ++i) {
    std::istringstream ss(r.require("element face list"));
    long long m;
    if (!(ss >> m) || m < 4) throw ParseError("expected element face count >= 4", r.line());
    for (long long j = 0; j < m; ++j) {
      std::string tok;
      if (!(ss >> tok)) throw ParseError("missing face id in element", r.line());
      int sign = 1;
      std::size_t pos = 0;
      if (tok[0] == '-' || tok[0] == '+') {
        sign = tok[0] == '-' ? -1 : 1;
        pos = 1;
      }
      std::size_t used = 0;
      unsigned long long f = 0;
      try {
        f = std::stoull(tok.substr(pos), &used);
      } catch (...) {
        used = 0;
      }
      if (used == 0 || used + pos != tok.size() || f >= nf)
        throw ParseError("invalid signed face id '" + tok + "'", r.line());
      elements[i].emplace_back(std::size_t(f), sign);
    }
    std::string extra;
    if (ss >> extra) throw ParseError("trailing data after element face list", r.line());
  }
  std::string extra;
  if (r.next(extra)) throw ParseError("unexpected data after elements", r.line());

  return Mesh(std::move(vertices), std::move(loops), std::move(elements));
}

Mesh load_mesh_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mesh file '" + path + "'");
  return load_mesh(in);
}

void write_mesh(std::ostream &out, const Mesh &mesh)
{
  out << "polymesh v1\n# vertices\n" << mesh.n_vertices() << "\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto &v : mesh.vertices()) out << v(0) << " " << v(1) << " " << v(2) << "\n";
  out << "\n# faces: vertex count, vertex ids\n" << mesh.n_faces() << "\n";
  for (std::size_t i = 0; i < mesh.n_faces(); ++i) {
    const auto &loop = mesh.face(i).vertices;
    out << loop.size();
    for (auto v : loop) out << " " << v;
    out << "\n";
  }
  out << "\n# elements: face count, signed face ids (- means inward normal)\n" << mesh.n_elements() << "\n";
  for (std::size_t i = 0; i < mesh.n_elements(); ++i) {
    const Element &T = mesh.element(i);
    out << T.faces.size();
    for (std::size_t j = 0; j < T.faces.size(); ++j) out << " " << (T.orientations[j] < 0 ? "-" : "+") << T.faces[j];
    out << "\n";
  }
}

void write_mesh_file(const std::string &path, const Mesh &mesh)
{
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write mesh file '" + path + "'");
  write_mesh(out, mesh);
}

} // namespace hhomag
