// Copyright 2026 The hcurlmg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "hcurlmg/error.hpp"
#include "hcurlmg/mesh.hpp"

namespace hcurlmg {
namespace {

std::size_t expect_header(std::istream& in, const char* word) {
  std::string tag;
  long long n = -1;
  if (!(in >> tag >> n) || tag != word || n < 0) {
    fail(ErrorKind::Io, std::string("mesh file: expected '") + word + " <count>'");
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

void write_mesh(const Mesh& mesh, std::ostream& out) {
  const auto leaves = mesh.leaves();
  char buf[128];
  out << "vertices " << mesh.num_vertices() << '\n';
  for (const Vec3& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p[0], p[1], p[2]);
    out << buf;
  }
  out << "tets " << leaves.size() << '\n';
  std::size_t n_dirichlet = 0;
  for (TetId k : leaves) {
    const Tet& t = mesh.tet(k);
    out << t.verts[0] << ' ' << t.verts[1] << ' ' << t.verts[2] << ' ' << t.verts[3] << ' '
        << t.type << '\n';
    for (FaceKind f : t.faces) n_dirichlet += f == FaceKind::Dirichlet;
  }
  out << "dirichlet " << n_dirichlet << '\n';
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const Tet& t = mesh.tet(leaves[i]);
    for (int f = 0; f < 4; ++f) {
      if (t.faces[f] == FaceKind::Dirichlet) out << i << ' ' << f << '\n';
    }
  }
}

Mesh read_mesh(std::istream& in) {
  const std::size_t nv = expect_header(in, "vertices");
  std::vector<Vec3> vertices(nv);
  for (auto& p : vertices) {
    // strtod keeps the round trip exact for 17-digit decimal input.
    std::string s[3];
    if (!(in >> s[0] >> s[1] >> s[2])) fail(ErrorKind::Io, "mesh file: truncated vertex list");
    for (int d = 0; d < 3; ++d) {
      char* end = nullptr;
      p[d] = std::strtod(s[d].c_str(), &end);
      if (end == s[d].c_str() || *end != '\0') fail(ErrorKind::Io, "mesh file: bad coordinate '" + s[d] + "'");
    }
  }
  const std::size_t nt = expect_header(in, "tets");
  std::vector<InitialTet> tets(nt);
  for (auto& t : tets) {
    if (!(in >> t.verts[0] >> t.verts[1] >> t.verts[2] >> t.verts[3] >> t.type)) {
      fail(ErrorKind::Io, "mesh file: truncated tet list");
    }
  }
  const std::size_t nf = expect_header(in, "dirichlet");
  std::vector<BoundaryFace> dirichlet(nf);
  for (auto& f : dirichlet) {
    if (!(in >> f.tet >> f.face)) fail(ErrorKind::Io, "mesh file: truncated dirichlet list");
  }
  return Mesh(std::move(vertices), tets, dirichlet);
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  write_mesh(mesh, out);
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  return read_mesh(in);
}

}  // namespace hcurlmg
