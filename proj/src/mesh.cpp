#include "caplab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <utility>

#include "caplab/errors.hpp"

namespace caplab {

DiskMesh build_disk_mesh(int rings) {
    if (rings < 4) throw DomainError("build_disk_mesh: need at least 4 rings");
    DiskMesh mesh;
    mesh.rings = rings;
    mesh.h = 1.0 / rings;
    mesh.vertices.push_back({0.0, 0.0});
    std::vector<int> ring_start{0};
    for (int k = 1; k <= rings; ++k) {
        ring_start.push_back(static_cast<int>(mesh.vertices.size()));
        const int n = 6 * k;
        const double r = static_cast<double>(k) / rings;
        for (int j = 0; j < n; ++j) {
            const double t = 2.0 * std::numbers::pi * j / n;
            if (k == rings) {
                mesh.vertices.push_back({std::cos(t), std::sin(t)});
            } else {
                mesh.vertices.push_back({r * std::cos(t), r * std::sin(t)});
            }
        }
    }
    mesh.boundary.assign(mesh.vertices.size(), false);
    for (std::size_t v = ring_start[rings]; v < mesh.vertices.size(); ++v) mesh.boundary[v] = true;

    for (int j = 0; j < 6; ++j) mesh.triangles.push_back({0, 1 + j, 1 + (j + 1) % 6});

    // Zipper between ring k-1 (n_in vertices) and ring k (n_out), advancing
    // whichever side has the smaller next angle; integer comparison keeps ties exact.
    for (int k = 2; k <= rings; ++k) {
        const int n_in = 6 * (k - 1), n_out = 6 * k;
        const int in0 = ring_start[k - 1], out0 = ring_start[k];
        int i = 0, j = 0;
        while (i < n_in || j < n_out) {
            const bool outer = i == n_in || (j < n_out && (j + 1) * n_in <= (i + 1) * n_out);
            if (outer) {
                mesh.triangles.push_back({in0 + i % n_in, out0 + j, out0 + (j + 1) % n_out});
                ++j;
            } else {
                mesh.triangles.push_back({in0 + i, out0 + j % n_out, in0 + (i + 1) % n_in});
                ++i;
            }
        }
    }
    return mesh;
}

double triangle_area(const DiskMesh& mesh, std::size_t t) {
    const auto& tri = mesh.triangles[t];
    const auto& a = mesh.vertices[tri[0]];
    const auto& b = mesh.vertices[tri[1]];
    const auto& c = mesh.vertices[tri[2]];
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

double mesh_area(const DiskMesh& mesh) {
    double s = 0.0;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) s += triangle_area(mesh, t);
    return s;
}

std::size_t edge_count(const DiskMesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (const auto& tri : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            const int a = tri[e], b = tri[(e + 1) % 3];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    return edges.size();
}

void write_mesh(const DiskMesh& mesh, std::ostream& out) {
    out.precision(17);
    for (const auto& v : mesh.vertices) out << "v " << v[0] << ' ' << v[1] << '\n';
    for (const auto& t : mesh.triangles) out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_mesh(const DiskMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_mesh: cannot open " + path);
    write_mesh(mesh, out);
}

}  // namespace caplab
