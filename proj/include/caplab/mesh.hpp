#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace caplab {

/// Structured triangulation of the unit disk: ring k (1..rings) carries 6k
/// vertices at radius k / rings, plus the center vertex 0.
struct DiskMesh {
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::array<int, 3>> triangles;  // counter-clockwise
    std::vector<bool> boundary;
    int rings = 0;
    double h = 0.0;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t triangle_count() const { return triangles.size(); }
};

DiskMesh build_disk_mesh(int rings);

double triangle_area(const DiskMesh& mesh, std::size_t t);
double mesh_area(const DiskMesh& mesh);
std::size_t edge_count(const DiskMesh& mesh);

/// Vertex lines `v x y`, then triangle lines `t i j k` (0-based).
void write_mesh(const DiskMesh& mesh, std::ostream& out);
void write_mesh(const DiskMesh& mesh, const std::string& path);

}  // namespace caplab
