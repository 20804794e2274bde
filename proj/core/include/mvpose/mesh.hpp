#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mvpose/raster.hpp"
#include "mvpose/vec3.hpp"

namespace mvpose {

/// Triangle mesh in the object frame (meters). Faces wind counter-clockwise when seen
/// from outside; the renderer culls faces whose front side points away from the camera.
class TriangleMesh {
public:
    using Triangle = std::array<std::uint32_t, 3>;

    static constexpr Rgb kDefaultColor{128, 128, 128};

    /// Validates indices, fills missing colors with mid-gray and caches the diameter.
    /// Throws Error(InvalidArgument) on an empty/degenerate mesh or out-of-range index.
    TriangleMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles, std::vector<Rgb> colors = {});

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::vector<Rgb>& colors() const { return colors_; }
    bool has_vertex_colors() const { return has_colors_; }

    /// Largest pairwise vertex distance.
    double diameter() const { return diameter_; }

    TriangleMesh scaled(double s) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<Rgb> colors_;
    bool has_colors_ = false;
    double diameter_ = 0.0;
};

/// Axis-aligned cube centered at the origin, faces colored per axis.
TriangleMesh make_cube(double side = 1.0);
/// Box with distinct extents per axis; unlike the cube it has no 90 degree symmetry.
TriangleMesh make_box(double sx, double sy, double sz);
TriangleMesh make_uv_sphere(double radius = 0.5, int stacks = 24, int slices = 48);
TriangleMesh make_tetrahedron(double size = 1.0);

/// ASCII PLY 1.0: vertex x/y/z with optional red/green/blue, faces as index lists.
/// Quads are fan-triangulated; larger polygons raise Error(UnsupportedElement).
/// Syntax problems raise ParseError carrying the line number.
TriangleMesh load_ply(const std::string& path);
TriangleMesh load_ply(std::istream& is, const std::string& source = "<stream>");

void write_ply(std::ostream& os, const TriangleMesh& mesh);

/// Resolves "builtin:cube|box|sphere|tetra" or a PLY path, then applies `scale`.
TriangleMesh load_mesh(const std::string& spec, double scale = 1.0);

}  // namespace mvpose
