#include "mvpose/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvpose/error.hpp"
#include "mvpose/quaternion.hpp"

namespace mvpose {

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles, std::vector<Rgb> colors)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), colors_(std::move(colors)) {
    if (vertices_.empty() || triangles_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "mesh needs at least one vertex and one triangle");
    }
    for (const auto& t : triangles_) {
        for (auto idx : t) {
            if (idx >= vertices_.size()) {
                throw Error(ErrorCode::InvalidArgument, "triangle index " + std::to_string(idx) + " out of range");
            }
        }
    }
    has_colors_ = !colors_.empty();
    if (has_colors_ && colors_.size() != vertices_.size()) {
        throw Error(ErrorCode::InvalidArgument, "color count does not match vertex count");
    }
    if (!has_colors_) colors_.assign(vertices_.size(), kDefaultColor);

    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
            best = std::max(best, (vertices_[i] - vertices_[j]).squared_norm());
        }
    }
    diameter_ = std::sqrt(best);
    if (!(diameter_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "mesh diameter must be positive");
}

TriangleMesh TriangleMesh::scaled(double s) const {
    std::vector<Vec3> v = vertices_;
    for (auto& p : v) p = p * s;
    return TriangleMesh(std::move(v), triangles_, has_colors_ ? colors_ : std::vector<Rgb>{});
}

TriangleMesh make_box(double sx, double sy, double sz) {
    const double hx = 0.5 * sx, hy = 0.5 * sy, hz = 0.5 * sz;
    // One quad per face so each face gets its own color.
    struct Face {
        Vec3 n;
        Rgb color;
    };
    const Face faces[6] = {
        {{1, 0, 0}, {220, 60, 60}},  {{-1, 0, 0}, {60, 220, 220}}, {{0, 1, 0}, {60, 220, 60}},
        {{0, -1, 0}, {220, 60, 220}}, {{0, 0, 1}, {60, 60, 220}},  {{0, 0, -1}, {220, 220, 60}},
    };
    std::vector<Vec3> verts;
    std::vector<TriangleMesh::Triangle> tris;
    std::vector<Rgb> colors;
    for (const Face& f : faces) {
        // Tangent frame (u, v) with u x v = n so the quad winds counter-clockwise from outside.
        const Vec3 helper = std::abs(f.n.x) > 0.5 ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
        const Vec3 u = cross(helper, f.n);
        const Vec3 v = cross(f.n, u);
        const auto base = static_cast<std::uint32_t>(verts.size());
        const double su[4] = {-1, 1, 1, -1};
        const double sv[4] = {-1, -1, 1, 1};
        for (int k = 0; k < 4; ++k) {
            const Vec3 p = f.n + u * su[k] + v * sv[k];
            verts.push_back({p.x * hx, p.y * hy, p.z * hz});
            colors.push_back(f.color);
        }
        tris.push_back({base, base + 1, base + 2});
        tris.push_back({base, base + 2, base + 3});
    }
    return TriangleMesh(std::move(verts), std::move(tris), std::move(colors));
}

TriangleMesh make_cube(double side) { return make_box(side, side, side); }

TriangleMesh make_uv_sphere(double radius, int stacks, int slices) {
    if (stacks < 2 || slices < 3) throw Error(ErrorCode::InvalidArgument, "sphere needs stacks >= 2, slices >= 3");
    std::vector<Vec3> verts;
    std::vector<TriangleMesh::Triangle> tris;
    verts.push_back({0, 0, radius});
    for (int i = 1; i < stacks; ++i) {
        const double theta = kPi * i / stacks;
        for (int j = 0; j < slices; ++j) {
            const double phi = 2.0 * kPi * j / slices;
            verts.push_back({radius * std::sin(theta) * std::cos(phi), radius * std::sin(theta) * std::sin(phi),
                             radius * std::cos(theta)});
        }
    }
    verts.push_back({0, 0, -radius});
    const auto ring = [&](int i, int j) {
        return static_cast<std::uint32_t>(1 + (i - 1) * slices + (j % slices));
    };
    const auto south = static_cast<std::uint32_t>(verts.size() - 1);
    for (int j = 0; j < slices; ++j) tris.push_back({0, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i + 1 < stacks; ++i) {
        for (int j = 0; j < slices; ++j) {
            tris.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
            tris.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
        }
    }
    for (int j = 0; j < slices; ++j) tris.push_back({south, ring(stacks - 1, j + 1), ring(stacks - 1, j)});
    return TriangleMesh(std::move(verts), std::move(tris));
}

TriangleMesh make_tetrahedron(double size) {
    const double s = 0.5 * size;
    std::vector<Vec3> verts = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    std::vector<TriangleMesh::Triangle> tris = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    std::vector<Rgb> colors = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {255, 255, 0}};
    return TriangleMesh(std::move(verts), std::move(tris), std::move(colors));
}

TriangleMesh load_mesh(const std::string& spec, double scale) {
    const std::string prefix = "builtin:";
    TriangleMesh mesh = [&] {
        if (spec.rfind(prefix, 0) != 0) return load_ply(spec);
        const std::string name = spec.substr(prefix.size());
        if (name == "cube") return make_cube(0.1);
        if (name == "box") return make_box(0.12, 0.08, 0.05);
        if (name == "sphere") return make_uv_sphere(0.05);
        if (name == "tetra") return make_tetrahedron(0.1);
        throw Error(ErrorCode::ConfigError, "unknown builtin mesh '" + name + "'");
    }();
    return scale == 1.0 ? mesh : mesh.scaled(scale);
}

}  // namespace mvpose
