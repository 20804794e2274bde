#include "mvpose/render.hpp"

#include <algorithm>
#include <cmath>

#include "mvpose/error.hpp"

namespace mvpose {

namespace {

constexpr double kNearPlane = 1e-3;

struct ScreenVertex {
    double u, v;     // continuous pixel coordinates
    double inv_z;    // 1 / depth
};

double edge(double ax, double ay, double bx, double by, double px, double py) {
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

// Top-left rule for triangles with positive edge-function area (y down): the top edge runs
// in +u, left edges run in -v.
bool is_top_left(double ax, double ay, double bx, double by) {
    const double dx = bx - ax;
    const double dy = by - ay;
    return (dy == 0.0 && dx > 0.0) || dy < 0.0;
}

}  // namespace

RenderOutput render(const TriangleMesh& mesh, const Pose& pose, const CameraIntrinsics& cam) {
    cam.validate();
    const int W = cam.width;
    const int H = cam.height;

    std::vector<Vec3> cam_pts;
    cam_pts.reserve(mesh.vertices().size());
    bool any_in_front = false;
    for (const Vec3& v : mesh.vertices()) {
        cam_pts.push_back(pose.transform(v));
        any_in_front = any_in_front || cam_pts.back().z > 0.0;
    }
    if (!any_in_front) throw Error(ErrorCode::ObjectBehindCamera, "all mesh vertices have z <= 0");

    RenderOutput out;
    out.rgb = Image(W, H);
    out.mask = Mask(W, H);
    out.depth.assign(static_cast<std::size_t>(W) * static_cast<std::size_t>(H),
                     std::numeric_limits<double>::infinity());

    const Vec3 light{0.0, 0.0, -1.0};
    const auto& colors = mesh.colors();

    for (const auto& tri : mesh.triangles()) {
        const Vec3& p0 = cam_pts[tri[0]];
        const Vec3& p1 = cam_pts[tri[1]];
        const Vec3& p2 = cam_pts[tri[2]];
        if (p0.z < kNearPlane || p1.z < kNearPlane || p2.z < kNearPlane) continue;

        const Vec3 n = cross(p1 - p0, p2 - p0);
        if (dot(n, p0) >= 0.0) continue;  // back face or edge-on
        const double shade = 0.3 + 0.7 * std::max(0.0, dot(normalized(n), light));

        ScreenVertex s[3];
        const Vec3* ps[3] = {&p0, &p1, &p2};
        for (int k = 0; k < 3; ++k) {
            const Point2 uv = cam.project(*ps[k]);
            s[k] = {uv.u, uv.v, 1.0 / ps[k]->z};
        }
        int order[3] = {0, 1, 2};
        double area = edge(s[0].u, s[0].v, s[1].u, s[1].v, s[2].u, s[2].v);
        if (area == 0.0) continue;
        if (area < 0.0) {
            std::swap(order[1], order[2]);
            area = -area;
        }
        const ScreenVertex& a = s[order[0]];
        const ScreenVertex& b = s[order[1]];
        const ScreenVertex& c = s[order[2]];
        const Rgb& ca = colors[tri[static_cast<std::size_t>(order[0])]];
        const Rgb& cb = colors[tri[static_cast<std::size_t>(order[1])]];
        const Rgb& cc = colors[tri[static_cast<std::size_t>(order[2])]];

        const bool tl_bc = is_top_left(b.u, b.v, c.u, c.v);
        const bool tl_ca = is_top_left(c.u, c.v, a.u, a.v);
        const bool tl_ab = is_top_left(a.u, a.v, b.u, b.v);

        const double umin = std::min({a.u, b.u, c.u});
        const double umax = std::max({a.u, b.u, c.u});
        const double vmin = std::min({a.v, b.v, c.v});
        const double vmax = std::max({a.v, b.v, c.v});
        const int x0 = std::max(0, static_cast<int>(std::floor(umin - 0.5)));
        const int x1 = std::min(W - 1, static_cast<int>(std::ceil(umax - 0.5)));
        const int y0 = std::max(0, static_cast<int>(std::floor(vmin - 0.5)));
        const int y1 = std::min(H - 1, static_cast<int>(std::ceil(vmax - 0.5)));

        for (int y = y0; y <= y1; ++y) {
            const double py = y + 0.5;
            for (int x = x0; x <= x1; ++x) {
                const double px = x + 0.5;
                const double w0 = edge(b.u, b.v, c.u, c.v, px, py);
                const double w1 = edge(c.u, c.v, a.u, a.v, px, py);
                const double w2 = edge(a.u, a.v, b.u, b.v, px, py);
                if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
                if ((w0 == 0.0 && !tl_bc) || (w1 == 0.0 && !tl_ca) || (w2 == 0.0 && !tl_ab)) continue;

                const double l0 = w0 / area;
                const double l1 = w1 / area;
                const double l2 = w2 / area;
                const double inv_z = l0 * a.inv_z + l1 * b.inv_z + l2 * c.inv_z;
                const double z = 1.0 / inv_z;
                const std::size_t idx = static_cast<std::size_t>(y) * static_cast<std::size_t>(W) + static_cast<std::size_t>(x);
                if (!(z < out.depth[idx])) continue;
                out.depth[idx] = z;
                out.mask.set(x, y, true);

                // Perspective-correct color weights.
                const double q0 = l0 * a.inv_z * z;
                const double q1 = l1 * b.inv_z * z;
                const double q2 = l2 * c.inv_z * z;
                Rgb px_color;
                for (int ch = 0; ch < 3; ++ch) {
                    const double col = (q0 * ca[ch] + q1 * cb[ch] + q2 * cc[ch]) * shade;
                    px_color[ch] = static_cast<std::uint8_t>(std::clamp(std::lround(col), 0L, 255L));
                }
                out.rgb.set(x, y, px_color);
            }
        }
    }
    return out;
}

const CanonicalViewSet& canonical_views() {
    static const CanonicalViewSet views = [] {
        const Vec3 yaw_axis{0.0, 1.0, 0.0};
        const Vec3 pitch_axis{1.0, 0.0, 0.0};
        return CanonicalViewSet{
            UnitQuaternion::identity(),
            UnitQuaternion::from_axis_angle_deg(yaw_axis, 90.0),
            UnitQuaternion::from_axis_angle_deg(yaw_axis, -90.0),
            UnitQuaternion::from_axis_angle_deg(yaw_axis, 180.0),
            UnitQuaternion::from_axis_angle_deg(pitch_axis, 90.0),
            UnitQuaternion::from_axis_angle_deg(pitch_axis, -90.0),
        };
    }();
    return views;
}

std::array<RenderOutput, 6> render_views(const TriangleMesh& mesh, const Vec3& translation,
                                         const CameraIntrinsics& cam) {
    if (!(translation.z > 0.0)) throw Error(ErrorCode::NonPositiveDepth, "view translation must have z > 0");
    std::array<RenderOutput, 6> out;
    const auto& views = canonical_views();
    for (std::size_t i = 0; i < views.size(); ++i) out[i] = render(mesh, {views[i], translation}, cam);
    return out;
}

}  // namespace mvpose
