#pragma once

#include <array>
#include <limits>
#include <vector>

#include "mvpose/camera.hpp"
#include "mvpose/mesh.hpp"
#include "mvpose/pose.hpp"
#include "mvpose/raster.hpp"

namespace mvpose {

struct RenderOutput {
    Image rgb;
    Mask mask;
    /// Row-major camera-frame depth in meters; +inf where nothing was drawn.
    std::vector<double> depth;

    double depth_at(int x, int y) const {
        return depth[static_cast<std::size_t>(y) * static_cast<std::size_t>(rgb.width()) + static_cast<std::size_t>(x)];
    }
};

/// Z-buffered rasterization of `mesh` at `pose` through `cam`.
///
/// Samples at pixel centers with a top-left fill rule, interpolates 1/z for
/// perspective-correct depth and culls back faces. Color is the interpolated vertex color
/// times (0.3 + 0.7 max(0, n.L)) with a headlight L = (0, 0, -1). Triangles reaching closer
/// than 1 mm to the camera plane are skipped.
/// Throws Error(ObjectBehindCamera) if no vertex has positive depth.
RenderOutput render(const TriangleMesh& mesh, const Pose& pose, const CameraIntrinsics& cam);

using CanonicalViewSet = std::array<UnitQuaternion, 6>;

/// The six cube-face views: identity (frontal), yaw +90, yaw -90, yaw 180, pitch +90,
/// pitch -90. Yaw rotates about the camera y axis, pitch about the camera x axis.
const CanonicalViewSet& canonical_views();

/// Renders the mesh once per canonical view at a shared translation.
std::array<RenderOutput, 6> render_views(const TriangleMesh& mesh, const Vec3& translation,
                                         const CameraIntrinsics& cam);

}  // namespace mvpose
