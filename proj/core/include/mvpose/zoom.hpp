#pragma once

#include <utility>

#include "mvpose/camera.hpp"
#include "mvpose/raster.hpp"

namespace mvpose {

inline constexpr int kZoomWidth = 640;
inline constexpr int kZoomHeight = 480;

/// Affine map from original-frame pixel coordinates to zoomed-frame coordinates:
/// u' = scale_x * u + offset_x, v' = scale_y * v + offset_y.
struct ZoomTransform {
    double scale_x = 1.0;
    double scale_y = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;

    /// Maps the crop box onto [0, out_w] x [0, out_h].
    static ZoomTransform from_bbox(const BBox& b, int out_w = kZoomWidth, int out_h = kZoomHeight);

    Point2 apply(const Point2& p) const { return {scale_x * p.u + offset_x, scale_y * p.v + offset_y}; }
    Point2 invert(const Point2& p) const { return {(p.u - offset_x) / scale_x, (p.v - offset_y) / scale_y}; }
    ZoomTransform inverse() const;

    /// Intrinsics of the virtual camera that sees the zoomed image directly.
    CameraIntrinsics zoomed_camera(const CameraIntrinsics& cam, int out_w = kZoomWidth,
                                   int out_h = kZoomHeight) const;
};

/// Crops the box and bilinearly resamples it to 640x480. The box is expected to be 4:3
/// already (see expand_bbox_to_ratio). Throws Error(BBoxOutOfBounds) when the box is not
/// inside the image.
std::pair<Image, ZoomTransform> zoom_crop(const Image& img, const BBox& b);

/// Same crop as zoom_crop with nearest-neighbour sampling so the result stays boolean.
Mask zoom_mask(const Mask& m, const BBox& b);

}  // namespace mvpose
