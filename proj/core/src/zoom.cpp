#include "mvpose/zoom.hpp"

#include <algorithm>
#include <vector>
#include <cmath>
#include <string>

#include "mvpose/error.hpp"

namespace mvpose {

namespace {

void require_inside(const BBox& b, int width, int height) {
    const BBox frame{0.0, 0.0, static_cast<double>(width), static_cast<double>(height)};
    if (!b.valid() || !frame.contains(b, 1e-6)) {
        throw Error(ErrorCode::BBoxOutOfBounds, "crop box (" + std::to_string(b.x) + "," + std::to_string(b.y) + "," +
                                                    std::to_string(b.w) + "," + std::to_string(b.h) +
                                                    ") outside " + std::to_string(width) + "x" +
                                                    std::to_string(height));
    }
}

}  // namespace

ZoomTransform ZoomTransform::from_bbox(const BBox& b, int out_w, int out_h) {
    if (!b.valid()) throw Error(ErrorCode::InvalidArgument, "zoom box must have positive extent");
    const double sx = out_w / b.w;
    const double sy = out_h / b.h;
    return {sx, sy, -b.x * sx, -b.y * sy};
}

ZoomTransform ZoomTransform::inverse() const {
    return {1.0 / scale_x, 1.0 / scale_y, -offset_x / scale_x, -offset_y / scale_y};
}

CameraIntrinsics ZoomTransform::zoomed_camera(const CameraIntrinsics& cam, int out_w, int out_h) const {
    return {cam.fx * scale_x, cam.fy * scale_y, cam.px * scale_x + offset_x, cam.py * scale_y + offset_y, out_w,
            out_h};
}

std::pair<Image, ZoomTransform> zoom_crop(const Image& img, const BBox& b) {
    require_inside(b, img.width(), img.height());
    const ZoomTransform zt = ZoomTransform::from_bbox(b);
    Image out(kZoomWidth, kZoomHeight);

    const int W = img.width();
    const int H = img.height();
    const auto& src = img.data();
    auto& dst = out.data();

    // Source columns and weights are shared by every output row.
    std::vector<std::size_t> c0(kZoomWidth), c1(kZoomWidth);
    std::vector<double> wx(kZoomWidth);
    for (int i = 0; i < kZoomWidth; ++i) {
        const double su = (i + 0.5 - zt.offset_x) / zt.scale_x - 0.5;
        const double fx0 = std::floor(su);
        wx[i] = su - fx0;
        c0[i] = static_cast<std::size_t>(std::clamp(static_cast<int>(fx0), 0, W - 1)) * 3;
        c1[i] = static_cast<std::size_t>(std::clamp(static_cast<int>(fx0) + 1, 0, W - 1)) * 3;
    }
    for (int j = 0; j < kZoomHeight; ++j) {
        const double sv = (j + 0.5 - zt.offset_y) / zt.scale_y - 0.5;
        const double fy0 = std::floor(sv);
        const double ty = sv - fy0;
        const std::size_t r0 = static_cast<std::size_t>(std::clamp(static_cast<int>(fy0), 0, H - 1)) * W * 3;
        const std::size_t r1 = static_cast<std::size_t>(std::clamp(static_cast<int>(fy0) + 1, 0, H - 1)) * W * 3;
        std::uint8_t* row = dst.data() + static_cast<std::size_t>(j) * kZoomWidth * 3;
        for (int i = 0; i < kZoomWidth; ++i) {
            const double tx = wx[i];
            for (int c = 0; c < 3; ++c) {
                const double top = (1.0 - tx) * src[r0 + c0[i] + c] + tx * src[r0 + c1[i] + c];
                const double bot = (1.0 - tx) * src[r1 + c0[i] + c] + tx * src[r1 + c1[i] + c];
                const double v = (1.0 - ty) * top + ty * bot;
                row[i * 3 + c] = static_cast<std::uint8_t>(std::min(255.0, v + 0.5));
            }
        }
    }
    return {std::move(out), zt};
}

Mask zoom_mask(const Mask& m, const BBox& b) {
    require_inside(b, m.width(), m.height());
    const ZoomTransform zt = ZoomTransform::from_bbox(b);
    Mask out(kZoomWidth, kZoomHeight);
    for (int j = 0; j < kZoomHeight; ++j) {
        const int sy = std::clamp(static_cast<int>(std::floor((j + 0.5 - zt.offset_y) / zt.scale_y)), 0, m.height() - 1);
        for (int i = 0; i < kZoomWidth; ++i) {
            const int sx = std::clamp(static_cast<int>(std::floor((i + 0.5 - zt.offset_x) / zt.scale_x)), 0, m.width() - 1);
            if (m.at(sx, sy)) out.set(i, j, true);
        }
    }
    return out;
}

}  // namespace mvpose
