#include "mvpose/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvpose/error.hpp"

namespace mvpose {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw Error(ErrorCode::InvalidArgument, "negative image size");
    data_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
    for (std::size_t i = 0; i < data_.size(); i += 3) {
        data_[i] = fill[0];
        data_[i + 1] = fill[1];
        data_[i + 2] = fill[2];
    }
}

Rgb Image::at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
    return {data_[i], data_[i + 1], data_[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
    data_[i] = c[0];
    data_[i + 1] = c[1];
    data_[i + 2] = c[2];
}

Mask::Mask(int width, int height, bool fill) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw Error(ErrorCode::InvalidArgument, "negative mask size");
    bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

std::size_t Mask::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

bool Mask::subset_of(const Mask& other) const {
    if (width_ != other.width_ || height_ != other.height_) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] && !other.bits_[i]) return false;
    }
    return true;
}

bool BBox::contains(const BBox& o, double eps) const {
    return o.x >= x - eps && o.y >= y - eps && o.x1() <= x1() + eps && o.y1() <= y1() + eps;
}

double iou(const BBox& a, const BBox& b) {
    const double ix = std::max(0.0, std::min(a.x1(), b.x1()) - std::max(a.x, b.x));
    const double iy = std::max(0.0, std::min(a.y1(), b.y1()) - std::max(a.y, b.y));
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

BBox expand_bbox_to_ratio(const BBox& b, double ratio_w_h, int width, int height) {
    if (!b.valid()) throw Error(ErrorCode::InvalidArgument, "bbox must have positive extent");
    if (!(ratio_w_h > 0.0)) throw Error(ErrorCode::InvalidArgument, "aspect ratio must be positive");

    BBox out = b;
    if (b.w / b.h < ratio_w_h) {
        out.w = ratio_w_h * b.h;
        out.x = b.cx() - 0.5 * out.w;
    } else if (b.w / b.h > ratio_w_h) {
        out.h = b.w / ratio_w_h;
        out.y = b.cy() - 0.5 * out.h;
    }

    const double W = width;
    const double H = height;
    if (out.w > W + 1e-9 || out.h > H + 1e-9) {
        throw Error(ErrorCode::BBoxLargerThanImage,
                    "4:3 box " + std::to_string(out.w) + "x" + std::to_string(out.h) + " exceeds " +
                        std::to_string(width) + "x" + std::to_string(height));
    }
    out.x = std::clamp(out.x, 0.0, std::max(0.0, W - out.w));
    out.y = std::clamp(out.y, 0.0, std::max(0.0, H - out.h));
    return out;
}

Vec3 infer_translation_from_bbox(const BBox& b, const CameraIntrinsics& cam, double depth_guess) {
    if (!(depth_guess > 0.0)) throw Error(ErrorCode::NonPositiveDepth, "depth guess must be positive");
    return cam.back_project({b.cx(), b.cy()}, depth_guess);
}

double depth_from_bbox(const BBox& b, const CameraIntrinsics& cam, double object_diameter, double z_min,
                       double z_max) {
    const double diag = std::hypot(b.w, b.h);
    if (!(diag > 0.0)) return z_max;
    return std::clamp(object_diameter * cam.fx / diag, z_min, z_max);
}

Mask dilate_mask(const Mask& m, int k) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "dilation size must be >= 0");
    const int r = k / 2;
    if (r == 0) return m;

    const int W = m.width();
    const int H = m.height();
    // Separable max filter: rows then columns.
    Mask rows(W, H);
    for (int y = 0; y < H; ++y) {
        int last = -1'000'000;  // x of the most recent set pixel at or left of x + r
        for (int x = 0; x < W + r; ++x) {
            if (x < W && m.at(x, y)) last = x;
            const int cx = x - r;
            if (cx >= 0 && cx < W) {
                // pixel cx is set if any source pixel in [cx-r, cx+r] is set
                if (last >= cx - r) rows.set(cx, y, true);
            }
        }
    }
    Mask out(W, H);
    for (int x = 0; x < W; ++x) {
        int last = -1'000'000;
        for (int y = 0; y < H + r; ++y) {
            if (y < H && rows.at(x, y)) last = y;
            const int cy = y - r;
            if (cy >= 0 && cy < H && last >= cy - r) out.set(x, cy, true);
        }
    }
    return out;
}

BBox bbox_from_mask(const Mask& m) {
    int x0 = m.width(), y0 = m.height(), x1 = -1, y1 = -1;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (!m.at(x, y)) continue;
            x0 = std::min(x0, x);
            y0 = std::min(y0, y);
            x1 = std::max(x1, x);
            y1 = std::max(y1, y);
        }
    }
    if (x1 < 0) throw Error(ErrorCode::EmptyMask, "mask has no set pixels");
    return {static_cast<double>(x0), static_cast<double>(y0), static_cast<double>(x1 - x0 + 1),
            static_cast<double>(y1 - y0 + 1)};
}

}  // namespace mvpose
