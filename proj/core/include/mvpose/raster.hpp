#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mvpose/camera.hpp"

namespace mvpose {

using Rgb = std::array<std::uint8_t, 3>;

/// Row-major 8-bit RGB raster.
class Image {
public:
    Image() = default;
    Image(int width, int height, Rgb fill = {0, 0, 0});

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return width_ == 0 || height_ == 0; }

    Rgb at(int x, int y) const;
    void set(int x, int y, Rgb c);

    std::vector<std::uint8_t>& data() { return data_; }
    const std::vector<std::uint8_t>& data() const { return data_; }

    bool operator==(const Image&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Row-major boolean raster, one byte (0 or 1) per pixel.
class Mask {
public:
    Mask() = default;
    Mask(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }

    bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
    void set(int x, int y, bool v) { bits_[index(x, y)] = v ? 1 : 0; }

    std::size_t count() const;
    bool any() const { return count() > 0; }
    /// True when every pixel set here is also set in `other` (same dimensions required).
    bool subset_of(const Mask& other) const;

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    bool operator==(const Mask&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Axis-aligned box in continuous pixel coordinates (top-left corner and extent).
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double cx() const { return x + 0.5 * w; }
    double cy() const { return y + 0.5 * h; }
    double x1() const { return x + w; }
    double y1() const { return y + h; }
    double area() const { return w * h; }

    bool valid() const { return w > 0.0 && h > 0.0; }
    bool contains(const BBox& other, double eps = 1e-9) const;

    bool operator==(const BBox&) const = default;
};

double iou(const BBox& a, const BBox& b);

/// Grows the box to the requested aspect ratio (w/h) symmetrically about its center, then
/// translates it inward to lie inside [0,width] x [0,height]. Never shrinks.
/// Throws Error(BBoxLargerThanImage) when the expanded box cannot fit.
BBox expand_bbox_to_ratio(const BBox& b, double ratio_w_h, int width, int height);
inline BBox expand_bbox_to_ratio(const BBox& b, int width, int height) {
    return expand_bbox_to_ratio(b, 4.0 / 3.0, width, height);
}

/// Translation whose projection is the box center, at depth `depth_guess`.
Vec3 infer_translation_from_bbox(const BBox& b, const CameraIntrinsics& cam, double depth_guess);

/// diameter * fx / bbox diagonal, clamped to [z_min, z_max].
double depth_from_bbox(const BBox& b, const CameraIntrinsics& cam, double object_diameter, double z_min,
                       double z_max);

/// Square dilation with side 2*floor(k/2)+1; k = 0 is the identity.
Mask dilate_mask(const Mask& m, int k);

/// Tight bounds of the true pixels. Throws Error(EmptyMask).
BBox bbox_from_mask(const Mask& m);

}  // namespace mvpose
