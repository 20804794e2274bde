#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mvpose/raster.hpp"

namespace mvpose {

// Binary PPM (P6) for RGB images, binary PGM (P5, 0/255) for masks.
void write_ppm(std::ostream& os, const Image& img);
void write_ppm(const std::string& path, const Image& img);
Image read_ppm(std::istream& is, const std::string& source = "<stream>");
Image read_ppm(const std::string& path);

void write_pgm(std::ostream& os, const Mask& m);
void write_pgm(const std::string& path, const Mask& m);
/// Any nonzero sample reads as true.
Mask read_pgm(std::istream& is, const std::string& source = "<stream>");
Mask read_pgm(const std::string& path);

/// "x,y,w,h" with enough digits to round-trip doubles.
std::string bbox_to_csv(const BBox& b);
BBox bbox_from_csv(const std::string& line);

}  // namespace mvpose
