#include "mvpose/raster_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mvpose/error.hpp"

namespace mvpose {

namespace {

struct PnmHeader {
    int width = 0;
    int height = 0;
    int maxval = 0;
};

// Reads a whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& is) {
    std::string tok;
    int c;
    while ((c = is.get()) != EOF) {
        if (c == '#') {
            while ((c = is.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

PnmHeader read_header(std::istream& is, const char* magic, const std::string& source) {
    if (next_token(is) != magic) throw ParseError(source, 1, std::string("expected magic ") + magic);
    PnmHeader h;
    try {
        h.width = std::stoi(next_token(is));
        h.height = std::stoi(next_token(is));
        h.maxval = std::stoi(next_token(is));
    } catch (const std::exception&) {
        throw ParseError(source, 1, "malformed header");
    }
    if (h.width <= 0 || h.height <= 0 || h.maxval != 255) {
        throw ParseError(source, 1, "unsupported dimensions or maxval (only 8-bit supported)");
    }
    return h;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::IoError, "cannot open " + path);
    return is;
}

}  // namespace

void write_ppm(std::ostream& os, const Image& img) {
    os << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.data().data()), static_cast<std::streamsize>(img.data().size()));
}

void write_ppm(const std::string& path, const Image& img) {
    auto os = open_out(path);
    write_ppm(os, img);
}

Image read_ppm(std::istream& is, const std::string& source) {
    const PnmHeader h = read_header(is, "P6", source);
    Image img(h.width, h.height);
    is.read(reinterpret_cast<char*>(img.data().data()), static_cast<std::streamsize>(img.data().size()));
    if (is.gcount() != static_cast<std::streamsize>(img.data().size())) throw ParseError(source, 1, "truncated pixel data");
    return img;
}

Image read_ppm(const std::string& path) {
    auto is = open_in(path);
    return read_ppm(is, path);
}

void write_pgm(std::ostream& os, const Mask& m) {
    os << "P5\n" << m.width() << ' ' << m.height() << "\n255\n";
    std::string row(static_cast<std::size_t>(m.width()), '\0');
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) row[static_cast<std::size_t>(x)] = m.at(x, y) ? '\xff' : '\0';
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

void write_pgm(const std::string& path, const Mask& m) {
    auto os = open_out(path);
    write_pgm(os, m);
}

Mask read_pgm(std::istream& is, const std::string& source) {
    const PnmHeader h = read_header(is, "P5", source);
    Mask m(h.width, h.height);
    std::string row(static_cast<std::size_t>(h.width), '\0');
    for (int y = 0; y < h.height; ++y) {
        is.read(row.data(), h.width);
        if (is.gcount() != h.width) throw ParseError(source, 1, "truncated pixel data");
        for (int x = 0; x < h.width; ++x) m.set(x, y, row[static_cast<std::size_t>(x)] != '\0');
    }
    return m;
}

Mask read_pgm(const std::string& path) {
    auto is = open_in(path);
    return read_pgm(is, path);
}

std::string bbox_to_csv(const BBox& b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", b.x, b.y, b.w, b.h);
    return buf;
}

BBox bbox_from_csv(const std::string& line) {
    std::istringstream ss(line);
    std::string field;
    double v[4];
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(ss, field, ',')) throw ParseError("<bbox>", 1, "expected 4 fields in '" + line + "'");
        try {
            v[i] = std::stod(field);
        } catch (const std::exception&) {
            throw ParseError("<bbox>", 1, "bad number '" + field + "'");
        }
    }
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace mvpose
