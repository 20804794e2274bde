#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvpose/error.hpp"
#include "mvpose/mesh.hpp"

namespace mvpose {

namespace {

struct Property {
    std::string name;
    bool is_list = false;
};

struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<Property> properties;
};

class LineReader {
public:
    LineReader(std::istream& is, std::string source) : is_(is), source_(std::move(source)) {}

    // Next non-empty line (comments are only recognized in the header).
    bool next(std::string& line) {
        while (std::getline(is_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_no_, what); }

    std::size_t line_no() const { return line_no_; }
    const std::string& source() const { return source_; }

private:
    std::istream& is_;
    std::string source_;
    std::size_t line_no_ = 0;
};

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok, const LineReader& rd) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        rd.fail("bad number '" + tok + "'");
    }
    return v;
}

long long parse_int(const std::string& tok, const LineReader& rd) {
    const double v = parse_double(tok, rd);
    if (v != std::floor(v)) rd.fail("expected integer, got '" + tok + "'");
    return static_cast<long long>(v);
}

std::uint8_t parse_color(const std::string& tok, const LineReader& rd) {
    const double v = parse_double(tok, rd);
    // Float color channels are in [0,1], integer ones in [0,255].
    const double scaled = (tok.find('.') != std::string::npos && v <= 1.0) ? v * 255.0 : v;
    if (scaled < 0.0 || scaled > 255.0) rd.fail("color out of range '" + tok + "'");
    return static_cast<std::uint8_t>(std::lround(scaled));
}

}  // namespace

TriangleMesh load_ply(std::istream& is, const std::string& source) {
    LineReader rd(is, source);
    std::string line;

    if (!rd.next(line) || split(line) != std::vector<std::string>{"ply"}) rd.fail("missing 'ply' magic");

    std::vector<Element> elements;
    bool saw_format = false;
    for (;;) {
        if (!rd.next(line)) rd.fail("unexpected end of header");
        const auto tok = split(line);
        if (tok[0] == "end_header") break;
        if (tok[0] == "comment" || tok[0] == "obj_info") continue;
        if (tok[0] == "format") {
            if (tok.size() < 3) rd.fail("malformed format line");
            if (tok[1] != "ascii") rd.fail("unsupported PLY format '" + tok[1] + "' (only ascii 1.0)");
            if (tok[2] != "1.0") rd.fail("unsupported PLY version '" + tok[2] + "'");
            saw_format = true;
        } else if (tok[0] == "element") {
            if (tok.size() != 3) rd.fail("malformed element line");
            const long long count = parse_int(tok[2], rd);
            if (count < 0) rd.fail("negative element count");
            elements.push_back({tok[1], static_cast<std::size_t>(count), {}});
        } else if (tok[0] == "property") {
            if (elements.empty()) rd.fail("property before any element");
            if (tok.size() >= 5 && tok[1] == "list") {
                elements.back().properties.push_back({tok[4], true});
            } else if (tok.size() == 3) {
                elements.back().properties.push_back({tok[2], false});
            } else {
                rd.fail("malformed property line");
            }
        } else {
            rd.fail("unknown header keyword '" + tok[0] + "'");
        }
    }
    if (!saw_format) rd.fail("missing format line");

    std::vector<Vec3> verts;
    std::vector<Rgb> colors;
    std::vector<TriangleMesh::Triangle> tris;
    bool have_vertex = false, have_face = false;

    for (const Element& el : elements) {
        if (el.name == "vertex") {
            have_vertex = true;
            int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
            for (int k = 0; k < static_cast<int>(el.properties.size()); ++k) {
                const auto& p = el.properties[static_cast<std::size_t>(k)];
                if (p.is_list) rd.fail("list property '" + p.name + "' on vertex element");
                if (p.name == "x") ix = k;
                else if (p.name == "y") iy = k;
                else if (p.name == "z") iz = k;
                else if (p.name == "red" || p.name == "r") ir = k;
                else if (p.name == "green" || p.name == "g") ig = k;
                else if (p.name == "blue" || p.name == "b") ib = k;
            }
            if (ix < 0 || iy < 0 || iz < 0) rd.fail("vertex element lacks x/y/z");
            const bool with_color = ir >= 0 && ig >= 0 && ib >= 0;
            verts.reserve(el.count);
            for (std::size_t i = 0; i < el.count; ++i) {
                if (!rd.next(line)) rd.fail("unexpected end of vertex data");
                const auto tok = split(line);
                if (tok.size() != el.properties.size()) {
                    rd.fail("vertex has " + std::to_string(tok.size()) + " values, expected " +
                            std::to_string(el.properties.size()));
                }
                verts.push_back({parse_double(tok[static_cast<std::size_t>(ix)], rd),
                                 parse_double(tok[static_cast<std::size_t>(iy)], rd),
                                 parse_double(tok[static_cast<std::size_t>(iz)], rd)});
                if (with_color) {
                    colors.push_back({parse_color(tok[static_cast<std::size_t>(ir)], rd),
                                      parse_color(tok[static_cast<std::size_t>(ig)], rd),
                                      parse_color(tok[static_cast<std::size_t>(ib)], rd)});
                }
            }
        } else if (el.name == "face") {
            have_face = true;
            if (el.properties.size() != 1 || !el.properties[0].is_list ||
                (el.properties[0].name != "vertex_indices" && el.properties[0].name != "vertex_index")) {
                rd.fail("face element must be a single vertex_indices list");
            }
            for (std::size_t i = 0; i < el.count; ++i) {
                if (!rd.next(line)) rd.fail("unexpected end of face data");
                const auto tok = split(line);
                const long long n = parse_int(tok[0], rd);
                if (n < 3) rd.fail("face with " + std::to_string(n) + " vertices");
                if (static_cast<std::size_t>(n) + 1 != tok.size()) rd.fail("face index count mismatch");
                if (n > 4) {
                    throw Error(ErrorCode::UnsupportedElement, rd.source() + ":" + std::to_string(rd.line_no()) +
                                                                   ": polygon with " + std::to_string(n) +
                                                                   " vertices (only triangles and quads)");
                }
                std::uint32_t idx[4];
                for (long long k = 0; k < n; ++k) {
                    const long long v = parse_int(tok[static_cast<std::size_t>(k + 1)], rd);
                    if (v < 0 || static_cast<std::size_t>(v) >= verts.size()) {
                        rd.fail("vertex index " + std::to_string(v) + " out of range");
                    }
                    idx[k] = static_cast<std::uint32_t>(v);
                }
                tris.push_back({idx[0], idx[1], idx[2]});
                if (n == 4) tris.push_back({idx[0], idx[2], idx[3]});
            }
        } else {
            for (std::size_t i = 0; i < el.count; ++i) {
                if (!rd.next(line)) rd.fail("unexpected end of '" + el.name + "' data");
            }
        }
    }

    if (!have_vertex || verts.empty()) rd.fail("no vertices");
    if (!have_face || tris.empty()) rd.fail("no faces");
    return TriangleMesh(std::move(verts), std::move(tris), std::move(colors));
}

TriangleMesh load_ply(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::IoError, "cannot open " + path);
    return load_ply(is, path);
}

void write_ply(std::ostream& os, const TriangleMesh& mesh) {
    os << "ply\nformat ascii 1.0\n";
    os << "element vertex " << mesh.vertices().size() << "\n";
    os << "property float x\nproperty float y\nproperty float z\n";
    if (mesh.has_vertex_colors()) os << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    os << "element face " << mesh.triangles().size() << "\n";
    os << "property list uchar int vertex_indices\nend_header\n";
    char buf[96];
    for (std::size_t i = 0; i < mesh.vertices().size(); ++i) {
        const Vec3& v = mesh.vertices()[i];
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", v.x, v.y, v.z);
        os << buf;
        if (mesh.has_vertex_colors()) {
            const Rgb& c = mesh.colors()[i];
            os << ' ' << int(c[0]) << ' ' << int(c[1]) << ' ' << int(c[2]);
        }
        os << '\n';
    }
    for (const auto& t : mesh.triangles()) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace mvpose
