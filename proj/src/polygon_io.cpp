#include "bergman/error.hpp"
#include "bergman/geometry.hpp"

#include <fstream>
#include <sstream>

namespace bergman {

Polygon parse_polygon(std::string_view text) {
    std::vector<Point> pts;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string xs;
        std::string ys;
        std::string extra;
        if (!(fields >> xs)) {
            continue;
        }
        if (!(fields >> ys) || (fields >> extra)) {
            throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": expected `x y`");
        }
        try {
            pts.push_back({Real::from_string(xs, kGeometryBits), Real::from_string(ys, kGeometryBits)});
        } catch (const std::invalid_argument& e) {
            throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return Polygon::create(std::move(pts));
}

Polygon read_polygon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidInput, "cannot open polygon file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_polygon(buf.str());
}

std::string format_polygon(const Polygon& p, int digits) {
    std::string out;
    for (const auto& v : p.vertices()) {
        out += v.x.to_string(digits) + " " + v.y.to_string(digits) + "\n";
    }
    return out;
}

void write_polygon(const std::filesystem::path& path, const Polygon& p, int digits) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::InvalidInput, "cannot write polygon file " + path.string());
    }
    out << "# " << p.size() << " vertices, counterclockwise\n" << format_polygon(p, digits);
}

}  // namespace bergman
