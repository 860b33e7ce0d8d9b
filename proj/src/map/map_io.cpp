#include "dtnattack/map/map_io.hpp"

#include <map>
#include <sstream>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/text.hpp"

namespace dtn::map {

namespace {

double number(std::string_view token, int line) {
    try {
        return parseDouble(token);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line);
    }
}

PointId pointId(std::string_view token, int line) {
    try {
        return parseInt(token);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line);
    }
}

}  // namespace

CityMap loadMap(std::string_view document) {
    std::string name;
    double width = 0.0;
    double height = 0.0;
    double specialWeight = 1.0;
    bool haveHeader = false;
    std::vector<MapLayer> layers;
    std::map<PointId, MapPoint> points;

    int lineNo = 0;
    std::size_t pos = 0;
    while (pos <= document.size()) {
        const std::size_t eol = document.find('\n', pos);
        std::string_view line =
            document.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? document.size() + 1 : eol + 1;
        ++lineNo;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tok = splitWhitespace(line);
        if (tok.empty()) continue;
        const std::string_view kind = tok[0];

        if (kind == "MAP") {
            if (haveHeader) throw ParseError("duplicate MAP header", lineNo);
            if (tok.size() != 4) throw ParseError("expected: MAP <name> <width> <height>", lineNo);
            name = std::string(tok[1]);
            width = number(tok[2], lineNo);
            height = number(tok[3], lineNo);
            haveHeader = true;
            continue;
        }
        if (!haveHeader) throw ParseError("document must start with a MAP header", lineNo);

        if (kind == "SPECIAL_WEIGHT") {
            if (tok.size() != 2) throw ParseError("expected: SPECIAL_WEIGHT <w>", lineNo);
            specialWeight = number(tok[1], lineNo);
        } else if (kind == "LAYER") {
            if (tok.size() != 3) throw ParseError("expected: LAYER <id> <movement-class,...>", lineNo);
            MapLayer layer;
            layer.id = std::string(tok[1]);
            for (auto& cls : split(tok[2], ',')) {
                if (cls.empty()) throw ParseError("empty movement class", lineNo);
                layer.accessibleBy.insert(cls);
            }
            for (const auto& l : layers)
                if (l.id == layer.id) throw ParseError("duplicate layer " + layer.id, lineNo);
            layers.push_back(std::move(layer));
        } else if (kind == "P") {
            if (layers.empty()) throw ParseError("point outside a LAYER section", lineNo);
            if (tok.size() != 4 && tok.size() != 5)
                throw ParseError("expected: P <id> <x> <y> [SPECIAL]", lineNo);
            if (tok.size() == 5 && tok[4] != "SPECIAL")
                throw ParseError("unknown point flag '" + std::string(tok[4]) + "'", lineNo);
            const PointId id = pointId(tok[1], lineNo);
            const double x = number(tok[2], lineNo);
            const double y = number(tok[3], lineNo);
            auto [it, fresh] = points.try_emplace(id);
            MapPoint& p = it->second;
            if (fresh) {
                p.id = id;
                p.x = x;
                p.y = y;
            } else if (p.x != x || p.y != y) {
                throw ValidationError("inconsistent point coordinates for point " + std::to_string(id));
            }
            p.layers.insert(layers.back().id);
            p.special = p.special || tok.size() == 5;
        } else if (kind == "S") {
            if (layers.empty()) throw ParseError("segment outside a LAYER section", lineNo);
            if (tok.size() != 3) throw ParseError("expected: S <id1> <id2>", lineNo);
            layers.back().segments.push_back(
                Segment{pointId(tok[1], lineNo), pointId(tok[2], lineNo), 0.0});
        } else {
            throw ParseError("unknown directive '" + std::string(kind) + "'", lineNo);
        }
    }
    if (!haveHeader) throw ParseError("missing MAP header", 0);

    std::vector<MapPoint> flat;
    flat.reserve(points.size());
    for (auto& [id, p] : points) flat.push_back(std::move(p));
    return CityMap(std::move(name), width, height, std::move(flat), std::move(layers), specialWeight);
}

CityMap loadMapFile(const std::string& path) { return loadMap(readFile(path)); }

std::string saveMap(const CityMap& map) {
    std::ostringstream out;
    out << "MAP " << map.name() << ' ' << formatDouble(map.width()) << ' '
        << formatDouble(map.height()) << '\n';
    if (map.specialPoiWeight() != 1.0)
        out << "SPECIAL_WEIGHT " << formatDouble(map.specialPoiWeight()) << '\n';
    for (const auto& layer : map.layers()) {
        out << "LAYER " << layer.id << ' ';
        bool first = true;
        for (const auto& cls : layer.accessibleBy) {
            out << (first ? "" : ",") << cls;
            first = false;
        }
        out << '\n';
        for (const auto& p : map.points()) {
            if (!p.layers.contains(layer.id)) continue;
            out << "P " << p.id << ' ' << formatDouble(p.x) << ' ' << formatDouble(p.y)
                << (p.special ? " SPECIAL" : "") << '\n';
        }
        for (const auto& s : layer.segments) out << "S " << s.a << ' ' << s.b << '\n';
    }
    return out.str();
}

}  // namespace dtn::map
