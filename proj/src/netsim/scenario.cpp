#include "dtnattack/netsim/scenario.hpp"

#include <algorithm>
#include <filesystem>

#include <json.hpp>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/text.hpp"
#include "dtnattack/map/grid_city.hpp"
#include "dtnattack/map/map_io.hpp"
#include "dtnattack/netsim/replay.hpp"

namespace dtn::netsim {

void ScenarioParams::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw ValidationError(std::string(what) + " must be positive");
    };
    positive(duration, "duration");
    positive(tick, "tick");
    positive(ttl, "ttl");
    positive(honestInterval, "honest injection interval");
    positive(flooderInterval, "flooder injection interval");
    positive(honestSize, "honest message size");
    positive(floodSize, "flood message size");
    positive(pedestrianBuffer, "pedestrian buffer");
    positive(vehicleBuffer, "vehicle buffer");
    if (!(warmup >= 0.0)) throw ValidationError("warmup must be non-negative");
    if (gridRows < 1 || gridCols < 1) throw ValidationError("grid overlay needs positive rows and cols");
    if (interfaces.empty() || interfaces.size() > static_cast<std::size_t>(kMaxInterfaces))
        throw ValidationError("need 1 to 4 radio interfaces");
    for (const auto& i : interfaces)
        if (!(i.range > 0.0) || !(i.bandwidth > 0.0))
            throw ValidationError("interface " + i.name + " needs positive range and bandwidth");
    for (const auto& c : classes) c.validate();
    int total = 0;
    for (const auto& h : honest) {
        if (h.count < 0) throw ValidationError("negative census for " + h.movementClass);
        total += h.count;
    }
    if (total < 2) throw ValidationError("need at least 2 honest nodes");
}

Scenario::Scenario(std::shared_ptr<const map::CityMap> cityMap, ScenarioParams params)
    : map_(std::move(cityMap)),
      params_(std::move(params)),
      overlay_(map::GridOverlay::over(*map_, params_.gridRows, params_.gridCols)) {
    params_.validate();
    for (const auto& cls : params_.classes) {
        const auto layers = map_->layersFor(cls.name);
        if (layers.empty()) continue;
        auto graph = std::make_shared<const map::LayerGraph>(*map_, layers);
        auto index = std::make_shared<const map::GridIndex>(*graph, overlay_);
        classes_.emplace(cls.name, ClassWorld{cls, std::move(graph), std::move(index)});
    }
    for (const auto& h : params_.honest)
        if (h.count > 0) (void)world(h.movementClass);
}

const Scenario::ClassWorld& Scenario::world(const std::string& name) const {
    const auto it = classes_.find(name);
    if (it == classes_.end())
        throw ValidationError("movement class '" + name + "' is undefined or has no layer on map " + map_->name());
    return it->second;
}

const mobility::MovementClass& Scenario::movementClass(const std::string& name) const { return world(name).cls; }

std::shared_ptr<const map::LayerGraph> Scenario::graphFor(const std::string& name) const {
    return world(name).graph;
}

std::shared_ptr<const map::GridIndex> Scenario::gridIndexFor(const std::string& name) const {
    return world(name).index;
}

int Scenario::honestCount() const {
    int total = 0;
    for (const auto& h : params_.honest) total += h.count;
    return total;
}

std::vector<std::string> Scenario::attackerClasses() const {
    std::vector<std::string> names;
    for (const auto& cls : params_.classes)
        if (classes_.contains(cls.name)) names.push_back(cls.name);
    return names;
}

genome::GenomeSpace Scenario::genomeSpace(int minPois, int maxPois) const {
    genome::GenomeSpace space;
    space.movementClasses = attackerClasses();
    space.rows = params_.gridRows;
    space.cols = params_.gridCols;
    space.minPois = minPois;
    space.maxPois = maxPois;
    space.validateSelf();
    return space;
}

std::vector<InterfaceId> Scenario::interfacesFor(const mobility::MovementClass& cls) const {
    std::vector<InterfaceId> ids;
    for (std::size_t i = 0; i < params_.interfaces.size(); ++i)
        if (cls.vehicle || !params_.interfaces[i].vehicleOnly) ids.push_back(static_cast<InterfaceId>(i));
    return ids;
}

double Scenario::bufferFor(const mobility::MovementClass& cls) const {
    return cls.vehicle ? params_.vehicleBuffer : params_.pedestrianBuffer;
}

std::shared_ptr<const HonestReplay> Scenario::honestReplay(std::uint64_t seed) const {
    {
        std::lock_guard lock(replayMutex_);
        for (const auto& [s, r] : replays_)
            if (s == seed) return r;
    }
    // Built outside the lock; a concurrent duplicate build yields the same data.
    auto built = std::make_shared<const HonestReplay>(buildHonestReplay(*this, seed));
    std::lock_guard lock(replayMutex_);
    for (const auto& [s, r] : replays_)
        if (s == seed) return r;
    replays_.emplace_back(seed, built);
    if (replays_.size() > kReplayCacheSize) replays_.pop_front();
    return built;
}

namespace {

using nlohmann::json;

template <typename T>
void readOptional(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

mobility::Range readRange(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("range must be a [min, max] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::shared_ptr<const map::CityMap> readMap(const json& j, const std::string& baseDir) {
    if (j.contains("file")) {
        std::filesystem::path p(j.at("file").get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(baseDir) / p;
        return std::make_shared<const map::CityMap>(map::loadMapFile(p.string()));
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        map::GridCityLayers layers;
        readOptional(g, "walkways", layers.walkways);
        readOptional(g, "vehicle_class", layers.vehicleClass);
        readOptional(g, "diagonal_stride", layers.diagonalStride);
        readOptional(g, "special_points", layers.specialPoints);
        readOptional(g, "special_weight", layers.specialWeight);
        return std::make_shared<const map::CityMap>(
            map::generateGridCity(g.at("n").get<int>(), g.at("spacing").get<double>(), layers));
    }
    throw ValidationError("scenario map needs either \"file\" or \"grid\"");
}

}  // namespace

std::shared_ptr<const Scenario> parseScenario(const std::string& text, const std::string& baseDir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what(), 0);
    }
    try {
        ScenarioParams p;
        if (j.contains("grid")) {
            readOptional(j["grid"], "rows", p.gridRows);
            readOptional(j["grid"], "cols", p.gridCols);
        }
        if (j.contains("honest")) {
            p.honest.clear();
            for (const auto& [name, count] : j["honest"].items()) p.honest.push_back({name, count.get<int>()});
        }
        if (j.contains("classes")) {
            for (const auto& c : j["classes"]) {
                mobility::MovementClass cls{c.at("name").get<std::string>(), readRange(c.at("speed")),
                                            readRange(c.at("pause")), c.value("vehicle", false)};
                auto same = std::find_if(p.classes.begin(), p.classes.end(),
                                         [&](const auto& x) { return x.name == cls.name; });
                if (same != p.classes.end())
                    *same = cls;
                else
                    p.classes.push_back(cls);
            }
        }
        readOptional(j, "duration", p.duration);
        readOptional(j, "warmup", p.warmup);
        readOptional(j, "tick", p.tick);
        readOptional(j, "ttl", p.ttl);
        readOptional(j, "seed", p.seed);
        if (j.contains("traffic")) {
            const auto& t = j["traffic"];
            readOptional(t, "honest_interval", p.honestInterval);
            readOptional(t, "flooder_interval", p.flooderInterval);
            readOptional(t, "honest_size", p.honestSize);
            readOptional(t, "flood_size", p.floodSize);
        }
        if (j.contains("buffers")) {
            readOptional(j["buffers"], "pedestrian", p.pedestrianBuffer);
            readOptional(j["buffers"], "vehicle", p.vehicleBuffer);
        }
        if (!j.contains("map")) throw ValidationError("scenario needs a \"map\" entry");
        return std::make_shared<const Scenario>(readMap(j["map"], baseDir), std::move(p));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("scenario: ") + e.what());
    }
}

std::shared_ptr<const Scenario> loadScenario(const std::string& path) {
    const auto dir = std::filesystem::path(path).parent_path().string();
    return parseScenario(readFile(path), dir.empty() ? "." : dir);
}

}  // namespace dtn::netsim
