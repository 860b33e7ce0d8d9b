#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "dtnattack/common/error.hpp"
#include "dtnattack/map/grid_city.hpp"
#include "dtnattack/map/grid_overlay.hpp"
#include "dtnattack/map/map_io.hpp"
#include "dtnattack/mobility/trajectory.hpp"

using namespace dtn;
using namespace dtn::map;
using namespace dtn::mobility;

namespace {

std::shared_ptr<const LayerGraph> graphOf(const CityMap& m, const LayerSet& layers) {
    return std::make_shared<const LayerGraph>(m, layers);
}

MovementClass fixedClass(double speed, double pause) {
    return {"pedestrian", {speed, speed}, {pause, pause}, false};
}

// Distance from (x, y) to the nearest segment of the given layers.
double offGraph(const CityMap& m, const LayerSet& layers, Position p) {
    double best = 1e18;
    for (const auto& l : m.layers()) {
        if (!layers.contains(l.id)) continue;
        for (const auto& s : l.segments) {
            const auto& a = m.point(s.a);
            const auto& b = m.point(s.b);
            const double dx = b.x - a.x, dy = b.y - a.y;
            const double len2 = dx * dx + dy * dy;
            double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            best = std::min(best, std::hypot(a.x + t * dx - p.x, a.y + t * dy - p.y));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("movement class validation") {
    CHECK_NOTHROW(pedestrianClass().validate());
    CHECK(pedestrianClass().speed.min == 0.5);
    CHECK(pedestrianClass().speed.max == 1.5);
    CHECK(carClass().pause.max == 120);
    CHECK_THROWS_AS((MovementClass{"x", {0.0, 1.0}, {0, 1}, false}.validate()), ValidationError);
    CHECK_THROWS_AS((MovementClass{"x", {2.0, 1.0}, {0, 1}, false}.validate()), ValidationError);
    CHECK_THROWS_AS((MovementClass{"x", {1.0, 1.0}, {5, 1}, false}.validate()), ValidationError);
}

TEST_CASE("honest waypoint with one eligible point") {
    const auto g = graphOf(loadMap("MAP t 10 10\nLAYER a pedestrian\nP 7 3 3\n"), {"a"});
    Rng rng(1);
    for (int i = 0; i < 50; ++i) CHECK(nextWaypointHonest(*g, 1.0, rng) == 7);
}

TEST_CASE("honest waypoints are uniform on a plain map") {
    // 10 points on a line.
    std::string doc = "MAP line 100 10\nLAYER s pedestrian\n";
    for (int i = 0; i < 10; ++i) doc += "P " + std::to_string(i) + " " + std::to_string(i * 10) + " 0\n";
    for (int i = 0; i + 1 < 10; ++i) doc += "S " + std::to_string(i) + " " + std::to_string(i + 1) + "\n";
    const auto m = loadMap(doc);
    const LayerGraph g(m, {"s"});
    Rng rng(5);
    std::map<PointId, int> counts;
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[nextWaypointHonest(g, m.specialPoiWeight(), rng)];
    double chi2 = 0.0;
    for (const auto& [id, c] : counts) {
        CHECK(c / double(n) == doctest::Approx(0.1).epsilon(0.1));
        chi2 += (c - n / 10.0) * (c - n / 10.0) / (n / 10.0);
    }
    CHECK(counts.size() == 10);
    CHECK(chi2 < 27.9);  // 9 dof, p = 0.001
}

TEST_CASE("special points are drawn in proportion to their weight") {
    std::string doc = "MAP line 100 10\nSPECIAL_WEIGHT 3\nLAYER s pedestrian\n";
    for (int i = 0; i < 10; ++i)
        doc += "P " + std::to_string(i) + " " + std::to_string(i * 10) + " 0" + (i == 4 ? " SPECIAL" : "") + "\n";
    for (int i = 0; i + 1 < 10; ++i) doc += "S " + std::to_string(i) + " " + std::to_string(i + 1) + "\n";
    const auto m = loadMap(doc);
    const LayerGraph g(m, {"s"});
    Rng rng(6);
    int special = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) special += nextWaypointHonest(g, m.specialPoiWeight(), rng) == 4;
    CHECK(std::abs(special / double(n) - 3.0 / 12.0) < 0.01);
}

TEST_CASE("attacker waypoints follow the genome's squares") {
    const auto m = loadMap(
        "MAP t 40 40\nLAYER s pedestrian\nP 1 1 1\nP 2 5 5\nP 3 35 35\nP 4 25 5\nS 1 2\nS 2 3\nS 3 4\n");
    const auto g = graphOf(m, {"s"});
    const auto idx = std::make_shared<const GridIndex>(*g, GridOverlay::over(m, 4, 4));

    SUBCASE("one square with one point") {
        genome::AttackerGenome gen{"pedestrian", genome::AttackLogic::BlackHole, {{3, 3}}};
        Rng rng(1);
        for (int i = 0; i < 20; ++i) CHECK(nextWaypointAttacker(gen, *g, *idx, rng) == 3);
    }
    SUBCASE("a square with two points visits both in order") {
        AttackerWaypoints w(idx, {{0, 0}});
        Rng rng(2);
        for (int i = 0; i < 10; ++i) {
            CHECK(g->id(w.next(rng)) == 1);
            CHECK(g->id(w.next(rng)) == 2);
        }
    }
    SUBCASE("a repeated square is drawn proportionally more often") {
        genome::AttackerGenome gen{"pedestrian", genome::AttackLogic::Flood, {{3, 3}, {3, 3}, {0, 2}}};
        Rng rng(3);
        int a = 0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) a += nextWaypointAttacker(gen, *g, *idx, rng) == 3;
        CHECK(std::abs(a / double(n) - 2.0 / 3.0) < 0.02);
    }
}

TEST_CASE("straight leg at fixed speed arrives on the expected tick") {
    const auto m = loadMap("MAP t 100 10\nLAYER s pedestrian\nP 0 0 0\nP 1 100 0\nS 0 1\n");
    const auto g = graphOf(m, {"s"});
    const auto idx = std::make_shared<const GridIndex>(*g, GridOverlay::over(m, 1, 2));
    Trajectory t(g, fixedClass(1.0, 120.0), AttackerWaypoints(idx, {{0, 1}}), Rng(1), 0);
    for (int tick = 1; tick < 100; ++tick) {
        const auto p = t.advance(1.0);
        CHECK(p.x == doctest::Approx(tick));
    }
    CHECK(t.advance(1.0).x == doctest::Approx(100.0));
    // Then a 120 s pause in place.
    for (int tick = 0; tick < 120; ++tick) CHECK(t.advance(1.0) == Position{100.0, 0.0});
}

TEST_CASE("arrival time matches length over speed") {
    Rng draws(11);
    for (int trial = 0; trial < 50; ++trial) {
        const double length = draws.uniform(5.0, 500.0);
        const double speed = draws.uniform(0.5, 14.0);
        const auto m = loadMap("MAP t 600 10\nLAYER s pedestrian\nP 0 0 0\nP 1 " + std::to_string(length) +
                               " 0\nS 0 1\n");
        const auto g = graphOf(m, {"s"});
        const auto idx = std::make_shared<const GridIndex>(*g, GridOverlay::over(m, 1, 1));
        // The single cell holds both points; starting at 1, the first
        // destination is point 0.
        Trajectory t(g, fixedClass(speed, 1000.0), AttackerWaypoints(idx, {{0, 0}}), Rng(trial), 1);
        const double exact = m.point(1).x / speed;
        int tick = 0;
        while (t.position().x > 1e-9) {
            t.advance(1.0);
            ++tick;
        }
        CHECK(tick >= exact - 1e-9);
        CHECK(tick < exact + 1.0);
    }
}

TEST_CASE("trajectories stay on the graph within the speed bound") {
    GridCityLayers layers;
    layers.walkways = true;
    const auto m = generateGridCity(8, 30, layers);
    for (const auto& [cls, name] : {std::pair{pedestrianClass(), "pedestrian"}, std::pair{carClass(), "car"}}) {
        const auto ls = m.layersFor(name);
        const auto g = graphOf(m, ls);
        Trajectory t(g, cls, HonestWaypoints(g, 1.0), Rng(deriveSeed(3, 1)));
        auto prev = t.position();
        for (int i = 0; i < 3000; ++i) {
            const auto p = t.advance(1.0);
            CHECK(offGraph(m, ls, p) < 1e-6);
            CHECK(std::hypot(p.x - prev.x, p.y - prev.y) <= cls.speed.max * 1.0 + 1e-9);
            prev = p;
        }
    }
}

TEST_CASE("trajectories are deterministic given the seed") {
    const auto m = generateGridCity(6, 40);
    const auto g = graphOf(m, {"streets"});
    Trajectory a(g, carClass(), HonestWaypoints(g, 1.0), Rng(99));
    Trajectory b(g, carClass(), HonestWaypoints(g, 1.0), Rng(99));
    for (int i = 0; i < 2000; ++i) CHECK(a.advance(1.0) == b.advance(1.0));
}
