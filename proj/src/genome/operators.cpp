#include "dtnattack/genome/operators.hpp"

#include <algorithm>

#include "dtnattack/common/error.hpp"

namespace dtn::genome {

namespace {

using Cells = std::vector<GridCell>;

Cells concat(const Cells& head, std::size_t headEnd, const Cells& tail, std::size_t tailBegin) {
    Cells out(head.begin(), head.begin() + static_cast<std::ptrdiff_t>(headEnd));
    out.insert(out.end(), tail.begin() + static_cast<std::ptrdiff_t>(tailBegin), tail.end());
    return out;
}

std::pair<std::size_t, std::size_t> randomSlice(std::size_t length, Rng& rng) {
    auto s = static_cast<std::size_t>(rng.below(length + 1));
    auto e = static_cast<std::size_t>(rng.below(length + 1));
    if (s > e) std::swap(s, e);
    return {s, e};
}

template <typename Step>
MutationResult repeatWhile(const AttackerGenome& g, Rng& rng, double strength, Step step) {
    MutationResult result{g, 0};
    do {
        step(result.genome);
        ++result.applications;
    } while (rng.uniform() < strength);
    return result;
}

}  // namespace

int clampLength(AttackerGenome& g, const GenomeSpace& space, Rng& rng) {
    int repairs = 0;
    while (static_cast<int>(g.pois.size()) > space.maxPois) {
        g.pois.erase(g.pois.begin() + static_cast<std::ptrdiff_t>(rng.below(g.pois.size())));
        ++repairs;
    }
    while (static_cast<int>(g.pois.size()) < space.minPois) {
        g.pois.push_back(space.randomCell(rng));
        ++repairs;
    }
    return repairs;
}

CrossoverResult onePointImpreciseCrossoverAt(const AttackerGenome& a, const AttackerGenome& b, std::size_t cutA,
                                             std::size_t cutB, const GenomeSpace& space, Rng& rng) {
    if (cutA > a.pois.size() || cutB > b.pois.size()) throw ValidationError("crossover cut beyond genome end");
    CrossoverResult r{{a.movement, a.logic, concat(a.pois, cutA, b.pois, cutB)},
                      {b.movement, b.logic, concat(b.pois, cutB, a.pois, cutA)},
                      0};
    r.repairs = clampLength(r.first, space, rng) + clampLength(r.second, space, rng);
    return r;
}

CrossoverResult onePointImpreciseCrossover(const AttackerGenome& a, const AttackerGenome& b,
                                           const GenomeSpace& space, Rng& rng) {
    const auto cutA = static_cast<std::size_t>(rng.below(a.pois.size() + 1));
    const auto cutB = static_cast<std::size_t>(rng.below(b.pois.size() + 1));
    return onePointImpreciseCrossoverAt(a, b, cutA, cutB, space, rng);
}

CrossoverResult twoPointImpreciseCrossoverAt(const AttackerGenome& a, const AttackerGenome& b,
                                             std::pair<std::size_t, std::size_t> sliceA,
                                             std::pair<std::size_t, std::size_t> sliceB,
                                             const GenomeSpace& space, Rng& rng) {
    const auto [sa, ea] = sliceA;
    const auto [sb, eb] = sliceB;
    if (sa > ea || ea > a.pois.size() || sb > eb || eb > b.pois.size())
        throw ValidationError("crossover slice outside genome");
    auto build = [](const Cells& outer, std::size_t s, std::size_t e, const Cells& inner, std::size_t is,
                    std::size_t ie) {
        Cells out(outer.begin(), outer.begin() + static_cast<std::ptrdiff_t>(s));
        out.insert(out.end(), inner.begin() + static_cast<std::ptrdiff_t>(is),
                   inner.begin() + static_cast<std::ptrdiff_t>(ie));
        out.insert(out.end(), outer.begin() + static_cast<std::ptrdiff_t>(e), outer.end());
        return out;
    };
    CrossoverResult r{{a.movement, a.logic, build(a.pois, sa, ea, b.pois, sb, eb)},
                      {b.movement, b.logic, build(b.pois, sb, eb, a.pois, sa, ea)},
                      0};
    r.repairs = clampLength(r.first, space, rng) + clampLength(r.second, space, rng);
    return r;
}

CrossoverResult twoPointImpreciseCrossover(const AttackerGenome& a, const AttackerGenome& b,
                                           const GenomeSpace& space, Rng& rng) {
    const auto sliceA = randomSlice(a.pois.size(), rng);
    const auto sliceB = randomSlice(b.pois.size(), rng);
    return twoPointImpreciseCrossoverAt(a, b, sliceA, sliceB, space, rng);
}

std::size_t alterableSlotCount(const AttackerGenome& g) { return 2 * g.pois.size() + 2; }

MutationResult singleParameterAlterationMutation(const AttackerGenome& g, const GenomeSpace& space, Rng& rng,
                                                 double strength) {
    // Draws uniformly from [0, n) excluding `current`, or keeps it if n == 1.
    auto redraw = [&rng](int current, int n) {
        if (n <= 1) return current;
        const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        return v >= current ? v + 1 : v;
    };
    return repeatWhile(g, rng, strength, [&](AttackerGenome& x) {
        const std::size_t slot = rng.below(alterableSlotCount(x));
        const std::size_t cellSlots = 2 * x.pois.size();
        if (slot < cellSlots) {
            auto& cell = x.pois[slot / 2];
            if (slot % 2 == 0)
                cell.row = redraw(cell.row, space.rows);
            else
                cell.col = redraw(cell.col, space.cols);
        } else if (slot == cellSlots) {
            const auto& classes = space.movementClasses;
            const auto at = std::find(classes.begin(), classes.end(), x.movement) - classes.begin();
            const int pick = redraw(static_cast<int>(at), static_cast<int>(classes.size()));
            if (pick < static_cast<int>(classes.size())) x.movement = classes[static_cast<std::size_t>(pick)];
        } else {
            const auto& logics = space.logics;
            const auto at = std::find(logics.begin(), logics.end(), x.logic) - logics.begin();
            const int pick = redraw(static_cast<int>(at), static_cast<int>(logics.size()));
            if (pick < static_cast<int>(logics.size())) x.logic = logics[static_cast<std::size_t>(pick)];
        }
    });
}

MutationResult insertionMutation(const AttackerGenome& g, const GenomeSpace& space, Rng& rng, double strength) {
    return repeatWhile(g, rng, strength, [&](AttackerGenome& x) {
        if (static_cast<int>(x.pois.size()) >= space.maxPois) return;
        const auto at = static_cast<std::ptrdiff_t>(rng.below(x.pois.size() + 1));
        x.pois.insert(x.pois.begin() + at, space.randomCell(rng));
    });
}

MutationResult removalMutation(const AttackerGenome& g, const GenomeSpace& space, Rng& rng, double strength) {
    return repeatWhile(g, rng, strength, [&](AttackerGenome& x) {
        if (static_cast<int>(x.pois.size()) <= std::max(1, space.minPois)) return;
        x.pois.erase(x.pois.begin() + static_cast<std::ptrdiff_t>(rng.below(x.pois.size())));
    });
}

MutationResult replacementMutation(const AttackerGenome& g, const GenomeSpace& space, Rng& rng, double strength) {
    return repeatWhile(g, rng, strength, [&](AttackerGenome& x) {
        x.pois[rng.below(x.pois.size())] = space.randomCell(rng);
    });
}

}  // namespace dtn::genome
