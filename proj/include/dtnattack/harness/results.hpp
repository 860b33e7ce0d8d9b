#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtnattack/evolution/evaluation.hpp"

namespace dtn::harness {

/// Attacker counts by type: flooding/black-hole x vehicle/pedestrian.
struct Composition {
    int fv = 0;
    int fp = 0;
    int bv = 0;
    int bp = 0;
    int size() const { return fv + fp + bv + bp; }
    bool operator==(const Composition&) const = default;
};

Composition compositionOf(std::span<const genome::AttackerGenome> group);

/// One evaluated group of a campaign.
struct ResultRow {
    std::string campaign;
    std::string arm;  // ge | classical | random | greedy
    int repetition = 0;
    int generation = 0;
    std::string groupHash;
    int groupSize = 0;
    Composition composition;
    double f1 = 0.0;
    double f2 = 0.0;
    std::vector<double> ddrs;  // per evaluation seed
    bool operator==(const ResultRow&) const = default;
};

ResultRow makeRow(std::string campaign, std::string arm, int repetition, int generation,
                  std::span<const genome::AttackerGenome> group, const netsim::Evaluation& evaluation);

/// Header line plus one line per row; per-seed DDRs are ';'-separated in the
/// last column. Doubles use shortest round-trip text.
std::string formatResultsCsv(std::span<const ResultRow> rows);
/// Throws ParseError on malformed input.
std::vector<ResultRow> parseResultsCsv(std::string_view csv);

/// The `count` lowest-f1 rows of one arm pooled over repetitions (all rows
/// if fewer). Ties keep input order.
std::vector<double> lowestF1(std::span<const ResultRow> rows, std::string_view arm, std::size_t count = 150);

/// Groups whose f1 is within a relative tolerance of the best:
/// f1 <= bestF1 * (1 + tolerance). Rows with the same group hash count once.
struct TopGroupReport {
    double bestF1 = 0.0;
    double tolerance = 0.0;
    double threshold = 0.0;
    std::size_t groups = 0;
    double meanSize = 0.0;
    Composition totals;
    double percentFv = 0.0;
    double percentFp = 0.0;
    double percentBv = 0.0;
    double percentBp = 0.0;
};

TopGroupReport analyzeTopGroups(std::span<const ResultRow> rows, double tolerance = 0.02);
std::string formatTopGroupReport(const TopGroupReport& report);

}  // namespace dtn::harness
