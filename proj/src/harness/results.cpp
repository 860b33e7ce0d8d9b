#include "dtnattack/harness/results.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/text.hpp"
#include "dtnattack/genome/serialization.hpp"

namespace dtn::harness {

namespace {

constexpr std::string_view kHeader = "campaign,arm,repetition,generation,group_hash,group_size,fv,fp,bv,bp,f1,f2,ddrs";

bool plainField(std::string_view s) { return s.find_first_of(",\n\r\"") == std::string_view::npos; }

}  // namespace

Composition compositionOf(std::span<const genome::AttackerGenome> group) {
    Composition c;
    for (const auto& g : group) {
        const bool vehicle = genome::isVehicle(g.movement);
        if (g.logic == genome::AttackLogic::Flood)
            ++(vehicle ? c.fv : c.fp);
        else
            ++(vehicle ? c.bv : c.bp);
    }
    return c;
}

ResultRow makeRow(std::string campaign, std::string arm, int repetition, int generation,
                  std::span<const genome::AttackerGenome> group, const netsim::Evaluation& evaluation) {
    ResultRow r;
    r.campaign = std::move(campaign);
    r.arm = std::move(arm);
    r.repetition = repetition;
    r.generation = generation;
    r.groupHash = genome::hashHex(genome::canonicalHash(group));
    r.groupSize = static_cast<int>(group.size());
    r.composition = compositionOf(group);
    r.f1 = evaluation.fitness.f1;
    r.f2 = evaluation.fitness.f2;
    r.ddrs = evaluation.ddrs;
    return r;
}

std::string formatResultsCsv(std::span<const ResultRow> rows) {
    std::ostringstream out;
    out << kHeader << '\n';
    for (const auto& r : rows) {
        if (!plainField(r.campaign) || !plainField(r.arm) || !plainField(r.groupHash))
            throw ValidationError("result fields may not contain commas, quotes or newlines");
        out << r.campaign << ',' << r.arm << ',' << r.repetition << ',' << r.generation << ',' << r.groupHash << ','
            << r.groupSize << ',' << r.composition.fv << ',' << r.composition.fp << ',' << r.composition.bv << ','
            << r.composition.bp << ',' << formatDouble(r.f1) << ',' << formatDouble(r.f2) << ',';
        for (std::size_t i = 0; i < r.ddrs.size(); ++i) out << (i ? ";" : "") << formatDouble(r.ddrs[i]);
        out << '\n';
    }
    return out.str();
}

std::vector<ResultRow> parseResultsCsv(std::string_view csv) {
    std::vector<ResultRow> rows;
    int lineNo = 0;
    bool header = true;
    for (const auto& raw : split(csv, '\n')) {
        ++lineNo;
        const auto line = trim(raw);
        if (line.empty()) continue;
        if (header) {
            if (line != kHeader) throw ParseError("unexpected results header", lineNo);
            header = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 13) throw ParseError("expected 13 fields", lineNo);
        try {
            ResultRow r;
            r.campaign = f[0];
            r.arm = f[1];
            r.repetition = static_cast<int>(parseInt(f[2]));
            r.generation = static_cast<int>(parseInt(f[3]));
            r.groupHash = f[4];
            r.groupSize = static_cast<int>(parseInt(f[5]));
            r.composition = {static_cast<int>(parseInt(f[6])), static_cast<int>(parseInt(f[7])),
                             static_cast<int>(parseInt(f[8])), static_cast<int>(parseInt(f[9]))};
            r.f1 = parseDouble(f[10]);
            r.f2 = parseDouble(f[11]);
            if (!f[12].empty())
                for (const auto& d : split(f[12], ';')) r.ddrs.push_back(parseDouble(d));
            rows.push_back(std::move(r));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("bad number: ") + e.what(), lineNo);
        } catch (const std::out_of_range& e) {
            throw ParseError(std::string("number out of range: ") + e.what(), lineNo);
        }
    }
    if (header) throw ParseError("missing results header", 1);
    return rows;
}

std::vector<double> lowestF1(std::span<const ResultRow> rows, std::string_view arm, std::size_t count) {
    std::vector<double> v;
    for (const auto& r : rows)
        if (r.arm == arm) v.push_back(r.f1);
    std::stable_sort(v.begin(), v.end());
    if (v.size() > count) v.resize(count);
    return v;
}

TopGroupReport analyzeTopGroups(std::span<const ResultRow> rows, double tolerance) {
    if (rows.empty()) throw ValidationError("top-group analysis needs at least one evaluated group");
    if (!(tolerance >= 0.0)) throw ValidationError("tolerance must be >= 0");
    TopGroupReport rep;
    rep.tolerance = tolerance;
    rep.bestF1 = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.f1 < b.f1; })
                     ->f1;
    rep.threshold = rep.bestF1 * (1.0 + tolerance);
    std::set<std::string> seen;
    double sizes = 0.0;
    for (const auto& r : rows) {
        if (r.f1 > rep.threshold || !seen.insert(r.groupHash).second) continue;
        ++rep.groups;
        sizes += r.groupSize;
        rep.totals.fv += r.composition.fv;
        rep.totals.fp += r.composition.fp;
        rep.totals.bv += r.composition.bv;
        rep.totals.bp += r.composition.bp;
    }
    rep.meanSize = sizes / static_cast<double>(rep.groups);
    const double all = rep.totals.size();
    if (all > 0) {
        rep.percentFv = 100.0 * rep.totals.fv / all;
        rep.percentFp = 100.0 * rep.totals.fp / all;
        rep.percentBv = 100.0 * rep.totals.bv / all;
        rep.percentBp = 100.0 * rep.totals.bp / all;
    }
    return rep;
}

std::string formatTopGroupReport(const TopGroupReport& r) {
    std::ostringstream out;
    out << "selection: f1 <= best_f1 * (1 + tolerance)\n"
        << "best_f1 " << formatDouble(r.bestF1) << "\ntolerance " << formatDouble(r.tolerance) << "\nthreshold "
        << formatDouble(r.threshold) << "\ngroups " << r.groups << "\nmean_size " << formatDouble(r.meanSize)
        << "\nFV " << formatDouble(r.percentFv) << "\nFP " << formatDouble(r.percentFp) << "\nBV "
        << formatDouble(r.percentBv) << "\nBP " << formatDouble(r.percentBp) << '\n';
    return out.str();
}

}  // namespace dtn::harness
