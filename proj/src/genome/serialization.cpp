#include "dtnattack/genome/serialization.hpp"

#include <algorithm>
#include <cstdio>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/text.hpp"

namespace dtn::genome {

std::string formatGenome(const AttackerGenome& g) {
    std::string out = "Mov=" + g.movement + "\nAttack=" + std::string(toString(g.logic)) + "\n";
    for (const auto& c : g.pois) out += std::to_string(c.row) + "," + std::to_string(c.col) + "\n";
    return out;
}

std::string formatGroup(std::span<const AttackerGenome> members) {
    std::string out;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0) out += "\n";
        out += formatGenome(members[i]);
    }
    return out;
}

namespace {

struct Line {
    std::string_view text;
    int number;
};

AttackerGenome parseBlock(std::span<const Line> lines) {
    if (lines.size() < 3) throw ParseError("attacker block needs Mov=, Attack= and at least one POI", lines.empty() ? 0 : lines.front().number);
    AttackerGenome g;
    if (!lines[0].text.starts_with("Mov=")) throw ParseError("expected Mov=<class>", lines[0].number);
    g.movement = std::string(lines[0].text.substr(4));
    if (g.movement.empty()) throw ParseError("empty movement class", lines[0].number);
    if (!lines[1].text.starts_with("Attack=")) throw ParseError("expected Attack=<logic>", lines[1].number);
    try {
        g.logic = parseAttackLogic(lines[1].text.substr(7));
    } catch (const ParseError& e) {
        throw ParseError(e.what(), lines[1].number);
    }
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto parts = split(lines[i].text, ',');
        if (parts.size() != 2) throw ParseError("expected <row>,<col>", lines[i].number);
        try {
            g.pois.push_back({static_cast<int>(parseInt(trim(parts[0]))), static_cast<int>(parseInt(trim(parts[1])))});
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lines[i].number);
        }
    }
    return g;
}

}  // namespace

std::vector<AttackerGenome> parseGroup(std::string_view text) {
    std::vector<AttackerGenome> members;
    std::vector<Line> block;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const auto raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++number;
        const auto line = trim(raw);
        if (line.empty()) {
            if (!block.empty()) members.push_back(parseBlock(block));
            block.clear();
            continue;
        }
        block.push_back({line, number});
    }
    if (!block.empty()) members.push_back(parseBlock(block));
    return members;
}

AttackerGenome parseGenome(std::string_view text) {
    auto members = parseGroup(text);
    if (members.size() != 1) throw ParseError("expected exactly one attacker block", 0);
    return std::move(members.front());
}

std::string canonicalForm(std::span<const AttackerGenome> members) {
    std::vector<std::string> blocks;
    blocks.reserve(members.size());
    for (const auto& m : members) blocks.push_back(formatGenome(m));
    std::sort(blocks.begin(), blocks.end());
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i > 0) out += "\n";
        out += blocks[i];
    }
    return out;
}

std::uint64_t canonicalHash(std::span<const AttackerGenome> members) {
    const auto text = canonicalForm(members);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

std::string hashHex(std::uint64_t hash) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace dtn::genome
