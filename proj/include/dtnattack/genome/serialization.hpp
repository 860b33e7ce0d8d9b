#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtnattack/genome/attacker_genome.hpp"

namespace dtn::genome {

// Text interchange format, one block per attacker:
//
//     Mov=car
//     Attack=black_hole
//     94,39
//     55,84
//
// A group is its members' blocks separated by a blank line.

std::string formatGenome(const AttackerGenome& g);
std::string formatGroup(std::span<const AttackerGenome> members);

/// Throws ParseError with the offending line number.
AttackerGenome parseGenome(std::string_view text);
std::vector<AttackerGenome> parseGroup(std::string_view text);

/// Member-order independent text form: member blocks sorted, then joined.
std::string canonicalForm(std::span<const AttackerGenome> members);

/// 64-bit digest of the canonical form (FNV-1a with a final avalanche),
/// stable across processes and platforms.
std::uint64_t canonicalHash(std::span<const AttackerGenome> members);
std::string hashHex(std::uint64_t hash);

}  // namespace dtn::genome
