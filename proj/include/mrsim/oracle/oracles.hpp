#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrsim/apps.hpp"
#include "mrsim/bsp.hpp"
#include "mrsim/crcw.hpp"
#include "mrsim/geometry.hpp"
#include "mrsim/indexing.hpp"

// Plain sequential implementations that share no code paths with the
// simulations they check.
namespace mrsim::oracle {

/// Runs supersteps directly over the machine state.
BspMachine interpret_bsp(const BspProgram& program, BspMachine machine, std::size_t T);

/// Executes PRAM steps; all reads see pre-step memory, colliding writes fold with f.
CrcwMachine interpret_crcw(const CrcwProgram& program, CrcwMachine machine, std::size_t T,
                           const SemigroupOp& f);

/// Inclusive prefix sums of weights taken in (leaf, tiebreak, input position) order.
std::vector<std::uint64_t> prefix_sums_in_leaf_order(const std::vector<WeightedInput>& inputs,
                                                     const std::vector<LeafAssignment>& assignment);

/// 1-based rank of each record in sorted order.
std::vector<std::uint64_t> ranks(const std::vector<SortRecord>& records);

/// Rank of each value with ties broken by the matching tiebreak entry.
std::vector<std::uint64_t> ranks(const std::vector<Word>& values, const std::vector<Word>& tiebreak);

std::vector<std::optional<Word>> successors(const std::vector<Word>& values);

std::map<std::string, std::uint64_t> word_counts(const std::vector<std::string>& document);

std::vector<Word> histogram(const std::vector<Word>& values, std::uint64_t buckets);

/// Graham scan around the lowest point, reported in the canonical HullOutput form.
HullOutput graham_scan(const std::vector<Point2D>& points);

}  // namespace mrsim::oracle
