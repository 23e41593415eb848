#pragma once

#include "freelat/conereduce.hpp"
#include "freelat/subshift.hpp"
#include "freelat/weights.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace freelat::testing {

/// Random edge set on n vertices, closed under reversal.
ConstraintGraph random_graph(std::mt19937_64& rng, std::size_t vertices, std::size_t rank,
                             double density);

/// Plain loop over vertices, pairs and letters; shares no code with check_weight.
bool weight_equations_hold(const ConstraintGraph& g, const Weight& w);

/// Orbit of `point` under the group generated by the given maps, by BFS on ints.
std::size_t orbit_size(const std::vector<std::vector<std::uint32_t>>& generators, std::uint32_t point);

/// Smallest N such that target lies in the cone of generators[0..N), found by
/// enumerating linearly independent subsets (Caratheodory) with exact Gaussian
/// elimination. nullopt when even the full list fails.
std::optional<std::size_t> min_prefix_by_scan(const RationalVector& target,
                                              const std::vector<RationalVector>& generators);

/// Vertex and edge frequencies of the uniform measure on the carrier orbit of
/// the basepoint, counted directly.
Weight orbit_measure_weight(const PeriodicTreequence& p, const GeneratorSet& gens);

/// Component patterns z of the uniform orbit measure relative to A, each with
/// W_z, and the list is in order of first appearance. nullopt when some
/// component is infinite (or larger than max_component).
std::optional<std::vector<PatternWeight>> component_pattern_weights(const ConstraintGraph& g,
                                                                    const PeriodicTreequence& p,
                                                                    const std::set<VertexId>& a,
                                                                    std::size_t max_component = 64);

}  // namespace freelat::testing
