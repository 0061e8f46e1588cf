/*!
  \file chain.hpp
  \brief Reduction of a levelized netlist to a weighted chain graph

  Chain node `k` stands for all gates of level `k`.  The weight of the chain
  edge between nodes `k` and `k + 1` counts how much of the netlist crosses
  that level boundary, so cutting the chain there costs exactly that much.
*/

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "netlist.hpp"

namespace dlgp
{

/*! \brief How crossings are counted at a level boundary. */
enum class weight_mode : uint8_t
{
  /*! every gate fanin edge crossing the boundary counts once */
  edge,
  /*! a net crossing the boundary counts once, however many sinks it has */
  hyperedge
};

std::string_view to_string( weight_mode mode );
weight_mode weight_mode_from_string( std::string_view text );

struct chain_graph
{
  /*! \brief Number of chain nodes (the netlist depth). */
  uint32_t length{ 1 };

  /*! \brief `boundary_weights[k - 1]` is the weight between nodes `k` and `k + 1`. */
  std::vector<uint64_t> boundary_weights;

  weight_mode mode{ weight_mode::hyperedge };

  /*! \brief Builds a chain directly from weights, validating the size. */
  static chain_graph from_weights( std::vector<uint64_t> weights, weight_mode mode = weight_mode::hyperedge );
};

struct chain_params
{
  weight_mode mode{ weight_mode::hyperedge };

  /*! \brief Count nets driven by primary inputs (level 0). */
  bool include_input_nets{ false };
};

/*! \brief Accumulates crossing counts with a difference array in O(|V| + |E| + L). */
chain_graph build_chain_graph( netlist const& ntk, level_map const& levels, chain_params const& ps = {} );

/*! \brief Weight of boundary `k` (1-based, between chain nodes `k` and `k + 1`).
 *
 * The chain only has edges between consecutive nodes, so the cut weight of
 * the separator at `k` is this single edge weight.  Throws
 * `std::out_of_range` unless `1 <= k < length`.
 */
uint64_t cut_weight( chain_graph const& chain, uint32_t k );

std::string chain_to_json( chain_graph const& chain, int indent = -1 );
chain_graph chain_from_json( std::string_view text );

} // namespace dlgp
