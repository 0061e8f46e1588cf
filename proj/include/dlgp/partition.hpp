/*!
  \file partition.hpp
  \brief Depth-bounded levelized partitioning by dynamic programming

  Parts are runs of consecutive levels of depth at most `p`.  Minimizing the
  total cut weight over such runs is a shortest-path problem on the chain
  graph and is solved exactly in O(p * L).
*/

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chain.hpp"
#include "netlist.hpp"

namespace dlgp
{

/*! \brief Filled DP table, indexed by chain prefix length `i` in 1..L. */
struct dp_table
{
  /*! \brief `opt[i]`: minimal total cut weight of levels 1..i (`opt[0]` unused). */
  std::vector<uint64_t> opt;

  /*! \brief `choice[i]`: size of the last part in an optimal solution of 1..i. */
  std::vector<uint32_t> choice;

  uint32_t depth_bound{ 1 };

  uint32_t length() const { return static_cast<uint32_t>( opt.size() ) - 1u; }
};

/*! \brief Solves the chain partitioning problem for depth bound `p`.
 *
 * `opt[i] = 0` for `i <= p`; otherwise the minimum over `q` in 1..p of
 * `opt[i - q] + w(i - q)`, where `w(k)` is the weight of boundary `k`
 * separating chain nodes `k` and `k + 1`.  Ties prefer the largest `q`,
 * which yields the fewest parts.
 */
dp_table solve_dcgp( chain_graph const& chain, uint32_t p );

/*! \brief Recovers the selected cut levels m_1 < ... < m_{K-1}. */
std::vector<uint32_t> traceback( dp_table const& table, chain_graph const& chain );

/*! \brief Sum of boundary weights at the given cuts. */
uint64_t total_cut_weight( chain_graph const& chain, std::span<uint32_t const> cuts );

struct partition_solution
{
  /*! \brief Cut levels; part `i` ends at level `cuts[i]`. */
  std::vector<uint32_t> cuts;

  /*! \brief Node indices of each part, in increasing index order. */
  std::vector<std::vector<uint32_t>> parts;

  /*! \brief 0-based part index of every node. */
  std::vector<uint32_t> part_of;

  uint64_t tcw{ 0 };
  uint32_t depth_bound{ 0 };

  uint32_t part_count() const { return static_cast<uint32_t>( cuts.size() + 1 ); }
};

/*! \brief Splits the nodes by level at `cuts`.
 *
 * Leaves `tcw` and `depth_bound` at zero; `partition_netlist` fills them.
 * Throws `std::invalid_argument` for cuts that are not strictly increasing
 * within 1..L-1.
 */
partition_solution assign_parts( netlist const& ntk, level_map const& levels, std::span<uint32_t const> cuts );

struct partition_params
{
  uint32_t depth_bound{ 1 };
  chain_params chain;
};

/*! \brief Full pipeline: levelize, chain, DP, traceback, parts. */
partition_solution partition_netlist( netlist const& ntk, partition_params const& ps );

/*! \brief Same as `partition_netlist` with precomputed levels and chain. */
partition_solution partition_netlist( netlist const& ntk, level_map const& levels, chain_graph const& chain,
                                      uint32_t p );

/*! \brief Checks disjoint cover, consecutive levels and the depth bound.
 *
 * Returns a description of the first violation, if any.
 */
std::optional<std::string> check_partition( partition_solution const& sol, level_map const& levels, uint32_t p );

struct brute_force_result
{
  uint64_t tcw{ 0 };
  std::vector<uint32_t> cuts;
};

/*! \brief Enumerates every composition of the chain into runs of length <= p.
 *
 * Exhaustive; restricted to chains of at most 25 nodes.
 */
brute_force_result brute_force_partition( chain_graph const& chain, uint32_t p );

std::string partition_to_json( partition_solution const& sol, netlist const& ntk, int indent = 2 );

} // namespace dlgp
