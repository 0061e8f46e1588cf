#include <dlgp/partition.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace dlgp
{

dp_table solve_dcgp( chain_graph const& chain, uint32_t p )
{
  if ( p < 1 )
    throw std::invalid_argument( "depth bound must be at least 1" );

  auto const L = chain.length;
  dp_table t;
  t.depth_bound = p;
  t.opt.assign( L + 1, 0 );
  t.choice.assign( L + 1, 0 );

  for ( auto i = 1u; i <= L; ++i )
  {
    if ( i <= p )
    {
      t.choice[i] = i;
      continue;
    }
    auto best = std::numeric_limits<uint64_t>::max();
    uint32_t best_q = 0;
    /* descending q so that ties keep the largest last part */
    for ( auto q = p; q >= 1; --q )
    {
      auto const value = t.opt[i - q] + chain.boundary_weights[i - q - 1];
      if ( value < best )
      {
        best = value;
        best_q = q;
      }
    }
    t.opt[i] = best;
    t.choice[i] = best_q;
  }
  return t;
}

std::vector<uint32_t> traceback( dp_table const& table, chain_graph const& chain )
{
  if ( table.length() != chain.length )
    throw std::invalid_argument( "DP table was solved for a different chain" );

  std::vector<uint32_t> cuts;
  auto i = chain.length;
  while ( i > table.depth_bound )
  {
    i -= table.choice[i];
    cuts.push_back( i );
  }
  std::reverse( cuts.begin(), cuts.end() );
  return cuts;
}

uint64_t total_cut_weight( chain_graph const& chain, std::span<uint32_t const> cuts )
{
  uint64_t sum = 0;
  for ( auto k : cuts )
    sum += cut_weight( chain, k );
  return sum;
}

partition_solution assign_parts( netlist const& ntk, level_map const& levels, std::span<uint32_t const> cuts )
{
  for ( auto i = 0u; i < cuts.size(); ++i )
  {
    if ( cuts[i] < 1 || cuts[i] >= std::max( levels.depth, 1u ) || ( i > 0 && cuts[i] <= cuts[i - 1] ) )
    {
      throw std::invalid_argument(
          fmt::format( "malformed cut set: cuts must increase strictly within 1..{}", levels.depth - 1 ) );
    }
  }

  partition_solution sol;
  sol.cuts.assign( cuts.begin(), cuts.end() );

  /* part index of each level, so that assignment is one pass over the nodes */
  std::vector<uint32_t> part_of_level( levels.depth + 1, 0 );
  uint32_t part = 0;
  for ( auto l = 1u; l <= levels.depth; ++l )
  {
    part_of_level[l] = part;
    if ( part < cuts.size() && l == cuts[part] )
      ++part;
  }

  sol.parts.resize( sol.part_count() );
  sol.part_of.resize( ntk.num_nodes() );
  for ( auto v = 0u; v < ntk.num_nodes(); ++v )
  {
    sol.part_of[v] = part_of_level[levels.level[v]];
    sol.parts[sol.part_of[v]].push_back( v );
  }
  return sol;
}

partition_solution partition_netlist( netlist const& ntk, level_map const& levels, chain_graph const& chain,
                                      uint32_t p )
{
  if ( p < 1 )
    throw std::invalid_argument( "depth bound must be at least 1" );

  std::vector<uint32_t> cuts;
  if ( p < levels.depth )
    cuts = traceback( solve_dcgp( chain, p ), chain );

  auto sol = assign_parts( ntk, levels, cuts );
  sol.tcw = total_cut_weight( chain, sol.cuts );
  sol.depth_bound = p;
  return sol;
}

partition_solution partition_netlist( netlist const& ntk, partition_params const& ps )
{
  auto const levels = levelize( ntk );
  if ( ps.depth_bound >= levels.depth )
  {
    /* trivial case: the whole graph is one part */
    auto sol = assign_parts( ntk, levels, {} );
    sol.depth_bound = ps.depth_bound;
    return sol;
  }
  auto const chain = build_chain_graph( ntk, levels, ps.chain );
  return partition_netlist( ntk, levels, chain, ps.depth_bound );
}

std::optional<std::string> check_partition( partition_solution const& sol, level_map const& levels, uint32_t p )
{
  auto const n = static_cast<uint32_t>( levels.level.size() );
  if ( n == 0 )
    return std::nullopt;
  std::vector<uint32_t> seen( n, 0 );
  for ( auto const& part : sol.parts )
    for ( auto v : part )
    {
      if ( v >= n )
        return fmt::format( "node {} does not exist", v );
      ++seen[v];
    }
  for ( auto v = 0u; v < n; ++v )
  {
    if ( seen[v] != 1 )
      return fmt::format( "node {} appears in {} parts", v, seen[v] );
  }

  /* level ranges must be disjoint, ordered and within the depth bound */
  uint32_t previous_max = 0;
  for ( auto i = 0u; i < sol.parts.size(); ++i )
  {
    auto const& part = sol.parts[i];
    if ( part.empty() )
      return fmt::format( "part {} is empty", i + 1 );
    auto [lo, hi] = std::minmax_element( part.begin(), part.end(), [&]( auto a, auto b ) {
      return levels.level[a] < levels.level[b];
    } );
    auto const min_level = levels.level[*lo];
    auto const max_level = levels.level[*hi];
    if ( max_level - min_level + 1 > p )
      return fmt::format( "part {} spans levels {}..{}, deeper than {}", i + 1, min_level, max_level, p );
    if ( min_level <= previous_max )
      return fmt::format( "part {} overlaps the levels of an earlier part", i + 1 );
    if ( min_level != previous_max + 1 )
      return fmt::format( "part {} does not start right after the previous part", i + 1 );
    previous_max = max_level;
  }
  if ( previous_max != levels.depth )
    return std::string( "parts do not reach the graph depth" );
  return std::nullopt;
}

namespace
{

struct enumerator
{
  chain_graph const& chain;
  uint32_t p;
  std::vector<uint32_t> current;
  brute_force_result best{ std::numeric_limits<uint64_t>::max(), {} };

  /* `start` is the first level of the next part; `cost` is the weight paid so far */
  void run( uint32_t start, uint64_t cost )
  {
    auto const L = chain.length;
    for ( auto size = 1u; size <= p && start + size - 1 <= L; ++size )
    {
      auto const end = start + size - 1;
      if ( end == L )
      {
        if ( cost < best.tcw )
          best = { cost, current };
        continue;
      }
      current.push_back( end );
      run( end + 1, cost + chain.boundary_weights[end - 1] );
      current.pop_back();
    }
  }
};

} // namespace

brute_force_result brute_force_partition( chain_graph const& chain, uint32_t p )
{
  if ( p < 1 )
    throw std::invalid_argument( "depth bound must be at least 1" );
  if ( chain.length > 25 )
    throw std::length_error( fmt::format( "chain of length {} is too long to enumerate (limit 25)", chain.length ) );

  enumerator e{ chain, p, {} };
  e.run( 1, 0 );
  return e.best;
}

std::string partition_to_json( partition_solution const& sol, netlist const& ntk, int indent )
{
  nlohmann::json j;
  j["p"] = sol.depth_bound;
  j["K"] = sol.part_count();
  j["cuts"] = sol.cuts;
  j["tcw"] = sol.tcw;
  j["parts"] = nlohmann::json::array();
  for ( auto const& part : sol.parts )
  {
    auto names = nlohmann::json::array();
    for ( auto v : part )
      names.push_back( ntk.node( v ).name );
    j["parts"].push_back( names );
  }
  return j.dump( indent );
}

} // namespace dlgp
