#include <dlgp/chain.hpp>

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace dlgp
{

std::string_view to_string( weight_mode mode )
{
  return mode == weight_mode::edge ? "edge" : "hyper";
}

weight_mode weight_mode_from_string( std::string_view text )
{
  if ( text == "edge" )
    return weight_mode::edge;
  if ( text == "hyper" || text == "hyperedge" )
    return weight_mode::hyperedge;
  throw std::invalid_argument( fmt::format( "unknown weight mode '{}' (expected edge or hyper)", text ) );
}

chain_graph chain_graph::from_weights( std::vector<uint64_t> weights, weight_mode mode )
{
  chain_graph chain;
  chain.length = static_cast<uint32_t>( weights.size() + 1 );
  chain.boundary_weights = std::move( weights );
  chain.mode = mode;
  return chain;
}

chain_graph build_chain_graph( netlist const& ntk, level_map const& levels, chain_params const& ps )
{
  chain_graph chain;
  chain.mode = ps.mode;
  chain.length = std::max<uint32_t>( levels.depth, 1u );

  /* diff[k] for boundary k in [1, length - 1]; one extra slot for the closing decrement */
  std::vector<int64_t> diff( chain.length + 1, 0 );
  auto add_interval = [&]( uint32_t first, uint32_t last ) {
    if ( first > last )
      return;
    ++diff[first];
    --diff[last + 1];
  };

  auto visit_net = [&]( signal_ref driver ) {
    if ( driver.is_input() && !ps.include_input_nets )
      return;
    /* a net driven at level u crosses boundaries max(u, 1) .. (sink level - 1) */
    auto const first = std::max<uint32_t>( levels.of( driver ), 1u );
    if ( ps.mode == weight_mode::edge )
    {
      for ( auto const& e : ntk.fanout( driver ) )
      {
        if ( !e.to_output )
          add_interval( first, levels.level[e.index] - 1 );
      }
    }
    else
    {
      uint32_t last_sink = 0;
      for ( auto const& e : ntk.fanout( driver ) )
      {
        if ( !e.to_output )
          last_sink = std::max( last_sink, levels.level[e.index] );
      }
      if ( last_sink > 0 )
        add_interval( first, last_sink - 1 );
    }
  };

  for ( auto i = 0u; i < ntk.num_inputs(); ++i )
    visit_net( signal_ref::input( i ) );
  for ( auto i = 0u; i < ntk.num_nodes(); ++i )
    visit_net( signal_ref::node( i ) );

  chain.boundary_weights.resize( chain.length - 1 );
  int64_t running = 0;
  for ( auto k = 1u; k < chain.length; ++k )
  {
    running += diff[k];
    chain.boundary_weights[k - 1] = static_cast<uint64_t>( running );
  }
  return chain;
}

uint64_t cut_weight( chain_graph const& chain, uint32_t k )
{
  if ( k < 1 || k >= chain.length )
  {
    throw std::out_of_range( fmt::format( "boundary {} outside 1..{}", k, chain.length - 1 ) );
  }
  return chain.boundary_weights[k - 1];
}

std::string chain_to_json( chain_graph const& chain, int indent )
{
  nlohmann::json j;
  j["length"] = chain.length;
  j["weights"] = chain.boundary_weights;
  j["mode"] = to_string( chain.mode );
  return j.dump( indent );
}

chain_graph chain_from_json( std::string_view text )
{
  auto const j = nlohmann::json::parse( text );
  auto chain = chain_graph::from_weights( j.at( "weights" ).get<std::vector<uint64_t>>(),
                                          weight_mode_from_string( j.value( "mode", std::string( "hyper" ) ) ) );
  if ( j.contains( "length" ) && j["length"].get<uint32_t>() != chain.length )
    throw std::invalid_argument( "chain length does not match the number of weights" );
  return chain;
}

} // namespace dlgp
