#include <catch_amalgamated.hpp>

#include <dlgp/chain.hpp>

#include "oracle.hpp"

using namespace dlgp;

namespace
{

std::vector<uint64_t> oracle_weights( netlist const& ntk, weight_mode mode, bool with_inputs )
{
  auto const lv = oracle::levels( ntk );
  auto const L = std::max( oracle::depth( lv ), 1u );
  std::vector<uint64_t> w;
  for ( auto k = 1u; k < L; ++k )
    w.push_back( mode == weight_mode::edge ? oracle::edge_crossings( ntk, lv, k, with_inputs )
                                           : oracle::net_crossings( ntk, lv, k, with_inputs ) );
  return w;
}

chain_graph chain_of( netlist const& ntk, weight_mode mode, bool with_inputs = false )
{
  return build_chain_graph( ntk, levelize( ntk ), { mode, with_inputs } );
}

} // namespace

TEST_CASE( "single path gives unit weights", "[chain]" )
{
  auto const ntk = parse_netlist( ".inputs a\n.outputs g3\ngate NOT g1 a\ngate NOT g2 g1\ngate NOT g3 g2\n" );
  for ( auto mode : { weight_mode::edge, weight_mode::hyperedge } )
  {
    auto const c = chain_of( ntk, mode );
    CHECK( c.length == 3 );
    CHECK( c.boundary_weights == std::vector<uint64_t>{ 1, 1 } );
  }
}

TEST_CASE( "net with a long and a short sink", "[chain]" )
{
  /* u (level 1) feeds s2 (level 2) and s4 (level 4); s2 -> s3 -> s4 */
  auto const ntk = parse_netlist( ".inputs a b\n.outputs s4\n"
                                  "gate NOT u a\ngate AND2 s2 u b\ngate NOT s3 s2\ngate AND2 s4 s3 u\n" );
  auto const hyper = chain_of( ntk, weight_mode::hyperedge );
  auto const edge = chain_of( ntk, weight_mode::edge );
  CHECK( hyper.boundary_weights == std::vector<uint64_t>{ 1, 2, 2 } );
  CHECK( edge.boundary_weights == std::vector<uint64_t>{ 2, 2, 2 } );
  CHECK( hyper.boundary_weights == oracle_weights( ntk, weight_mode::hyperedge, false ) );
  CHECK( edge.boundary_weights == oracle_weights( ntk, weight_mode::edge, false ) );
}

TEST_CASE( "example 2 fixture weights", "[chain]" )
{
  auto const ntk = read_netlist_file( std::string( DLGP_DATA_DIR ) + "/fixtures/example2.net" );
  CHECK( levelize( ntk ).depth == 5 );
  CHECK( chain_of( ntk, weight_mode::hyperedge, true ).boundary_weights == std::vector<uint64_t>{ 6, 3, 2, 3 } );
  CHECK( chain_of( ntk, weight_mode::edge, true ).boundary_weights == std::vector<uint64_t>{ 7, 4, 4, 3 } );

  /* gate-driven nets only */
  CHECK( chain_of( ntk, weight_mode::hyperedge ).boundary_weights == std::vector<uint64_t>{ 2, 2, 2, 3 } );
  CHECK( chain_of( ntk, weight_mode::edge ).boundary_weights == std::vector<uint64_t>{ 2, 2, 4, 3 } );
}

TEST_CASE( "cut weight lookup", "[chain]" )
{
  auto const c = chain_graph::from_weights( { 6, 3, 2, 3 } );
  CHECK( c.length == 5 );
  CHECK( cut_weight( c, 2 ) == 3 );
  CHECK( cut_weight( chain_graph::from_weights( { 5 } ), 1 ) == 5 );
  CHECK_THROWS_AS( cut_weight( c, 5 ), std::out_of_range );
  CHECK_THROWS_AS( cut_weight( c, 0 ), std::out_of_range );
  CHECK( cut_weight( c, 4 ) == 3 );
}

TEST_CASE( "weight mode names", "[chain]" )
{
  CHECK( weight_mode_from_string( "edge" ) == weight_mode::edge );
  CHECK( weight_mode_from_string( "hyper" ) == weight_mode::hyperedge );
  CHECK( to_string( weight_mode::hyperedge ) == "hyper" );
  CHECK_THROWS_AS( weight_mode_from_string( "nets" ), std::invalid_argument );
}

TEST_CASE( "chain JSON round trip", "[chain]" )
{
  auto const c = chain_graph::from_weights( { 4, 0, 9 }, weight_mode::edge );
  auto const back = chain_from_json( chain_to_json( c ) );
  CHECK( back.length == 4 );
  CHECK( back.boundary_weights == c.boundary_weights );
  CHECK( back.mode == weight_mode::edge );
}

TEST_CASE( "chain weights match brute-force crossing counts", "[chain][property]" )
{
  for ( uint64_t seed = 1; seed <= 300; ++seed )
  {
    auto const ntk = oracle::random_dag( seed, 3 + seed % 5, 5 + seed % 36, 3 );
    for ( bool with_inputs : { false, true } )
    {
      auto const hyper = chain_of( ntk, weight_mode::hyperedge, with_inputs );
      auto const edge = chain_of( ntk, weight_mode::edge, with_inputs );
      REQUIRE( hyper.boundary_weights == oracle_weights( ntk, weight_mode::hyperedge, with_inputs ) );
      REQUIRE( edge.boundary_weights == oracle_weights( ntk, weight_mode::edge, with_inputs ) );
      CHECK( hyper.boundary_weights.size() + 1 == hyper.length );
      for ( auto k = 0u; k < hyper.boundary_weights.size(); ++k )
        CHECK( hyper.boundary_weights[k] <= edge.boundary_weights[k] );
    }
  }
}

TEST_CASE( "edge weights sum to total edge span", "[chain][property]" )
{
  for ( uint64_t seed = 1; seed <= 100; ++seed )
  {
    auto const ntk = oracle::random_dag( seed, 4, 30, 2 );
    auto const lv = oracle::levels( ntk );
    uint64_t span = 0;
    for ( auto v = 0u; v < ntk.num_nodes(); ++v )
      for ( auto f : ntk.node( v ).fanins )
        if ( f.is_node() )
          span += lv[v] - std::max( lv[f.index], 1u );
    uint64_t sum = 0;
    for ( auto w : chain_of( ntk, weight_mode::edge ).boundary_weights )
      sum += w;
    CHECK( sum == span );
  }
}
