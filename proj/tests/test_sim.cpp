#include <catch_amalgamated.hpp>

#include <dlgp/generators.hpp>
#include <dlgp/sim.hpp>
#include <dlgp/synth.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracle.hpp"

using namespace dlgp;

namespace
{

std::string data_path( std::string const& name )
{
  return std::string( DLGP_DATA_DIR ) + "/fixtures/" + name;
}

stimulus_map stimulus_file( std::string const& name )
{
  std::ifstream in( data_path( name ) );
  std::stringstream ss;
  ss << in.rdbuf();
  return stimulus_from_json( ss.str() );
}

/* Expected adder outputs per vector, from integer addition. */
std::map<std::string, std::string> adder_expectation( stimulus_map const& s, uint32_t bits )
{
  std::map<std::string, std::string> out;
  auto const n = s.at( "cin" ).size();
  for ( auto t = 0u; t < n; ++t )
  {
    uint32_t a = 0, b = 0;
    for ( auto i = 0u; i < bits; ++i )
    {
      a |= uint32_t( s.at( fmt::format( "a{}", i ) )[t] == '1' ) << i;
      b |= uint32_t( s.at( fmt::format( "b{}", i ) )[t] == '1' ) << i;
    }
    auto const sum = a + b + uint32_t( s.at( "cin" )[t] == '1' );
    for ( auto i = 0u; i < bits; ++i )
      out[fmt::format( "S{}", i )] += ( sum >> i ) & 1 ? '1' : '0';
    out["Cout"] += ( sum >> bits ) & 1 ? '1' : '0';
  }
  return out;
}

std::string repeat( std::string const& s, std::size_t times )
{
  std::string r;
  for ( auto i = 0u; i < times; ++i )
    r += s;
  return r;
}

} // namespace

TEST_CASE( "logic value characters", "[sim]" )
{
  CHECK( to_char( logic_value::x ) == 'x' );
  CHECK( logic_value_from_char( '1' ) == logic_value::one );
  CHECK( logic_value_from_char( 'X' ) == logic_value::x );
  CHECK_THROWS_AS( logic_value_from_char( '2' ), std::invalid_argument );
}

TEST_CASE( "example 1 without balancing loses every pulse", "[sim]" )
{
  auto const c = as_circuit( read_netlist_file( data_path( "example1.net" ) ) );
  auto const wave = simulate( c, stimulus_file( "example1_stimulus.json" ), 10 );
  CHECK( wave.trace( "x" ) == "x000000000" );

  /* the expected stream is a & !b, which equals a here */
  auto const sampled = sampled_outputs( wave, c, 9 );
  CHECK( sampled.at( "x" ) != "101010101" );
}

TEST_CASE( "example 1 after FPB", "[sim]" )
{
  auto const c = full_path_balance( read_netlist_file( data_path( "example1.net" ) ) );
  auto const wave = simulate( c, stimulus_file( "example1_stimulus.json" ), 10 );
  CHECK( wave.trace( "x" ) == "x101010101" );
  CHECK( sampled_outputs( wave, c, 9 ).at( "x" ) == "101010101" );
}

TEST_CASE( "KSA2 under dual clocking", "[sim]" )
{
  auto const ntk = read_netlist_file( data_path( "ksa2.net" ) );
  auto const c = dcm_synthesize( ntk, { 2, {} } );
  auto const s = stimulus_file( "ksa2_stimulus.json" );
  auto const vectors = s.at( "cin" ).size();
  auto const K = pipeline_latency( c );
  auto const cycles = ( vectors + K ) * 2;

  /* hold each vector for a macro period, then keep the last one */
  auto held = hold_stimulus( s, 2 );
  for ( auto& [name, bits] : held )
    bits.append( cycles - bits.size(), bits.back() );

  auto const wave = simulate( c, held, cycles, { true } );
  auto const sampled = sampled_outputs( wave, c, vectors );
  auto const expected = adder_expectation( s, 2 );
  CHECK( sampled.at( "S0" ) == expected.at( "S0" ) );
  CHECK( sampled.at( "S1" ) == expected.at( "S1" ) );
  CHECK( sampled.at( "Cout" ) == expected.at( "Cout" ) );
  CHECK( expected.at( "S0" ) == "0101" );
  CHECK( expected.at( "Cout" ) == "1100" );
  CHECK_FALSE( wave.internal.empty() );
}

TEST_CASE( "DRO chains pass each pulse once", "[sim]" )
{
  auto const c = read_circuit( ".inputs a\n.outputs y=d2\ngate DFF_DRO d1 a\ngate DFF_DRO d2 d1\n" );
  auto const wave = simulate( c, { { "a", "100000" } }, 6 );
  CHECK( wave.trace( "y" ) == "x10000" );

  auto const burst = simulate( c, { { "a", "110100" } }, 6 );
  CHECK( burst.trace( "y" ) == "x11010" );
}

TEST_CASE( "repeaters replay their bit for a whole macro period", "[sim]" )
{
  auto const c = read_circuit( ".clock dual 3\n.inputs a\n.outputs y=r\ngate REPEATER r a\n" );
  CHECK( simulate( c, { { "a", "001000000" } }, 9 ).trace( "y" ) == "xxx111000" );
  CHECK( simulate( c, { { "a", "110111111" } }, 9 ).trace( "y" ) == "xxx000111" );

  simulator sim( c );
  std::vector<logic_value> one{ logic_value::one }, zero{ logic_value::zero };
  CHECK( sim.held( 0 ) == logic_value::x );
  sim.step( zero );
  sim.step( zero );
  sim.step( one );
  CHECK( sim.held( 0 ) == logic_value::one );
  for ( auto i = 0; i < 2; ++i )
  {
    sim.step( zero );
    CHECK( sim.output( 0 ) == logic_value::one );
    CHECK( sim.held( 0 ) == logic_value::one );
  }
  CHECK( sim.macro_tick( 2 ) );
  CHECK_FALSE( sim.macro_tick( 3 ) );
  CHECK( sim.cycle() == 5 );

  auto const plain = read_circuit( ".inputs a\n.outputs y=g\ngate NOT g a\n" );
  CHECK_FALSE( simulator( plain ).held( 0 ).has_value() );
}

TEST_CASE( "unknowns propagate with three-valued logic", "[sim]" )
{
  auto const c = read_circuit( ".inputs a b\n.outputs y=g z=h w=k\ngate AND2 g a b\ngate OR2 h a b\ngate XOR2 k a b\n" );
  auto const wave = simulate( c, { { "a", "0x1x" }, { "b", "xx1x" } }, 4 );
  CHECK( wave.trace( "y" ) == "0x1x" );
  CHECK( simulate( c, { { "a", "1x0" }, { "b", "x0x" } }, 3 ).trace( "z" ) == "1xx" );
  CHECK( wave.trace( "w" ) == "xx0x" );
}

TEST_CASE( "simulation is deterministic", "[sim]" )
{
  auto const ntk = random_netlist( 11, { 6, 50, 4, 9, true } );
  auto const c = dcm_synthesize( ntk, { 3, {} } );
  std::mt19937_64 rng( 3 );
  stimulus_map s;
  for ( auto const& name : ntk.inputs() )
  {
    std::string bits;
    for ( auto i = 0; i < 60; ++i )
      bits += rng() & 1 ? '1' : '0';
    s[name] = bits;
  }
  CHECK( simulate( c, s, 60 ).to_json() == simulate( c, s, 60 ).to_json() );
}

TEST_CASE( "stimulus validation", "[sim]" )
{
  auto const c = as_circuit( read_netlist_file( data_path( "example1.net" ) ) );
  CHECK_THROWS_AS( simulate( c, { { "a", "10" }, { "b", "1" } }, 2 ), std::invalid_argument );
  CHECK_THROWS_AS( simulate( c, { { "a", "10" } }, 2 ), std::invalid_argument );
  CHECK_THROWS_AS( simulate( c, {}, 2 ), std::invalid_argument );
  CHECK_THROWS_AS( simulate( c, { { "a", "10" }, { "b", "10" }, { "q", "10" } }, 2 ), std::invalid_argument );
  CHECK_THROWS_AS( simulate( c, { { "a", "10" }, { "b", "10" } }, 0 ), std::invalid_argument );
  CHECK_THROWS_AS( simulate( c, { { "a", "12" }, { "b", "10" } }, 2 ), std::invalid_argument );
  CHECK_THROWS_AS( stimulus_from_json( "[1, 2]" ), std::invalid_argument );

  auto const opaque = as_circuit( read_netlist_file( data_path( "example2.net" ) ) );
  CHECK_THROWS_AS( simulator( opaque ), std::invalid_argument );
}

TEST_CASE( "hold_stimulus stretches every symbol", "[sim]" )
{
  auto const held = hold_stimulus( { { "a", "10x" }, { "b", "" } }, 3 );
  CHECK( held.at( "a" ) == "111000xxx" );
  CHECK( held.at( "b" ).empty() );
}

TEST_CASE( "sampling follows the pipeline latency", "[sim]" )
{
  for ( uint64_t seed = 1; seed <= 30; ++seed )
  {
    auto const ntk = random_netlist( seed, { 5, 35, 3, 8, true } );
    auto const L = levelize( ntk ).depth;

    auto const fpb = full_path_balance( ntk );
    CHECK( pipeline_latency( fpb ) == L );
    CHECK( sample_cycle( fpb, 0 ) == L - 1 );
    CHECK( sample_cycle( fpb, 7 ) == L + 6 );

    for ( auto p : { 2u, 4u } )
    {
      auto const dcm = dcm_synthesize( ntk, { p, {} } );
      CHECK( pipeline_latency( dcm ) == dcm.part_count );
      CHECK( sample_cycle( dcm, 3 ) == ( 3 + dcm.part_count ) * p - 1 );
    }
  }
}

TEST_CASE( "FPB and DCM match evaluation on random netlists", "[sim][property]" )
{
  std::mt19937_64 rng( 99 );
  for ( uint64_t seed = 1; seed <= 40; ++seed )
  {
    auto const ntk = random_netlist( seed, { 3 + uint32_t( seed % 6 ), 45, 4, 10, true } );
    std::vector<std::vector<bool>> vectors( 16, std::vector<bool>( ntk.num_inputs() ) );
    for ( auto& v : vectors )
      for ( auto i = 0u; i < v.size(); ++i )
        v[i] = rng() & 1;

    /* the reference is independent of the simulator */
    for ( auto const& v : vectors )
      REQUIRE( eval_combinational( ntk, v ) == oracle::evaluate( ntk, v ) );

    CHECK( compare_with_oracle( full_path_balance( ntk ), ntk, vectors ).passed );
    for ( auto p : { 2u, 3u, 5u } )
    {
      auto const result = compare_with_oracle( dcm_synthesize( ntk, { p, {} } ), ntk, vectors );
      CHECK( result.passed );
    }
  }
}

TEST_CASE( "an unbalanced circuit fails the oracle", "[sim]" )
{
  auto const ntk = read_netlist_file( data_path( "example1.net" ) );
  std::vector<std::vector<bool>> vectors;
  for ( auto t = 0u; t < 6; ++t )
    vectors.push_back( { t % 2 == 0, t % 2 == 1 } );
  auto const result = compare_with_oracle( as_circuit( ntk ), ntk, vectors );
  CHECK_FALSE( result.passed );
  REQUIRE( result.first_mismatch.has_value() );
  CHECK( result.first_mismatch->vector == 0 );
  CHECK( result.first_mismatch->output == "x" );
  CHECK( result.first_mismatch->expected == true );

  CHECK( compare_with_oracle( full_path_balance( ntk ), ntk, vectors ).passed );
}

TEST_CASE( "waveform rendering", "[sim]" )
{
  auto const c = read_circuit( ".clock dual 2\n.inputs a\n.outputs y=r\ngate REPEATER r a\n" );
  auto const wave = simulate( c, { { "a", "0110" } }, 4 );
  auto const text = wave.ascii();
  CHECK_THAT( text, Catch::Matchers::StartsWith( "cycle 0123\n" ) );
  CHECK_THAT( text, Catch::Matchers::ContainsSubstring( "a     0110\n" ) );
  CHECK_THAT( text, Catch::Matchers::ContainsSubstring( "y     xx11\n" ) );
  CHECK_THAT( text, Catch::Matchers::ContainsSubstring( "macro  ^ ^\n" ) );

  auto const j = nlohmann::json::parse( wave.to_json() );
  CHECK( j["cycles"] == 4 );
  CHECK( j["macro_period"] == 2 );
  CHECK( j["outputs"]["y"] == "xx11" );
  CHECK_FALSE( j.contains( "internal" ) );
  CHECK_THROWS_AS( wave.trace( "nope" ), std::out_of_range );

  auto const single = simulate( as_circuit( parse_netlist( ".inputs a\n.outputs a\n" ) ), { { "a", repeat( "01", 6 ) } }, 12 );
  CHECK_THAT( single.ascii(), Catch::Matchers::StartsWith( "cycle 012345678901\n" ) );
  CHECK_THAT( single.ascii(), !Catch::Matchers::ContainsSubstring( "macro" ) );
}
