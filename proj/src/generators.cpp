#include <dlgp/generators.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace dlgp
{

namespace
{

struct builder_helper
{
  netlist_builder b;
  uint32_t counter{ 0 };

  explicit builder_helper( std::string model ) : b( std::move( model ) ) {}

  signal_ref gate( gate_kind kind, std::vector<signal_ref> fanins, std::string const& hint = "n" )
  {
    return b.add_gate( kind, b.fresh_name( fmt::format( "{}{}", hint, counter++ ) ), std::move( fanins ) );
  }
  signal_ref and2( signal_ref x, signal_ref y ) { return gate( gate_kind::and2, { x, y } ); }
  signal_ref or2( signal_ref x, signal_ref y ) { return gate( gate_kind::or2, { x, y } ); }
  signal_ref xor2( signal_ref x, signal_ref y ) { return gate( gate_kind::xor2, { x, y } ); }
  signal_ref not1( signal_ref x ) { return gate( gate_kind::not1, { x } ); }

  std::vector<signal_ref> inputs( char const* prefix, uint32_t n )
  {
    std::vector<signal_ref> v;
    for ( auto i = 0u; i < n; ++i )
      v.push_back( b.add_input( fmt::format( "{}{}", prefix, i ) ) );
    return v;
  }

  /* sum and carry of x + y + z */
  std::pair<signal_ref, signal_ref> full_add( signal_ref x, signal_ref y, signal_ref z )
  {
    auto const p = xor2( x, y );
    auto const s = xor2( p, z );
    auto const c = or2( and2( x, y ), and2( p, z ) );
    return { s, c };
  }

  std::pair<signal_ref, signal_ref> half_add( signal_ref x, signal_ref y ) { return { xor2( x, y ), and2( x, y ) }; }
};

void require_bits( uint32_t bits )
{
  if ( bits == 0 )
    throw std::invalid_argument( "bit width must be positive" );
}

} // namespace

netlist kogge_stone_adder( uint32_t bits )
{
  require_bits( bits );
  builder_helper h( fmt::format( "ksa{}", bits ) );
  auto const a = h.inputs( "a", bits );
  auto const b = h.inputs( "b", bits );
  auto const cin = h.b.add_input( "cin" );

  std::vector<signal_ref> g( bits ), p( bits );
  for ( auto i = 0u; i < bits; ++i )
  {
    g[i] = h.and2( a[i], b[i] );
    p[i] = h.xor2( a[i], b[i] );
  }

  /* prefix over positions -1..n-1 where position -1 is the carry-in; index shifted by one */
  std::vector<signal_ref> G( bits + 1 ), P( bits + 1 );
  std::vector<bool> has_p( bits + 1, true );
  G[0] = cin;
  has_p[0] = false;
  for ( auto i = 0u; i < bits; ++i )
  {
    G[i + 1] = g[i];
    P[i + 1] = p[i];
  }
  for ( auto d = 1u; d <= bits; d *= 2 )
  {
    auto nG = G;
    auto nP = P;
    auto n_has_p = has_p;
    for ( auto i = d; i <= bits; ++i )
    {
      nG[i] = h.or2( G[i], h.and2( P[i], G[i - d] ) );
      if ( has_p[i - d] )
        nP[i] = h.and2( P[i], P[i - d] );
      else
        n_has_p[i] = false;
    }
    G = std::move( nG );
    P = std::move( nP );
    has_p = std::move( n_has_p );
  }

  for ( auto i = 0u; i < bits; ++i )
    h.b.add_output( fmt::format( "s{}", i ), h.xor2( p[i], G[i] ) );
  h.b.add_output( "cout", G[bits] );
  return std::move( h.b ).build();
}

netlist ripple_carry_adder( uint32_t bits )
{
  require_bits( bits );
  builder_helper h( fmt::format( "rca{}", bits ) );
  auto const a = h.inputs( "a", bits );
  auto const b = h.inputs( "b", bits );
  auto carry = h.b.add_input( "cin" );
  for ( auto i = 0u; i < bits; ++i )
  {
    auto [s, c] = h.full_add( a[i], b[i], carry );
    h.b.add_output( fmt::format( "s{}", i ), s );
    carry = c;
  }
  h.b.add_output( "cout", carry );
  return std::move( h.b ).build();
}

netlist array_multiplier( uint32_t bits )
{
  if ( bits < 2 )
    throw std::invalid_argument( "the array multiplier needs at least 2 bits" );
  builder_helper h( fmt::format( "mult{}", bits ) );
  auto const a = h.inputs( "a", bits );
  auto const b = h.inputs( "b", bits );

  /* row accumulation: acc holds bits of the running sum aligned at weight `row` */
  std::vector<signal_ref> acc;
  for ( auto j = 0u; j < bits; ++j )
    acc.push_back( h.and2( a[j], b[0] ) );
  h.b.add_output( "p0", acc[0] );

  for ( auto row = 1u; row < bits; ++row )
  {
    std::vector<signal_ref> next;
    std::optional<signal_ref> carry;
    for ( auto j = 0u; j < bits; ++j )
    {
      auto const pp = h.and2( a[j], b[row] );
      auto const upper = j + 1 < acc.size() ? std::optional( acc[j + 1] ) : std::nullopt;
      signal_ref s, c;
      if ( upper && carry )
        std::tie( s, c ) = h.full_add( pp, *upper, *carry );
      else if ( upper )
        std::tie( s, c ) = h.half_add( pp, *upper );
      else if ( carry )
        std::tie( s, c ) = h.half_add( pp, *carry );
      else
      {
        next.push_back( pp );
        continue;
      }
      next.push_back( s );
      carry = c;
    }
    if ( carry )
      next.push_back( *carry );
    h.b.add_output( fmt::format( "p{}", row ), next[0] );
    acc = std::move( next );
  }
  for ( auto j = 1u; j < acc.size(); ++j )
    h.b.add_output( fmt::format( "p{}", bits - 1 + j ), acc[j] );
  return std::move( h.b ).build();
}

netlist comparator( uint32_t bits )
{
  require_bits( bits );
  builder_helper h( fmt::format( "cmp{}", bits ) );
  auto const a = h.inputs( "a", bits );
  auto const b = h.inputs( "b", bits );

  /* scan from the most significant bit: gt |= eq & a & !b; eq &= !(a ^ b) */
  std::optional<signal_ref> gt, eq;
  for ( auto k = bits; k-- > 0; )
  {
    auto const bit_gt = h.and2( a[k], h.not1( b[k] ) );
    auto const bit_eq = h.not1( h.xor2( a[k], b[k] ) );
    if ( !gt )
    {
      gt = bit_gt;
      eq = bit_eq;
      continue;
    }
    gt = h.or2( *gt, h.and2( *eq, bit_gt ) );
    eq = h.and2( *eq, bit_eq );
  }
  h.b.add_output( "gt", *gt );
  h.b.add_output( "eq", *eq );
  return std::move( h.b ).build();
}

netlist c17()
{
  builder_helper h( "c17" );
  auto const in = h.inputs( "i", 5 );
  auto nand = [&]( signal_ref x, signal_ref y ) { return h.not1( h.and2( x, y ) ); };
  auto const n10 = nand( in[0], in[2] );
  auto const n11 = nand( in[2], in[3] );
  auto const n16 = nand( in[1], n11 );
  auto const n19 = nand( n11, in[4] );
  h.b.add_output( "o22", nand( n10, n16 ) );
  h.b.add_output( "o23", nand( n16, n19 ) );
  return std::move( h.b ).build();
}

netlist random_netlist( uint64_t seed, random_params const& ps )
{
  if ( ps.num_inputs == 0 || ps.num_gates == 0 )
    throw std::invalid_argument( "random netlist needs at least one input and one gate" );

  std::mt19937_64 rng( seed );
  auto pick = [&]( auto const& v ) { return v[std::uniform_int_distribution<std::size_t>( 0, v.size() - 1 )( rng )]; };

  auto const depth = std::max( 1u, std::min( ps.max_depth, ps.num_gates ) );
  std::vector<uint32_t> target( ps.num_gates );
  for ( auto i = 0u; i < ps.num_gates; ++i )
    target[i] = i < depth ? i + 1 : std::uniform_int_distribution<uint32_t>( 1, depth )( rng );
  std::sort( target.begin(), target.end() );

  netlist_builder b( fmt::format( "random_{}", seed ) );
  std::vector<std::vector<signal_ref>> by_level( depth + 1 );
  std::vector<signal_ref> below; /* every signal of a lower level than the current gate */
  for ( auto i = 0u; i < ps.num_inputs; ++i )
    by_level[0].push_back( b.add_input( fmt::format( "x{}", i ) ) );

  std::vector<uint32_t> uses( ps.num_gates, 0 );
  uint32_t current = 0;
  for ( auto g = 0u; g < ps.num_gates; ++g )
  {
    while ( current < target[g] )
    {
      below.insert( below.end(), by_level[current].begin(), by_level[current].end() );
      ++current;
    }
    auto const first = pick( by_level[current - 1] );
    auto const roll = std::uniform_int_distribution<uint32_t>( 0, 9 )( rng );
    gate_kind kind;
    std::vector<signal_ref> fanins{ first };
    if ( ps.allow_inverters && roll < 2 )
      kind = gate_kind::not1;
    else
    {
      kind = roll < 5 ? gate_kind::and2 : ( roll < 8 ? gate_kind::or2 : gate_kind::xor2 );
      auto second = pick( below );
      for ( auto tries = 0; second == first && tries < 4; ++tries )
        second = pick( below );
      fanins.push_back( second );
    }
    for ( auto f : fanins )
      if ( f.is_node() )
        ++uses[f.index];
    by_level[current].push_back( b.add_gate( kind, fmt::format( "n{}", g ), std::move( fanins ) ) );
  }

  uint32_t outputs = 0;
  std::vector<bool> is_output( ps.num_gates, false );
  for ( auto g = 0u; g < ps.num_gates; ++g )
    if ( uses[g] == 0 )
    {
      b.add_output( fmt::format( "y{}", outputs++ ), signal_ref::node( g ) );
      is_output[g] = true;
    }
  for ( auto attempts = 0u; outputs < ps.num_outputs && attempts < 4 * ps.num_gates; ++attempts )
  {
    auto const g = std::uniform_int_distribution<uint32_t>( 0, ps.num_gates - 1 )( rng );
    if ( is_output[g] )
      continue;
    is_output[g] = true;
    b.add_output( fmt::format( "y{}", outputs++ ), signal_ref::node( g ) );
  }
  return std::move( b ).build();
}

} // namespace dlgp
