#include <dlgp/sim.hpp>

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace dlgp
{

char to_char( logic_value v )
{
  switch ( v )
  {
  case logic_value::zero:
    return '0';
  case logic_value::one:
    return '1';
  default:
    return 'x';
  }
}

logic_value logic_value_from_char( char c )
{
  switch ( c )
  {
  case '0':
    return logic_value::zero;
  case '1':
    return logic_value::one;
  case 'x':
  case 'X':
    return logic_value::x;
  default:
    throw std::invalid_argument( fmt::format( "'{}' is not a logic value (0, 1 or x)", c ) );
  }
}

namespace
{

using lv = logic_value;

lv and3( lv a, lv b )
{
  if ( a == lv::zero || b == lv::zero )
    return lv::zero;
  return a == lv::one && b == lv::one ? lv::one : lv::x;
}

lv or3( lv a, lv b )
{
  if ( a == lv::one || b == lv::one )
    return lv::one;
  return a == lv::zero && b == lv::zero ? lv::zero : lv::x;
}

lv xor3( lv a, lv b )
{
  if ( a == lv::x || b == lv::x )
    return lv::x;
  return a != b ? lv::one : lv::zero;
}

lv not3( lv a )
{
  if ( a == lv::x )
    return lv::x;
  return a == lv::one ? lv::zero : lv::one;
}

} // namespace

simulator::simulator( sfq_circuit const& circuit )
    : _ntk( &circuit.ntk ),
      _ratio( circuit.clocking.scheme == clock_scheme::dual ? circuit.clocking.ratio : 1u )
{
  auto const& ntk = *_ntk;
  auto const slots = ntk.num_inputs() + ntk.num_nodes();
  _current.assign( slots, lv::x );
  _previous.assign( slots, lv::x );
  _held.assign( ntk.num_nodes(), lv::x );
  _source_phase.assign( slots, false );
  for ( auto i = 0u; i < ntk.num_inputs(); ++i )
    _source_phase[i] = true;

  for ( auto v : ntk.topological_order() )
  {
    auto const& n = ntk.node( v );
    if ( n.kind == gate_kind::node )
      throw std::invalid_argument( fmt::format( "cannot simulate opaque node '{}'", n.name ) );
    if ( n.kind == gate_kind::repeater )
      _source_phase[slot( signal_ref::node( v ) )] = true;
    else if ( n.kind == gate_kind::splitter || n.kind == gate_kind::buf )
      _source_phase[slot( signal_ref::node( v ) )] = _source_phase[slot( n.fanins[0] )];
  }
}

void simulator::step( std::span<logic_value const> inputs )
{
  auto const& ntk = *_ntk;
  if ( inputs.size() != ntk.num_inputs() )
    throw std::invalid_argument(
        fmt::format( "expected {} input values, got {}", ntk.num_inputs(), inputs.size() ) );

  std::swap( _current, _previous );
  std::copy( inputs.begin(), inputs.end(), _current.begin() );

  /* a clocked cell sees sources in the same cycle and gate outputs one cycle late */
  auto operand = [&]( signal_ref f ) {
    auto const s = slot( f );
    return _source_phase[s] ? _current[s] : _previous[s];
  };

  for ( auto v : ntk.topological_order() )
  {
    auto const& n = ntk.node( v );
    auto& out = _current[ntk.num_inputs() + v];
    switch ( n.kind )
    {
    case gate_kind::and2:
      out = and3( operand( n.fanins[0] ), operand( n.fanins[1] ) );
      break;
    case gate_kind::or2:
      out = or3( operand( n.fanins[0] ), operand( n.fanins[1] ) );
      break;
    case gate_kind::xor2:
      out = xor3( operand( n.fanins[0] ), operand( n.fanins[1] ) );
      break;
    case gate_kind::not1:
      out = not3( operand( n.fanins[0] ) );
      break;
    case gate_kind::dff_dro:
    case gate_kind::dff_ndro:
      out = operand( n.fanins[0] );
      break;
    case gate_kind::splitter:
    case gate_kind::buf:
      out = _current[slot( n.fanins[0] )];
      break;
    case gate_kind::repeater:
      out = _held[v];
      break;
    case gate_kind::node:
      break;
    }
  }

  if ( macro_tick( _cycle ) )
  {
    /* all repeaters latch simultaneously, from values of this cycle */
    std::vector<std::pair<uint32_t, logic_value>> writes;
    for ( auto v = 0u; v < ntk.num_nodes(); ++v )
      if ( ntk.node( v ).kind == gate_kind::repeater )
        writes.emplace_back( v, _current[slot( ntk.node( v ).fanins[0] )] );
    for ( auto [v, bit] : writes )
      _held[v] = bit;
  }
  ++_cycle;
}

logic_value simulator::value( signal_ref s ) const
{
  return _current[slot( s )];
}

logic_value simulator::output( uint32_t index ) const
{
  return value( _ntk->outputs()[index].driver );
}

std::optional<logic_value> simulator::held( uint32_t node ) const
{
  if ( _ntk->node( node ).kind != gate_kind::repeater )
    return std::nullopt;
  return _held[node];
}

/* ------------------------------------------------------------ waveform -- */

std::string const& waveform::trace( std::string_view name ) const
{
  for ( auto const* list : { &outputs, &inputs, &internal } )
    for ( auto const& [n, t] : *list )
      if ( n == name )
        return t;
  throw std::out_of_range( fmt::format( "no trace named '{}'", name ) );
}

std::string waveform::ascii() const
{
  std::size_t width = 5;
  for ( auto const* list : { &inputs, &outputs, &internal } )
    for ( auto const& entry : *list )
      width = std::max( width, entry.first.size() );

  std::string ruler, ticks;
  for ( auto c = 0u; c < cycles; ++c )
  {
    ruler += static_cast<char>( '0' + c % 10 );
    ticks += c % macro_period == macro_period - 1 ? '^' : ' ';
  }

  std::string text = fmt::format( "{:<{}} {}\n", "cycle", width, ruler );
  auto section = [&]( trace_list const& list ) {
    for ( auto const& [name, bits] : list )
      text += fmt::format( "{:<{}} {}\n", name, width, bits );
  };
  section( inputs );
  section( internal );
  section( outputs );
  if ( macro_period > 1 )
    text += fmt::format( "{:<{}} {}\n", "macro", width, ticks );
  return text;
}

std::string waveform::to_json( int indent ) const
{
  auto as_object = []( trace_list const& list ) {
    auto j = nlohmann::json::object();
    for ( auto const& [name, bits] : list )
      j[name] = bits;
    return j;
  };
  nlohmann::json j;
  j["cycles"] = cycles;
  j["macro_period"] = macro_period;
  j["inputs"] = as_object( inputs );
  j["outputs"] = as_object( outputs );
  if ( !internal.empty() )
    j["internal"] = as_object( internal );
  return j.dump( indent );
}

/* ------------------------------------------------------------- driving -- */

waveform simulate( sfq_circuit const& circuit, stimulus_map const& stimulus, uint64_t cycles, sim_options const& ps )
{
  auto const& ntk = circuit.ntk;
  if ( cycles == 0 )
    throw std::invalid_argument( "nothing to simulate: zero cycles requested" );
  if ( stimulus.empty() && ntk.num_inputs() > 0 )
    throw std::invalid_argument( "empty stimulus" );

  std::vector<std::string const*> streams;
  for ( auto const& name : ntk.inputs() )
  {
    auto it = stimulus.find( name );
    if ( it == stimulus.end() )
      throw std::invalid_argument( fmt::format( "no stimulus for primary input '{}'", name ) );
    if ( it->second.size() < cycles )
      throw std::invalid_argument( fmt::format( "stimulus for '{}' covers {} cycles, {} requested", name,
                                                it->second.size(), cycles ) );
    streams.push_back( &it->second );
  }
  for ( auto const& [name, bits] : stimulus )
    if ( !ntk.find( name ) || !ntk.find( name )->is_input() )
      throw std::invalid_argument( fmt::format( "stimulus names '{}', which is not a primary input", name ) );

  waveform wave;
  wave.cycles = cycles;
  wave.macro_period = circuit.clocking.scheme == clock_scheme::dual ? circuit.clocking.ratio : 1u;
  for ( auto const& name : ntk.inputs() )
    wave.inputs.emplace_back( name, std::string() );
  for ( auto const& po : ntk.outputs() )
    wave.outputs.emplace_back( po.name, std::string() );
  if ( ps.record_internal )
    for ( auto const& n : ntk.nodes() )
      wave.internal.emplace_back( n.name, std::string() );

  simulator sim( circuit );
  std::vector<logic_value> in( ntk.num_inputs() );
  for ( uint64_t c = 0; c < cycles; ++c )
  {
    for ( auto i = 0u; i < in.size(); ++i )
    {
      in[i] = logic_value_from_char( ( *streams[i] )[c] );
      wave.inputs[i].second += to_char( in[i] );
    }
    sim.step( in );
    for ( auto o = 0u; o < ntk.num_outputs(); ++o )
      wave.outputs[o].second += to_char( sim.output( o ) );
    for ( auto v = 0u; v < wave.internal.size(); ++v )
      wave.internal[v].second += to_char( sim.value( signal_ref::node( v ) ) );
  }
  return wave;
}

stimulus_map hold_stimulus( stimulus_map const& stimulus, uint32_t times )
{
  stimulus_map held;
  for ( auto const& [name, bits] : stimulus )
  {
    std::string out;
    out.reserve( bits.size() * times );
    for ( auto b : bits )
      out.append( times, b );
    held.emplace( name, std::move( out ) );
  }
  return held;
}

stimulus_map stimulus_from_json( std::string_view text )
{
  auto const j = nlohmann::json::parse( text );
  if ( !j.is_object() )
    throw std::invalid_argument( "stimulus must be a JSON object of bit strings" );
  stimulus_map stimulus;
  for ( auto const& [name, bits] : j.items() )
    stimulus.emplace( name, bits.get<std::string>() );
  return stimulus;
}

uint64_t sample_cycle( sfq_circuit const& circuit, uint64_t t )
{
  auto const latency = pipeline_latency( circuit );
  if ( circuit.clocking.scheme == clock_scheme::dual )
    return ( t + latency ) * circuit.clocking.ratio - 1;
  return latency == 0 ? t : t + latency - 1;
}

std::map<std::string, std::string> sampled_outputs( waveform const& wave, sfq_circuit const& circuit, uint64_t count )
{
  std::map<std::string, std::string> sampled;
  for ( auto const& [name, bits] : wave.outputs )
  {
    std::string s;
    for ( uint64_t t = 0; t < count; ++t )
    {
      auto const c = sample_cycle( circuit, t );
      s += c < bits.size() ? bits[c] : '?';
    }
    sampled.emplace( name, std::move( s ) );
  }
  return sampled;
}

oracle_result compare_with_oracle( sfq_circuit const& circuit, netlist const& reference,
                                   std::vector<std::vector<bool>> const& vectors )
{
  auto const& ntk = circuit.ntk;
  if ( reference.num_inputs() != ntk.num_inputs() || reference.num_outputs() != ntk.num_outputs() )
    throw std::invalid_argument( "reference and circuit have different interfaces" );

  oracle_result result;
  if ( vectors.empty() )
    return result;

  auto const dual = circuit.clocking.scheme == clock_scheme::dual;
  auto const hold = dual ? circuit.clocking.ratio : 1u;
  auto const last_sample = sample_cycle( circuit, vectors.size() - 1 );

  simulator sim( circuit );
  std::vector<logic_value> in( ntk.num_inputs() );
  uint64_t next = 0;
  for ( uint64_t c = 0; c <= last_sample; ++c )
  {
    /* past the last vector the inputs keep their final value */
    auto const& vec = vectors[std::min<uint64_t>( c / hold, vectors.size() - 1 )];
    for ( auto i = 0u; i < in.size(); ++i )
      in[i] = from_bool( vec[i] );
    sim.step( in );

    while ( next < vectors.size() && sample_cycle( circuit, next ) == c )
    {
      auto const expected = eval_combinational( reference, vectors[next] );
      for ( auto o = 0u; o < ntk.num_outputs(); ++o )
      {
        if ( sim.output( o ) != from_bool( expected[o] ) )
        {
          result.passed = false;
          result.first_mismatch = oracle_mismatch{ next, ntk.outputs()[o].name, expected[o], sim.output( o ) };
          return result;
        }
      }
      ++next;
    }
  }
  return result;
}

oracle_result compare_with_oracle( sfq_circuit const& circuit, std::vector<std::vector<bool>> const& vectors )
{
  return compare_with_oracle( circuit, circuit.ntk, vectors );
}

} // namespace dlgp
