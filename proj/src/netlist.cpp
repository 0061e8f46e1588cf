#include <dlgp/netlist.hpp>

#include <algorithm>
#include <array>
#include <queue>

#include <fmt/format.h>

namespace dlgp
{

namespace
{

struct kind_info
{
  gate_kind kind;
  std::string_view name;
  int arity; /* -1: variable */
  bool clocked;
};

constexpr std::array<kind_info, 10> kind_table{ {
    { gate_kind::and2, "AND2", 2, true },
    { gate_kind::or2, "OR2", 2, true },
    { gate_kind::xor2, "XOR2", 2, true },
    { gate_kind::not1, "NOT", 1, true },
    { gate_kind::dff_dro, "DFF_DRO", 1, true },
    { gate_kind::dff_ndro, "DFF_NDRO", 1, true },
    { gate_kind::splitter, "SPLITTER", 1, false },
    { gate_kind::repeater, "REPEATER", 1, true },
    { gate_kind::buf, "BUF", 1, false },
    { gate_kind::node, "NODE", -1, false },
} };

kind_info const& info( gate_kind kind )
{
  return kind_table[static_cast<size_t>( kind )];
}

} // namespace

std::string_view to_string( gate_kind kind )
{
  return info( kind ).name;
}

std::optional<gate_kind> gate_kind_from_string( std::string_view text )
{
  for ( auto const& k : kind_table )
  {
    if ( k.name == text )
      return k.kind;
  }
  if ( text == "DFF" )
    return gate_kind::dff_dro;
  if ( text == "INV" )
    return gate_kind::not1;
  return std::nullopt;
}

std::optional<uint32_t> gate_arity( gate_kind kind )
{
  auto const a = info( kind ).arity;
  if ( a < 0 )
    return std::nullopt;
  return static_cast<uint32_t>( a );
}

bool is_clocked( gate_kind kind )
{
  return info( kind ).clocked;
}

netlist_error::netlist_error( std::string const& message, uint32_t line, uint32_t column, std::string subject )
    : std::runtime_error( line == 0 ? message : fmt::format( "{}:{}: {}", line, column, message ) ),
      _detail( message ),
      _subject( std::move( subject ) ),
      _line( line ),
      _column( column )
{
}

/* -------------------------------------------------------------- netlist -- */

std::string const& netlist::signal_name( signal_ref s ) const
{
  return s.is_input() ? _inputs.at( s.index ) : _nodes.at( s.index ).name;
}

std::optional<signal_ref> netlist::find( std::string_view name ) const
{
  if ( auto it = _by_name.find( std::string( name ) ); it != _by_name.end() )
    return it->second;
  return std::nullopt;
}

std::span<fanout_entry const> netlist::fanout( signal_ref s ) const
{
  auto const i = slot( s );
  return std::span<fanout_entry const>( _fanout_entries.data() + _fanout_offsets[i],
                                        _fanout_offsets[i + 1] - _fanout_offsets[i] );
}

uint32_t netlist::count( gate_kind kind ) const
{
  return static_cast<uint32_t>( std::count_if( _nodes.begin(), _nodes.end(),
                                               [kind]( auto const& n ) { return n.kind == kind; } ) );
}

/* -------------------------------------------------------------- builder -- */

netlist_builder::netlist_builder( std::string model_name )
{
  _ntk._model = std::move( model_name );
}

signal_ref netlist_builder::add_input( std::string name )
{
  auto const s = signal_ref::input( num_inputs() );
  if ( !_ntk._by_name.emplace( name, s ).second )
    throw netlist_error( fmt::format( "duplicate signal name '{}'", name ) );
  _ntk._inputs.push_back( std::move( name ) );
  return s;
}

signal_ref netlist_builder::add_gate( gate_kind kind, std::string name, std::vector<signal_ref> fanins )
{
  auto const s = signal_ref::node( num_nodes() );
  if ( !_ntk._by_name.emplace( name, s ).second )
    throw netlist_error( fmt::format( "duplicate signal name '{}'", name ) );
  _ntk._nodes.push_back( { std::move( name ), kind, std::move( fanins ) } );
  return s;
}

void netlist_builder::add_output( std::string name, signal_ref driver )
{
  _ntk._outputs.push_back( { std::move( name ), driver } );
}

bool netlist_builder::has_name( std::string const& name ) const
{
  return _ntk._by_name.count( name ) != 0;
}

std::string netlist_builder::fresh_name( std::string const& base )
{
  if ( !has_name( base ) )
    return base;
  auto& n = _suffix[base];
  std::string candidate;
  do
  {
    candidate = fmt::format( "{}_{}", base, ++n );
  } while ( has_name( candidate ) );
  return candidate;
}

netlist netlist_builder::build() &&
{
  auto& ntk = _ntk;
  auto const num_in = ntk.num_inputs();
  auto const num_nd = ntk.num_nodes();

  auto check_ref = [&]( signal_ref s, std::string const& where ) {
    if ( s.is_input() ? s.index >= num_in : s.index >= num_nd )
      throw netlist_error( fmt::format( "'{}' references an undeclared signal", where ), 0, 0, where );
  };

  for ( auto const& n : ntk._nodes )
  {
    if ( n.kind == gate_kind::node ? n.fanins.empty() : n.fanins.size() != *gate_arity( n.kind ) )
    {
      throw netlist_error( fmt::format( "gate '{}' of kind {} has {} fanins", n.name, to_string( n.kind ),
                                        n.fanins.size() ),
                           0, 0, n.name );
    }
    for ( auto f : n.fanins )
      check_ref( f, n.name );
  }

  std::unordered_map<std::string, uint32_t> po_names;
  for ( auto const& po : ntk._outputs )
  {
    check_ref( po.driver, po.name );
    if ( !po_names.emplace( po.name, 0 ).second )
      throw netlist_error( fmt::format( "duplicate output name '{}'", po.name ) );
  }

  /* fanout (CSR) */
  auto const slots = num_in + num_nd;
  ntk._fanout_offsets.assign( slots + 1, 0 );
  for ( auto const& n : ntk._nodes )
    for ( auto f : n.fanins )
      ++ntk._fanout_offsets[ntk.slot( f ) + 1];
  for ( auto const& po : ntk._outputs )
    ++ntk._fanout_offsets[ntk.slot( po.driver ) + 1];
  for ( auto i = 0u; i < slots; ++i )
    ntk._fanout_offsets[i + 1] += ntk._fanout_offsets[i];
  ntk._fanout_entries.resize( ntk._fanout_offsets.back() );
  std::vector<uint32_t> cursor( ntk._fanout_offsets.begin(), ntk._fanout_offsets.end() - 1 );
  for ( auto i = 0u; i < num_nd; ++i )
  {
    auto const& fanins = ntk._nodes[i].fanins;
    for ( auto pin = 0u; pin < fanins.size(); ++pin )
      ntk._fanout_entries[cursor[ntk.slot( fanins[pin] )]++] = { false, i, pin };
  }
  for ( auto o = 0u; o < ntk._outputs.size(); ++o )
    ntk._fanout_entries[cursor[ntk.slot( ntk._outputs[o].driver )]++] = { true, o, 0 };

  /* Kahn's algorithm over gate-to-gate edges */
  std::vector<uint32_t> pending( num_nd, 0 );
  for ( auto i = 0u; i < num_nd; ++i )
    for ( auto f : ntk._nodes[i].fanins )
      pending[i] += f.is_node() ? 1 : 0;

  std::vector<uint32_t> ready;
  for ( auto i = num_nd; i-- > 0; )
    if ( pending[i] == 0 )
      ready.push_back( i );

  ntk._topo.clear();
  ntk._topo.reserve( num_nd );
  while ( !ready.empty() )
  {
    auto const v = ready.back();
    ready.pop_back();
    ntk._topo.push_back( v );
    for ( auto const& e : ntk.fanout( signal_ref::node( v ) ) )
    {
      if ( !e.to_output && --pending[e.index] == 0 )
        ready.push_back( e.index );
    }
  }
  if ( ntk._topo.size() != num_nd )
  {
    auto const it = std::find_if( pending.begin(), pending.end(), []( auto c ) { return c != 0; } );
    auto const& name = ntk._nodes[std::distance( pending.begin(), it )].name;
    throw netlist_error( fmt::format( "combinational cycle through gate '{}'", name ), 0, 0, name );
  }

  return std::move( ntk );
}

netlist sweep_buffers( netlist const& ntk )
{
  std::vector<signal_ref> resolved( ntk.num_nodes() );
  for ( auto v : ntk.topological_order() )
  {
    auto const& n = ntk.node( v );
    if ( n.kind == gate_kind::buf )
    {
      auto const f = n.fanins[0];
      resolved[v] = f.is_input() ? f : resolved[f.index];
    }
    else
    {
      resolved[v] = signal_ref::node( v );
    }
  }

  netlist_builder builder( ntk.model_name() );
  for ( auto const& name : ntk.inputs() )
    builder.add_input( name );

  std::vector<uint32_t> new_index( ntk.num_nodes(), 0 );
  uint32_t next = 0;
  for ( auto i = 0u; i < ntk.num_nodes(); ++i )
    if ( ntk.node( i ).kind != gate_kind::buf )
      new_index[i] = next++;

  auto map = [&]( signal_ref s ) {
    if ( s.is_input() )
      return s;
    auto const r = resolved[s.index];
    return r.is_input() ? r : signal_ref::node( new_index[r.index] );
  };

  for ( auto i = 0u; i < ntk.num_nodes(); ++i )
  {
    auto const& n = ntk.node( i );
    if ( n.kind == gate_kind::buf )
      continue;
    std::vector<signal_ref> fanins;
    for ( auto f : n.fanins )
      fanins.push_back( map( f ) );
    builder.add_gate( n.kind, n.name, std::move( fanins ) );
  }
  for ( auto const& po : ntk.outputs() )
  {
    /* an output named after a swept buffer keeps its name */
    builder.add_output( po.name, map( po.driver ) );
  }
  return std::move( builder ).build();
}

/* --------------------------------------------------------------- levels -- */

level_map levelize( netlist const& ntk )
{
  level_map lm;
  lm.level.assign( ntk.num_nodes(), 0 );
  for ( auto v : ntk.topological_order() )
  {
    uint32_t highest = 0;
    for ( auto f : ntk.node( v ).fanins )
      highest = std::max( highest, lm.of( f ) );
    lm.level[v] = highest + 1;
    lm.depth = std::max( lm.depth, lm.level[v] );
  }
  return lm;
}

/* ----------------------------------------------------------- evaluation -- */

std::vector<bool> eval_combinational( netlist const& ntk, std::vector<bool> const& inputs )
{
  if ( inputs.size() != ntk.num_inputs() )
  {
    throw std::invalid_argument( fmt::format( "expected {} input values, got {}", ntk.num_inputs(), inputs.size() ) );
  }

  std::vector<bool> value( ntk.num_nodes(), false );
  auto get = [&]( signal_ref s ) { return s.is_input() ? inputs[s.index] : value[s.index]; };

  for ( auto v : ntk.topological_order() )
  {
    auto const& n = ntk.node( v );
    switch ( n.kind )
    {
    case gate_kind::and2:
      value[v] = get( n.fanins[0] ) && get( n.fanins[1] );
      break;
    case gate_kind::or2:
      value[v] = get( n.fanins[0] ) || get( n.fanins[1] );
      break;
    case gate_kind::xor2:
      value[v] = get( n.fanins[0] ) != get( n.fanins[1] );
      break;
    case gate_kind::not1:
      value[v] = !get( n.fanins[0] );
      break;
    case gate_kind::node:
      throw std::invalid_argument( fmt::format( "gate '{}' of kind NODE has no Boolean function", n.name ) );
    default:
      value[v] = get( n.fanins[0] );
      break;
    }
  }

  std::vector<bool> result;
  result.reserve( ntk.num_outputs() );
  for ( auto const& po : ntk.outputs() )
    result.push_back( get( po.driver ) );
  return result;
}

std::map<std::string, bool> eval_combinational( netlist const& ntk, std::map<std::string, bool> const& inputs )
{
  std::vector<bool> values;
  values.reserve( ntk.num_inputs() );
  for ( auto const& name : ntk.inputs() )
  {
    auto it = inputs.find( name );
    if ( it == inputs.end() )
      throw std::invalid_argument( fmt::format( "primary input '{}' is not assigned", name ) );
    values.push_back( it->second );
  }
  auto const out = eval_combinational( ntk, values );
  std::map<std::string, bool> result;
  for ( auto o = 0u; o < ntk.num_outputs(); ++o )
    result[ntk.outputs()[o].name] = out[o];
  return result;
}

} // namespace dlgp
