#include "draft.hpp"

#include <span>

#include <fmt/format.h>

namespace dlgp::detail
{

draft draft::from_netlist( netlist const& ntk )
{
  draft d( ntk.model_name() );
  for ( auto const& name : ntk.inputs() )
    d.add_input( name );
  for ( auto const& po : ntk.outputs() )
    d._taken.insert( po.name );
  for ( auto const& n : ntk.nodes() )
    d._taken.insert( n.name );
  for ( auto const& n : ntk.nodes() )
    d._cells.push_back( { n.name, n.kind, n.fanins, std::nullopt, 0 } );
  for ( auto const& po : ntk.outputs() )
    d._outputs.push_back( po );
  return d;
}

std::string draft::reserve( std::string const& base )
{
  if ( _taken.insert( base ).second )
    return base;
  auto& n = _suffix[base];
  std::string candidate;
  do
  {
    candidate = fmt::format( "{}_{}", base, ++n );
  } while ( !_taken.insert( candidate ).second );
  return candidate;
}

signal_ref draft::add_input( std::string const& name )
{
  _taken.insert( name );
  _inputs.push_back( name );
  return signal_ref::input( static_cast<uint32_t>( _inputs.size() - 1 ) );
}

signal_ref draft::add_cell( gate_kind kind, std::string const& base, std::vector<signal_ref> fanins,
                            std::optional<insertion_reason> reason, uint32_t part )
{
  _cells.push_back( { reserve( base ), kind, std::move( fanins ), reason, part } );
  return signal_ref::node( static_cast<uint32_t>( _cells.size() - 1 ) );
}

void draft::add_output( std::string name, signal_ref driver )
{
  _taken.insert( name );
  _outputs.push_back( { std::move( name ), driver } );
}

void draft::insert_splitters()
{
  /* a sink is a pointer to the signal_ref slot that reads the net */
  std::vector<std::vector<signal_ref*>> sinks_of_input( _inputs.size() );
  std::vector<std::vector<signal_ref*>> sinks_of_cell( _cells.size() );
  auto sinks = [&]( signal_ref s ) -> auto& { return s.is_input() ? sinks_of_input[s.index] : sinks_of_cell[s.index]; };

  auto const original = _cells.size();
  for ( auto& c : _cells )
    for ( auto& f : c.fanins )
      sinks( f ).push_back( &f );
  for ( auto& po : _outputs )
    sinks( po.driver ).push_back( &po.driver );

  auto distribute = [&]( auto&& self, signal_ref root, std::string const& base, uint32_t part,
                         std::span<signal_ref*> targets ) -> void {
    if ( targets.size() == 1 )
    {
      *targets[0] = root;
      return;
    }
    auto const s = add_cell( gate_kind::splitter, base, { root }, insertion_reason::fanout_splitter, part );
    auto const half = ( targets.size() + 1 ) / 2;
    self( self, s, base, part, targets.subspan( 0, half ) );
    self( self, s, base, part, targets.subspan( half ) );
  };

  auto expand = [&]( signal_ref driver, std::vector<signal_ref*>& targets ) {
    if ( targets.size() < 2 )
      return;
    auto const base = name_of( driver ) + "_spl";
    distribute( distribute, driver, base, part_of( driver ), std::span<signal_ref*>( targets ) );
  };

  for ( auto i = 0u; i < _inputs.size(); ++i )
    expand( signal_ref::input( i ), sinks_of_input[i] );
  for ( auto i = 0u; i < original; ++i )
    expand( signal_ref::node( i ), sinks_of_cell[i] );
}

sfq_circuit draft::finish( clock_plan clocking, bool keep_parts ) &&
{
  netlist_builder builder( _model );
  for ( auto const& name : _inputs )
    builder.add_input( name );

  sfq_circuit circuit;
  circuit.clocking = clocking;
  for ( auto& c : _cells )
  {
    builder.add_gate( c.kind, c.name, c.fanins );
    circuit.provenance.push_back( c.reason );
    if ( keep_parts )
      circuit.part_of.push_back( c.part );
  }
  for ( auto& po : _outputs )
    builder.add_output( po.name, po.driver );
  circuit.ntk = std::move( builder ).build();
  return circuit;
}

} // namespace dlgp::detail
