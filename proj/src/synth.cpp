#include <dlgp/partition.hpp>
#include <dlgp/synth.hpp>

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "draft.hpp"

namespace dlgp
{

std::string_view to_string( insertion_reason reason )
{
  switch ( reason )
  {
  case insertion_reason::path_balance:
    return "path_balance";
  case insertion_reason::repeater:
    return "repeater";
  case insertion_reason::po_balance:
    return "po_balance";
  case insertion_reason::fanout_splitter:
    return "fanout_splitter";
  }
  return "?";
}

namespace
{

/* Synthesis accepts mapped logic plus DRO flip-flops; BUFs are swept beforehand. */
void require_synthesizable( netlist const& ntk, std::string_view flow )
{
  for ( auto const& n : ntk.nodes() )
  {
    switch ( n.kind )
    {
    case gate_kind::and2:
    case gate_kind::or2:
    case gate_kind::xor2:
    case gate_kind::not1:
    case gate_kind::dff_dro:
    case gate_kind::buf:
      break;
    default:
      throw netlist_error( fmt::format( "{} cannot synthesize gate '{}' of kind {}", flow, n.name, to_string( n.kind ) ),
                           0, 0, n.name );
    }
  }
}

} // namespace

sfq_circuit as_circuit( netlist const& ntk )
{
  sfq_circuit circuit;
  circuit.ntk = ntk;
  circuit.provenance.assign( ntk.num_nodes(), std::nullopt );
  circuit.source_depth = levelize( ntk ).depth;
  return circuit;
}

sfq_circuit full_path_balance( netlist const& input )
{
  require_synthesizable( input, "full path balancing" );
  auto const ntk = sweep_buffers( input );
  auto const levels = levelize( ntk );
  auto d = detail::draft::from_netlist( ntk );

  auto delay = [&]( signal_ref from, std::string const& base, uint32_t count, insertion_reason reason ) {
    for ( auto i = 0u; i < count; ++i )
      from = d.add_cell( gate_kind::dff_dro, base, { from }, reason );
    return from;
  };

  for ( auto v = 0u; v < ntk.num_nodes(); ++v )
  {
    auto const lv = levels.level[v];
    for ( auto pin = 0u; pin < ntk.node( v ).fanins.size(); ++pin )
    {
      auto const f = ntk.node( v ).fanins[pin];
      auto const slack = lv - levels.of( f ) - 1;
      if ( slack == 0 )
        continue;
      auto const base = fmt::format( "{}_{}_dff", ntk.signal_name( f ), ntk.node( v ).name );
      auto const tail = delay( f, base, slack, insertion_reason::path_balance );
      d.cells()[v].fanins[pin] = tail;
    }
  }
  for ( auto& po : d.outputs() )
  {
    auto const slack = levels.depth - levels.of( po.driver );
    if ( slack > 0 )
      po.driver = delay( po.driver, fmt::format( "{}_po_dff", po.name ), slack, insertion_reason::po_balance );
  }

  d.insert_splitters();
  auto circuit = std::move( d ).finish( { clock_scheme::single, 1 }, false );
  circuit.source_depth = levels.depth;
  return circuit;
}

sfq_circuit share_and_retime( sfq_circuit const& circuit )
{
  if ( circuit.clocking.scheme != clock_scheme::single )
    throw std::invalid_argument( "chain sharing applies to single-clock circuits" );

  auto const& ntk = circuit.ntk;
  auto inserted = [&]( uint32_t v ) {
    auto const& reason = v < circuit.provenance.size() ? circuit.provenance[v] : std::nullopt;
    return reason.has_value();
  };
  auto is_balance_dff = [&]( uint32_t v ) {
    return ntk.node( v ).kind == gate_kind::dff_dro && inserted( v );
  };

  /* trace every sink back through splitters and inserted DFFs to its logical driver */
  std::vector<signal_ref> root( ntk.num_nodes() );
  std::vector<uint32_t> depth( ntk.num_nodes(), 0 );
  auto trace = [&]( signal_ref s ) -> std::pair<signal_ref, uint32_t> {
    if ( s.is_input() )
      return { s, 0u };
    return { root[s.index], depth[s.index] };
  };
  for ( auto v : ntk.topological_order() )
  {
    auto const& n = ntk.node( v );
    if ( n.kind == gate_kind::splitter || is_balance_dff( v ) )
    {
      auto [r, k] = trace( n.fanins[0] );
      root[v] = r;
      depth[v] = k + ( n.kind == gate_kind::splitter ? 0u : 1u );
    }
    else
    {
      root[v] = signal_ref::node( v );
    }
  }

  detail::draft d( ntk.model_name() );
  for ( auto const& name : ntk.inputs() )
    d.add_input( name );

  /* kept cells first, in their original order; fanins are patched afterwards */
  std::vector<uint32_t> new_index( ntk.num_nodes(), 0 );
  std::vector<uint32_t> kept;
  for ( auto v = 0u; v < ntk.num_nodes(); ++v )
  {
    auto const& n = ntk.node( v );
    if ( n.kind == gate_kind::splitter || is_balance_dff( v ) )
      continue;
    new_index[v] = static_cast<uint32_t>( kept.size() );
    kept.push_back( v );
    d.add_cell( n.kind, n.name, {}, circuit.provenance.empty() ? std::nullopt : circuit.provenance[v] );
  }
  for ( auto const& po : ntk.outputs() )
    d.add_output( po.name, po.driver );

  auto remap = [&]( signal_ref s ) { return s.is_input() ? s : signal_ref::node( new_index[s.index] ); };

  /* longest chain needed per driver, and whether a logic gate needs a given tap */
  struct chain_need
  {
    uint32_t length{ 0 };
    uint32_t deepest_gate_tap{ 0 };
  };
  std::vector<chain_need> need_in( ntk.num_inputs() );
  std::vector<chain_need> need_node( ntk.num_nodes() );
  auto need = [&]( signal_ref r ) -> chain_need& { return r.is_input() ? need_in[r.index] : need_node[r.index]; };

  for ( auto v : kept )
    for ( auto f : ntk.node( v ).fanins )
    {
      auto [r, k] = trace( f );
      need( r ).length = std::max( need( r ).length, k );
      need( r ).deepest_gate_tap = std::max( need( r ).deepest_gate_tap, k );
    }
  for ( auto const& po : ntk.outputs() )
  {
    auto [r, k] = trace( po.driver );
    need( r ).length = std::max( need( r ).length, k );
  }

  /* taps[r][k] is the signal k DFFs after driver r */
  auto build_taps = [&]( signal_ref r ) {
    std::vector<signal_ref> taps{ remap( r ) };
    auto const& nd = need( r );
    auto const base = fmt::format( "{}_dff", r.is_input() ? ntk.input_name( r.index ) : ntk.node( r.index ).name );
    for ( auto k = 1u; k <= nd.length; ++k )
    {
      auto const reason = k <= nd.deepest_gate_tap ? insertion_reason::path_balance : insertion_reason::po_balance;
      taps.push_back( d.add_cell( gate_kind::dff_dro, base, { taps.back() }, reason ) );
    }
    return taps;
  };
  std::vector<std::vector<signal_ref>> taps_in( ntk.num_inputs() );
  std::vector<std::vector<signal_ref>> taps_node( ntk.num_nodes() );
  for ( auto i = 0u; i < ntk.num_inputs(); ++i )
    taps_in[i] = build_taps( signal_ref::input( i ) );
  for ( auto v : kept )
    taps_node[v] = build_taps( signal_ref::node( v ) );
  auto tap = [&]( signal_ref s ) {
    auto [r, k] = trace( s );
    return r.is_input() ? taps_in[r.index][k] : taps_node[r.index][k];
  };

  for ( auto i = 0u; i < kept.size(); ++i )
    for ( auto f : ntk.node( kept[i] ).fanins )
      d.cells()[i].fanins.push_back( tap( f ) );
  for ( auto& po : d.outputs() )
    po.driver = tap( po.driver );

  d.insert_splitters();
  auto result = std::move( d ).finish( circuit.clocking, false );
  result.source_depth = circuit.source_depth;
  return result;
}

sfq_circuit dcm_synthesize( netlist const& input, dcm_params const& ps )
{
  if ( ps.p < 2 )
    throw std::invalid_argument( fmt::format( "dual clocking needs p >= 2 (got {})", ps.p ) );
  require_synthesizable( input, "dual clocking" );
  auto const ntk = sweep_buffers( input );
  auto const levels = levelize( ntk );
  auto const chain = build_chain_graph( ntk, levels, ps.chain );
  auto const sol = partition_netlist( ntk, levels, chain, ps.p );
  auto const K = sol.part_count();

  auto d = detail::draft::from_netlist( ntk );
  for ( auto v = 0u; v < ntk.num_nodes(); ++v )
    d.cells()[v].part = sol.part_of[v];
  auto part = [&]( signal_ref s ) { return s.is_input() ? 0u : sol.part_of[s.index]; };

  /* one repeater per net and crossed boundary; outputs count as sinks of the last part */
  auto repeat_net = [&]( signal_ref driver ) {
    auto const first = part( driver );
    uint32_t last_gate = first;
    for ( auto const& e : ntk.fanout( driver ) )
      if ( !e.to_output )
        last_gate = std::max( last_gate, sol.part_of[e.index] );
    auto last = last_gate;
    if ( ntk.fanout( driver ).size() > 0 && ntk.fanout( driver ).back().to_output )
      last = K - 1;
    if ( last == first )
      return;

    /* stage[k - first] is the signal visible in part k */
    std::vector<signal_ref> stage{ driver };
    auto const base = fmt::format( "{}_rep", ntk.signal_name( driver ) );
    for ( auto b = first; b < last; ++b )
    {
      auto const reason = b < last_gate ? insertion_reason::repeater : insertion_reason::po_balance;
      stage.push_back( d.add_cell( gate_kind::repeater, base, { stage.back() }, reason, b + 1 ) );
    }
    for ( auto const& e : ntk.fanout( driver ) )
    {
      if ( e.to_output )
        d.outputs()[e.index].driver = stage[K - 1 - first];
      else
        d.cells()[e.index].fanins[e.pin] = stage[sol.part_of[e.index] - first];
    }
  };
  for ( auto i = 0u; i < ntk.num_inputs(); ++i )
    repeat_net( signal_ref::input( i ) );
  for ( auto v = 0u; v < ntk.num_nodes(); ++v )
    repeat_net( signal_ref::node( v ) );

  d.insert_splitters();
  auto circuit = std::move( d ).finish( { clock_scheme::dual, ps.p }, true );
  circuit.part_count = K;
  circuit.cuts = sol.cuts;
  circuit.source_depth = levels.depth;
  return circuit;
}

uint32_t pipeline_latency( sfq_circuit const& circuit )
{
  auto const& ntk = circuit.ntk;
  auto const dual = circuit.clocking.scheme == clock_scheme::dual;

  /* stages along the longest path: clocked gates for single clocking, repeaters for dual */
  std::vector<uint32_t> stages( ntk.num_nodes(), 0 );
  auto of = [&]( signal_ref s ) { return s.is_input() ? 0u : stages[s.index]; };
  for ( auto v : ntk.topological_order() )
  {
    auto const& n = ntk.node( v );
    uint32_t in = 0;
    for ( auto f : n.fanins )
      in = std::max( in, of( f ) );
    auto const counts = dual ? n.kind == gate_kind::repeater : is_clocked( n.kind );
    stages[v] = in + ( counts ? 1u : 0u );
  }
  uint32_t longest = 0;
  for ( auto const& po : ntk.outputs() )
    longest = std::max( longest, of( po.driver ) );
  return dual ? longest + 1 : longest;
}

} // namespace dlgp
