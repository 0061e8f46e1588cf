#include <dlgp/synth.hpp>

#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace dlgp
{

uint32_t cost_table::jj_of( gate_kind kind ) const
{
  switch ( kind )
  {
  case gate_kind::and2:
    return and2;
  case gate_kind::or2:
    return or2;
  case gate_kind::xor2:
    return xor2;
  case gate_kind::not1:
    return not1;
  case gate_kind::dff_dro:
    return dff_dro;
  case gate_kind::dff_ndro:
    return ndro;
  case gate_kind::splitter:
    return splitter;
  case gate_kind::repeater:
    return ndro + and2 + 2 * splitter;
  case gate_kind::buf:
    return jtl;
  case gate_kind::node:
    break;
  }
  throw std::invalid_argument( fmt::format( "no JJ cost for cell kind {}", to_string( kind ) ) );
}

cost_table cost_table_from_json( std::string_view text, cost_table base )
{
  auto const j = nlohmann::json::parse( text );
  if ( !j.is_object() )
    throw std::invalid_argument( "cost table must be a JSON object" );

  for ( auto const& [key, value] : j.items() )
  {
    if ( !value.is_number_integer() || value.get<int64_t>() <= 0 )
      throw std::invalid_argument( fmt::format( "cost of '{}' must be a positive integer", key ) );
    auto const jj = value.get<uint32_t>();
    if ( key == "AND2" )
      base.and2 = jj;
    else if ( key == "OR2" )
      base.or2 = jj;
    else if ( key == "XOR2" )
      base.xor2 = jj;
    else if ( key == "NOT" || key == "INV" )
      base.not1 = jj;
    else if ( key == "DFF_DRO" || key == "DFF" )
      base.dff_dro = jj;
    else if ( key == "SPLITTER" )
      base.splitter = jj;
    else if ( key == "JTL" || key == "BUF" )
      base.jtl = jj;
    else if ( key == "NDRO" || key == "DFF_NDRO" )
      base.ndro = jj;
    else
      throw std::invalid_argument( fmt::format( "unknown cell '{}' in cost table", key ) );
  }
  return base;
}

cost_report report_costs( sfq_circuit const& circuit, cost_table const& costs, cost_options const& ps )
{
  cost_report r;
  r.part_count = circuit.part_count;
  r.depth = circuit.source_depth;
  r.ndro_jj = costs.ndro;
  auto const dual = circuit.clocking.scheme == clock_scheme::dual;
  r.peak_throughput_ratio = dual ? 1.0 / circuit.clocking.ratio : 1.0;

  uint32_t clocked = 0;
  for ( auto const& n : circuit.ntk.nodes() )
  {
    r.jj_total += costs.jj_of( n.kind );
    switch ( n.kind )
    {
    case gate_kind::dff_dro:
      ++r.dro_count;
      break;
    case gate_kind::dff_ndro:
      ++r.ndro_count;
      break;
    case gate_kind::repeater:
      ++r.repeater_count;
      break;
    case gate_kind::splitter:
      ++r.splitter_count;
      break;
    case gate_kind::buf:
      break;
    default:
      ++r.logic_count;
    }
    if ( is_clocked( n.kind ) )
      ++clocked;
  }
  r.dff_count = r.dro_count + r.ndro_count + r.repeater_count;

  if ( ps.include_clock_overhead )
  {
    /* a binary splitter tree with n leaves has n - 1 splitters */
    auto tree = []( uint32_t leaves ) { return leaves > 1 ? leaves - 1 : 0u; };
    r.clock_splitter_count = tree( clocked );
    if ( dual )
      r.clock_splitter_count += tree( r.repeater_count );
    r.jj_total += uint64_t{ r.clock_splitter_count } * costs.splitter;
  }
  return r;
}

std::string cost_report_to_json( cost_report const& r, int indent )
{
  nlohmann::json j;
  j["logic"] = r.logic_count;
  j["dro"] = r.dro_count;
  j["ndro"] = r.ndro_count;
  j["repeater"] = r.repeater_count;
  j["dff_count"] = r.dff_count;
  j["splitter"] = r.splitter_count;
  j["clock_splitter"] = r.clock_splitter_count;
  j["jj_total"] = r.jj_total;
  j["part_count"] = r.part_count;
  j["depth"] = r.depth;
  j["peak_throughput_ratio"] = r.peak_throughput_ratio;
  j["ndro_jj"] = r.ndro_jj;
  return j.dump( indent );
}

} // namespace dlgp
