#include <dlgp/synth.hpp>

#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace dlgp
{

std::string write_circuit( sfq_circuit const& circuit )
{
  auto const dual = circuit.clocking.scheme == clock_scheme::dual;
  auto header = dual ? fmt::format( ".clock dual {}\n", circuit.clocking.ratio ) : std::string( ".clock single\n" );
  return header + write_netlist( circuit.ntk );
}

sfq_circuit read_circuit( std::string_view text )
{
  clock_plan clocking;
  std::string body;
  body.reserve( text.size() );

  uint32_t line_no = 0;
  std::istringstream in{ std::string( text ) };
  for ( std::string line; std::getline( in, line ); )
  {
    ++line_no;
    std::istringstream words( line );
    std::string head;
    words >> head;
    if ( head != ".clock" )
    {
      body += line + '\n';
      continue;
    }

    std::string scheme;
    words >> scheme;
    if ( scheme == "single" )
    {
      clocking = { clock_scheme::single, 1 };
    }
    else if ( scheme == "dual" )
    {
      uint32_t ratio = 0;
      if ( !( words >> ratio ) || ratio < 2 )
        throw netlist_error( "dual clocking needs an integer ratio of at least 2", line_no, 1 );
      clocking = { clock_scheme::dual, ratio };
    }
    else
    {
      throw netlist_error( fmt::format( "unknown clock scheme '{}'", scheme ), line_no, 1 );
    }
    body += "#\n"; /* keeps line numbers of later diagnostics */
  }

  sfq_circuit circuit;
  circuit.ntk = parse_netlist( body );
  circuit.clocking = clocking;
  circuit.provenance.assign( circuit.ntk.num_nodes(), std::nullopt );
  if ( clocking.scheme == clock_scheme::dual )
    circuit.part_count = pipeline_latency( circuit );
  else
    circuit.source_depth = pipeline_latency( circuit );
  return circuit;
}

std::string provenance_to_json( sfq_circuit const& circuit, int indent )
{
  auto j = nlohmann::json::object();
  for ( auto v = 0u; v < circuit.provenance.size() && v < circuit.ntk.num_nodes(); ++v )
  {
    if ( circuit.provenance[v] )
      j[circuit.ntk.node( v ).name] = to_string( *circuit.provenance[v] );
  }
  return j.dump( indent );
}

} // namespace dlgp
