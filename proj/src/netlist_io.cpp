#include <dlgp/netlist.hpp>

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace dlgp
{

namespace
{

struct token
{
  std::string_view text;
  uint32_t line;
  uint32_t column;
};

struct gate_decl
{
  token kind;
  token name;
  std::vector<token> fanins;
};

struct output_decl
{
  token port;
  token signal;
};

/* splits one line into whitespace-separated tokens, dropping `#` comments */
std::vector<token> tokenize( std::string_view line, uint32_t line_no )
{
  std::vector<token> tokens;
  size_t i = 0;
  while ( i < line.size() )
  {
    auto const c = line[i];
    if ( c == '#' )
      break;
    if ( c == ' ' || c == '\t' || c == '\r' )
    {
      ++i;
      continue;
    }
    auto const start = i;
    while ( i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#' )
      ++i;
    tokens.push_back( { line.substr( start, i - start ), line_no, static_cast<uint32_t>( start + 1 ) } );
  }
  return tokens;
}

[[noreturn]] void fail( token const& t, std::string const& message )
{
  throw netlist_error( message, t.line, t.column );
}

bool valid_name( std::string_view name )
{
  if ( name.empty() )
    return false;
  for ( auto c : name )
  {
    if ( c == '=' || c == ',' || c == '(' || c == ')' )
      return false;
  }
  return true;
}

} // namespace

netlist parse_netlist( std::string_view text )
{
  std::string model;
  std::vector<token> inputs;
  std::vector<output_decl> outputs;
  std::vector<gate_decl> gates;

  uint32_t line_no = 0;
  bool ended = false;
  size_t pos = 0;
  while ( pos <= text.size() )
  {
    auto const eol = text.find( '\n', pos );
    auto const line = text.substr( pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos );
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto const tokens = tokenize( line, line_no );
    if ( tokens.empty() )
      continue;
    auto const& head = tokens.front();
    if ( ended )
      fail( head, "content after .end" );

    if ( head.text == ".model" )
    {
      if ( tokens.size() > 2 )
        fail( tokens[2], "unexpected token after model name" );
      model = tokens.size() == 2 ? std::string( tokens[1].text ) : std::string{};
    }
    else if ( head.text == ".inputs" )
    {
      for ( auto i = 1u; i < tokens.size(); ++i )
      {
        if ( !valid_name( tokens[i].text ) )
          fail( tokens[i], fmt::format( "invalid signal name '{}'", tokens[i].text ) );
        inputs.push_back( tokens[i] );
      }
    }
    else if ( head.text == ".outputs" )
    {
      for ( auto i = 1u; i < tokens.size(); ++i )
      {
        auto const& t = tokens[i];
        auto const eq = t.text.find( '=' );
        if ( eq == std::string_view::npos )
        {
          if ( !valid_name( t.text ) )
            fail( t, fmt::format( "invalid signal name '{}'", t.text ) );
          outputs.push_back( { t, t } );
          continue;
        }
        token port{ t.text.substr( 0, eq ), t.line, t.column };
        token signal{ t.text.substr( eq + 1 ), t.line, static_cast<uint32_t>( t.column + eq + 1 ) };
        if ( !valid_name( port.text ) )
          fail( port, fmt::format( "invalid output port in '{}'", t.text ) );
        if ( !valid_name( signal.text ) )
          fail( signal, fmt::format( "invalid output signal in '{}'", t.text ) );
        outputs.push_back( { port, signal } );
      }
    }
    else if ( head.text == ".end" )
    {
      if ( tokens.size() > 1 )
        fail( tokens[1], "unexpected token after .end" );
      ended = true;
    }
    else if ( head.text == "gate" )
    {
      if ( tokens.size() < 3 )
        fail( head, "gate line needs a kind and an output name" );
      for ( auto i = 2u; i < tokens.size(); ++i )
      {
        if ( !valid_name( tokens[i].text ) )
          fail( tokens[i], fmt::format( "invalid signal name '{}'", tokens[i].text ) );
      }
      gates.push_back( { tokens[1], tokens[2], std::vector<token>( tokens.begin() + 3, tokens.end() ) } );
    }
    else if ( head.text.starts_with( '.' ) )
    {
      fail( head, fmt::format( "unknown directive '{}'", head.text ) );
    }
    else
    {
      fail( head, fmt::format( "syntax error: unexpected '{}'", head.text ) );
    }
  }

  /* resolve names: inputs first, then gates in declaration order */
  std::unordered_map<std::string_view, std::pair<signal_ref, token>> scope;
  for ( auto i = 0u; i < inputs.size(); ++i )
  {
    if ( auto [it, ok] = scope.emplace( inputs[i].text, std::pair{ signal_ref::input( i ), inputs[i] } ); !ok )
      fail( inputs[i], fmt::format( "duplicate signal name '{}'", inputs[i].text ) );
  }
  for ( auto i = 0u; i < gates.size(); ++i )
  {
    auto const& g = gates[i];
    if ( auto [it, ok] = scope.emplace( g.name.text, std::pair{ signal_ref::node( i ), g.name } ); !ok )
      fail( g.name, fmt::format( "duplicate signal name '{}'", g.name.text ) );
  }

  auto resolve = [&]( token const& t ) {
    auto it = scope.find( t.text );
    if ( it == scope.end() )
      fail( t, fmt::format( "reference to undeclared signal '{}'", t.text ) );
    return it->second.first;
  };

  netlist_builder builder( model );
  for ( auto const& t : inputs )
    builder.add_input( std::string( t.text ) );
  for ( auto const& g : gates )
  {
    auto const kind = gate_kind_from_string( g.kind.text );
    if ( !kind )
      fail( g.kind, fmt::format( "unsupported gate kind '{}'", g.kind.text ) );
    if ( auto const arity = gate_arity( *kind ); arity ? g.fanins.size() != *arity : g.fanins.empty() )
    {
      fail( g.name, fmt::format( "gate '{}' of kind {} expects {} fanins, got {}", g.name.text, to_string( *kind ),
                                 arity ? fmt::format( "{}", *arity ) : std::string( "at least 1" ), g.fanins.size() ) );
    }
    std::vector<signal_ref> fanins;
    fanins.reserve( g.fanins.size() );
    for ( auto const& f : g.fanins )
      fanins.push_back( resolve( f ) );
    builder.add_gate( *kind, std::string( g.name.text ), std::move( fanins ) );
  }
  for ( auto const& o : outputs )
    builder.add_output( std::string( o.port.text ), resolve( o.signal ) );

  try
  {
    return std::move( builder ).build();
  }
  catch ( netlist_error const& e )
  {
    /* attach the declaration site of the offending signal */
    if ( auto it = scope.find( e.subject() ); it != scope.end() )
      throw netlist_error( e.detail(), it->second.second.line, it->second.second.column, e.subject() );
    for ( auto const& o : outputs )
      if ( o.port.text == e.subject() )
        throw netlist_error( e.detail(), o.port.line, o.port.column, e.subject() );
    throw;
  }
}

netlist read_netlist_file( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw std::runtime_error( fmt::format( "cannot open '{}'", path ) );
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto const text = buffer.str();
  if ( path.ends_with( ".json" ) )
    return netlist_from_json( text );
  return parse_netlist( text );
}

std::string write_netlist( netlist const& ntk )
{
  std::string out;
  if ( !ntk.model_name().empty() )
    out += fmt::format( ".model {}\n", ntk.model_name() );
  out += ".inputs";
  for ( auto const& name : ntk.inputs() )
    out += " " + name;
  out += "\n.outputs";
  for ( auto const& po : ntk.outputs() )
  {
    auto const& driver = ntk.signal_name( po.driver );
    out += po.name == driver ? " " + po.name : fmt::format( " {}={}", po.name, driver );
  }
  out += "\n";
  for ( auto const& n : ntk.nodes() )
  {
    out += fmt::format( "gate {} {}", to_string( n.kind ), n.name );
    for ( auto f : n.fanins )
      out += " " + ntk.signal_name( f );
    out += "\n";
  }
  out += ".end\n";
  return out;
}

std::string netlist_to_json( netlist const& ntk, int indent )
{
  nlohmann::json j;
  j["model"] = ntk.model_name();
  j["inputs"] = ntk.inputs();
  j["outputs"] = nlohmann::json::array();
  for ( auto const& po : ntk.outputs() )
    j["outputs"].push_back( { { "name", po.name }, { "driver", ntk.signal_name( po.driver ) } } );
  j["gates"] = nlohmann::json::array();
  for ( auto const& n : ntk.nodes() )
  {
    nlohmann::json fanins = nlohmann::json::array();
    for ( auto f : n.fanins )
      fanins.push_back( ntk.signal_name( f ) );
    j["gates"].push_back( { { "name", n.name }, { "kind", to_string( n.kind ) }, { "fanins", fanins } } );
  }
  return j.dump( indent );
}

netlist netlist_from_json( std::string_view text )
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse( text );
  }
  catch ( nlohmann::json::parse_error const& e )
  {
    throw netlist_error( fmt::format( "invalid JSON: {}", e.what() ) );
  }

  try
  {
    /* re-emit as structural text so both formats share one validation path */
    std::string structural;
    if ( auto m = j.value( "model", std::string{} ); !m.empty() )
      structural += ".model " + m + "\n";
    structural += ".inputs";
    for ( auto const& name : j.at( "inputs" ) )
      structural += " " + name.get<std::string>();
    structural += "\n.outputs";
    for ( auto const& po : j.at( "outputs" ) )
      structural += fmt::format( " {}={}", po.at( "name" ).get<std::string>(), po.at( "driver" ).get<std::string>() );
    structural += "\n";
    for ( auto const& g : j.at( "gates" ) )
    {
      structural += fmt::format( "gate {} {}", g.at( "kind" ).get<std::string>(), g.at( "name" ).get<std::string>() );
      for ( auto const& f : g.at( "fanins" ) )
        structural += " " + f.get<std::string>();
      structural += "\n";
    }
    return parse_netlist( structural );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw netlist_error( fmt::format( "malformed netlist JSON: {}", e.what() ) );
  }
}

} // namespace dlgp
