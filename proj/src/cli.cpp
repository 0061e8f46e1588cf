#include <dlgp/cli.hpp>
#include <dlgp/generators.hpp>
#include <dlgp/partition.hpp>
#include <dlgp/sim.hpp>
#include <dlgp/synth.hpp>

#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace dlgp
{

namespace
{

std::string slurp( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw std::runtime_error( fmt::format( "cannot open '{}'", path ) );
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spill( std::string const& path, std::string const& text )
{
  std::ofstream out( path );
  if ( !out )
    throw std::runtime_error( fmt::format( "cannot write '{}'", path ) );
  out << text;
}

std::string describe( netlist_error const& e, std::string const& file )
{
  if ( e.line() > 0 )
    return fmt::format( "{}:{}:{}: {}", file, e.line(), e.column(), e.detail() );
  return fmt::format( "{}: {}", file, e.detail() );
}

enum class method
{
  fpb,
  fpb_share,
  dcm
};

struct run_config
{
  std::vector<std::string> inputs;
  std::vector<uint32_t> p;
  std::string mode{ "hyper" };
  std::string method_name{ "dcm" };
  std::string costs_path;
  std::string format{ "text" };
  std::string output;
  std::string provenance;
  std::string stimulus;
  bool emit_chain{ false };
  bool clock_overhead{ false };
  bool include_pi_nets{ false };
  bool hold{ false };
  bool flush{ false };
  bool record_internal{ false };
  uint64_t seed{ 1 };
  uint64_t cycles{ 0 };
  random_params random;
};

chain_params chain_of( run_config const& cfg )
{
  return { weight_mode_from_string( cfg.mode ), cfg.include_pi_nets };
}

cost_table costs_of( run_config const& cfg )
{
  auto path = cfg.costs_path;
  if ( path.empty() )
    if ( auto const* env = std::getenv( "DLGP_COST_TABLE" ); env && *env )
      path = env;
  return path.empty() ? cost_table{} : cost_table_from_json( slurp( path ) );
}

method method_of( std::string const& name )
{
  if ( name == "fpb" )
    return method::fpb;
  if ( name == "fpb-share" )
    return method::fpb_share;
  return method::dcm;
}

uint32_t single_p( run_config const& cfg, uint32_t fallback )
{
  if ( cfg.p.size() > 1 )
    throw CLI::ValidationError( "--p", "this command takes a single depth bound" );
  return cfg.p.empty() ? fallback : cfg.p.front();
}

sfq_circuit synthesize( netlist const& ntk, method m, uint32_t p, run_config const& cfg )
{
  switch ( m )
  {
  case method::fpb:
    return full_path_balance( ntk );
  case method::fpb_share:
    return share_and_retime( full_path_balance( ntk ) );
  case method::dcm:
    break;
  }
  return dcm_synthesize( ntk, { p, chain_of( cfg ) } );
}

/* ------------------------------------------------------------ commands -- */

void cmd_partition( run_config const& cfg, std::ostream& out )
{
  auto const p = single_p( cfg, 0 );
  if ( p < 1 )
    throw CLI::ValidationError( "--p", "partition needs --p >= 1" );
  auto const ntk = read_netlist_file( cfg.inputs.front() );
  auto const levels = levelize( ntk );
  auto const chain = build_chain_graph( ntk, levels, chain_of( cfg ) );
  auto const sol = partition_netlist( ntk, levels, chain, p );

  std::string text;
  if ( cfg.format == "json" )
  {
    auto j = nlohmann::json::parse( partition_to_json( sol, ntk ) );
    j["depth"] = levels.depth;
    if ( cfg.emit_chain )
      j["chain"] = nlohmann::json::parse( chain_to_json( chain ) );
    text = j.dump( 2 ) + "\n";
  }
  else
  {
    text += fmt::format( "model {}  depth {}  p {}  mode {}\n", ntk.model_name(), levels.depth, p,
                         to_string( chain.mode ) );
    if ( cfg.emit_chain )
      text += fmt::format( "chain weights: [{}]\n", fmt::join( chain.boundary_weights, "," ) );
    text += fmt::format( "cuts: {{{}}}\nK: {}\ntcw: {}\n", fmt::join( sol.cuts, "," ), sol.part_count(), sol.tcw );
    for ( auto i = 0u; i < sol.parts.size(); ++i )
    {
      std::vector<std::string> names;
      for ( auto v : sol.parts[i] )
        names.push_back( ntk.node( v ).name );
      text += fmt::format( "V{}: {}\n", i + 1, fmt::join( names, " " ) );
    }
  }
  if ( cfg.output.empty() )
    out << text;
  else
    spill( cfg.output, text );
}

void print_report( std::ostream& out, cost_report const& r, std::string_view title )
{
  out << fmt::format( "{}\n", title );
  out << fmt::format( "  logic cells        {}\n", r.logic_count );
  out << fmt::format( "  DRO DFFs           {}\n", r.dro_count );
  out << fmt::format( "  NDRO DFFs          {}\n", r.ndro_count );
  out << fmt::format( "  repeaters          {}\n", r.repeater_count );
  out << fmt::format( "  total DFFs         {}\n", r.dff_count );
  out << fmt::format( "  splitters          {}\n", r.splitter_count );
  if ( r.clock_splitter_count > 0 )
    out << fmt::format( "  clock splitters    {}\n", r.clock_splitter_count );
  out << fmt::format( "  JJs                {}\n", r.jj_total );
  out << fmt::format( "  parts K            {}\n", r.part_count );
  out << fmt::format( "  depth L            {}\n", r.depth );
  out << fmt::format( "  peak throughput    {:.4g}\n", r.peak_throughput_ratio );
  out << fmt::format( "  NDRO JJs assumed   {}\n", r.ndro_jj );
}

void cmd_synthesize( run_config const& cfg, std::ostream& out )
{
  auto const m = method_of( cfg.method_name );
  auto const p = single_p( cfg, 2 );
  if ( m == method::dcm && p < 2 )
    throw CLI::ValidationError( "--p", "dual clocking needs --p >= 2" );
  auto const ntk = read_netlist_file( cfg.inputs.front() );
  auto const circuit = synthesize( ntk, m, p, cfg );
  auto const report = report_costs( circuit, costs_of( cfg ), { cfg.clock_overhead } );

  if ( !cfg.output.empty() )
    spill( cfg.output, write_circuit( circuit ) );
  if ( !cfg.provenance.empty() )
    spill( cfg.provenance, provenance_to_json( circuit ) + "\n" );

  if ( cfg.format == "json" )
  {
    auto j = nlohmann::json::parse( cost_report_to_json( report ) );
    j["model"] = ntk.model_name();
    j["method"] = cfg.method_name;
    if ( m == method::dcm )
    {
      j["p"] = p;
      j["cuts"] = circuit.cuts;
    }
    out << j.dump( 2 ) << "\n";
  }
  else
  {
    auto title = fmt::format( "{} via {}", ntk.model_name(), cfg.method_name );
    if ( m == method::dcm )
      title += fmt::format( " (p = {}, cuts {{{}}})", p, fmt::join( circuit.cuts, "," ) );
    print_report( out, report, title );
  }
}

std::string ratio_text( uint32_t numerator, uint32_t denominator )
{
  if ( denominator == 0 )
    return numerator == 0 ? "1.00" : "inf";
  return fmt::format( "{:.2f}", static_cast<double>( numerator ) / denominator );
}

void cmd_compare( run_config const& cfg, std::ostream& out )
{
  auto ps = cfg.p.empty() ? std::vector<uint32_t>{ 5, 10 } : cfg.p;
  for ( auto p : ps )
    if ( p < 2 )
      throw CLI::ValidationError( "--p", "dual clocking needs --p >= 2" );
  auto const costs = costs_of( cfg );
  cost_options const options{ cfg.clock_overhead };

  auto rows = nlohmann::json::array();
  for ( auto const& path : cfg.inputs )
  {
    auto const ntk = read_netlist_file( path );
    auto const fpb = full_path_balance( ntk );
    auto const b1 = report_costs( fpb, costs, options );
    auto const b2 = report_costs( share_and_retime( fpb ), costs, options );
    nlohmann::json row{ { "circuit", ntk.model_name() },
                        { "depth", b1.depth },
                        { "baseline1", { { "dff", b1.dff_count }, { "jj", b1.jj_total } } },
                        { "baseline2", { { "dff", b2.dff_count }, { "jj", b2.jj_total } } } };
    row["dcm"] = nlohmann::json::array();
    for ( auto p : ps )
    {
      auto const r = report_costs( dcm_synthesize( ntk, { p, chain_of( cfg ) } ), costs, options );
      row["dcm"].push_back( { { "p", p },
                              { "K", r.part_count },
                              { "dff", r.dff_count },
                              { "repeater", r.repeater_count },
                              { "jj", r.jj_total },
                              { "dff_ratio", ratio_text( b1.dff_count, r.dff_count ) },
                              { "jj_ratio", ratio_text( static_cast<uint32_t>( b1.jj_total ),
                                                        static_cast<uint32_t>( r.jj_total ) ) } } );
    }
    rows.push_back( row );
  }

  if ( cfg.format == "json" )
  {
    out << rows.dump( 2 ) << "\n";
    return;
  }

  std::string header = fmt::format( "{:<12} {:>3} {:>8} {:>8} {:>8} {:>8}", "circuit", "L", "B1 DFF", "B1 JJ",
                                    "B2 DFF", "B2 JJ" );
  for ( auto p : ps )
    header += fmt::format( " {:>10} {:>10} {:>3} {:>8}", fmt::format( "DCM{} DFF", p ), fmt::format( "DCM{} JJ", p ),
                           "K", "B1/DCM" );
  out << header << "\n";
  for ( auto const& row : rows )
  {
    auto line = fmt::format( "{:<12} {:>3} {:>8} {:>8} {:>8} {:>8}", row["circuit"].get<std::string>(),
                             row["depth"].get<uint32_t>(), row["baseline1"]["dff"].get<uint32_t>(),
                             row["baseline1"]["jj"].get<uint64_t>(), row["baseline2"]["dff"].get<uint32_t>(),
                             row["baseline2"]["jj"].get<uint64_t>() );
    for ( auto const& d : row["dcm"] )
      line += fmt::format( " {:>10} {:>10} {:>3} {:>8}", d["dff"].get<uint32_t>(), d["jj"].get<uint64_t>(),
                           d["K"].get<uint32_t>(), d["dff_ratio"].get<std::string>() );
    out << line << "\n";
  }
  out << fmt::format( "NDRO JJs assumed: {}\n", costs.ndro );
}

sfq_circuit load_circuit( std::string const& path )
{
  auto const text = slurp( path );
  if ( path.size() >= 5 && path.compare( path.size() - 5, 5, ".json" ) == 0 )
    return as_circuit( netlist_from_json( text ) );
  return read_circuit( text );
}

void cmd_simulate( run_config const& cfg, std::ostream& out )
{
  if ( cfg.stimulus.empty() )
    throw CLI::ValidationError( "--stimulus", "a stimulus file is required" );

  auto circuit = load_circuit( cfg.inputs.front() );
  if ( cfg.method_name != "none" )
  {
    auto const p = single_p( cfg, 2 );
    circuit = synthesize( circuit.ntk, method_of( cfg.method_name ), p, cfg );
  }

  auto stimulus = stimulus_from_json( slurp( cfg.stimulus ) );
  if ( stimulus.empty() )
    throw std::invalid_argument( "empty stimulus" );
  auto const period = circuit.clocking.scheme == clock_scheme::dual ? circuit.clocking.ratio : 1u;
  if ( cfg.hold )
    stimulus = hold_stimulus( stimulus, period );

  auto shortest = std::numeric_limits<uint64_t>::max();
  for ( auto const& [name, bits] : stimulus )
    shortest = std::min<uint64_t>( shortest, bits.size() );
  if ( shortest == 0 )
    throw std::invalid_argument( "empty stimulus" );
  auto const vectors = shortest / period;

  auto cycles = cfg.cycles == 0 ? shortest : cfg.cycles;
  if ( cfg.flush && vectors > 0 )
  {
    /* keep the final vector applied until its outputs have been sampled */
    cycles = std::max( cycles, sample_cycle( circuit, vectors - 1 ) + 1 );
    for ( auto& [name, bits] : stimulus )
      if ( bits.size() < cycles )
        bits.append( cycles - bits.size(), bits.back() );
  }

  auto const wave = simulate( circuit, stimulus, cycles, { cfg.record_internal } );
  auto const sampled = sampled_outputs( wave, circuit, vectors );

  std::string text;
  if ( cfg.format == "json" )
  {
    auto j = nlohmann::json::parse( wave.to_json() );
    j["sampled"] = sampled;
    text = j.dump( 2 ) + "\n";
  }
  else
  {
    text = wave.ascii();
    text += fmt::format( "sampled ({} vectors, latency {}):\n", vectors, pipeline_latency( circuit ) );
    for ( auto const& po : circuit.ntk.outputs() )
      text += fmt::format( "  {} = {}\n", po.name, sampled.at( po.name ) );
  }
  if ( cfg.output.empty() )
    out << text;
  else
    spill( cfg.output, text );
}

void cmd_random( run_config const& cfg, std::ostream& out )
{
  auto const ntk = random_netlist( cfg.seed, cfg.random );
  auto const text = cfg.format == "json" ? netlist_to_json( ntk ) + "\n" : write_netlist( ntk );
  if ( cfg.output.empty() )
    out << text;
  else
    spill( cfg.output, text );
}

} // namespace

int run_cli( int argc, char const* const* argv, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Depth-bounded levelized partitioning and dual-clock SFQ synthesis", "dlgp" };
  app.require_subcommand( 1 );
  run_config cfg;

  auto add_format = [&]( CLI::App* sub ) {
    sub->add_option( "--format", cfg.format, "Output format" )->check( CLI::IsMember( { "text", "json" } ) );
    sub->add_option( "-o,--output", cfg.output, "Write the result to a file" );
  };
  auto add_mode = [&]( CLI::App* sub ) {
    sub->add_option( "--mode", cfg.mode, "Crossing count: edge or hyper" )
        ->check( CLI::IsMember( { "edge", "hyper", "hyperedge" } ) );
    sub->add_flag( "--include-pi-nets", cfg.include_pi_nets, "Count nets driven by primary inputs" );
  };
  auto add_costs = [&]( CLI::App* sub ) {
    sub->add_option( "--costs", cfg.costs_path, "JSON cost table (falls back to $DLGP_COST_TABLE)" );
    sub->add_flag( "--clock-overhead", cfg.clock_overhead, "Add clock splitter trees to the JJ count" );
  };

  auto* partition = app.add_subcommand( "partition", "Optimal depth-bounded levelized partition" );
  partition->add_option( "netlist", cfg.inputs, "Netlist file" )->required()->expected( 1 )->check( CLI::ExistingFile );
  partition->add_option( "--p", cfg.p, "Depth bound" )->required()->expected( 1 );
  partition->add_flag( "--emit-chain", cfg.emit_chain, "Include the chain graph weights" );
  add_mode( partition );
  add_format( partition );

  auto* synth = app.add_subcommand( "synthesize", "Timing-correct SFQ circuit and cost report" );
  synth->add_option( "netlist", cfg.inputs, "Netlist file" )->required()->expected( 1 )->check( CLI::ExistingFile );
  synth->add_option( "--method", cfg.method_name, "fpb, fpb-share or dcm" )
      ->check( CLI::IsMember( { "fpb", "fpb-share", "dcm" } ) );
  synth->add_option( "--p", cfg.p, "Clock ratio and depth bound for dcm" )->expected( 1 );
  synth->add_option( "--provenance", cfg.provenance, "Write inserted-cell reasons as JSON" );
  add_mode( synth );
  add_costs( synth );
  add_format( synth );

  auto* compare = app.add_subcommand( "compare", "Baselines against dual clocking" );
  compare->add_option( "netlists", cfg.inputs, "Netlist files" )->required()->check( CLI::ExistingFile );
  compare->add_option( "--p", cfg.p, "Depth bounds (repeatable, default 5 and 10)" )->take_all();
  add_mode( compare );
  add_costs( compare );
  compare->add_option( "--format", cfg.format, "Output format" )->check( CLI::IsMember( { "text", "json" } ) );

  auto* simulate_cmd = app.add_subcommand( "simulate", "Pulse-level simulation" );
  simulate_cmd->add_option( "circuit", cfg.inputs, "Circuit or netlist file" )
      ->required()
      ->expected( 1 )
      ->check( CLI::ExistingFile );
  simulate_cmd->add_option( "--stimulus", cfg.stimulus, "JSON object of per-input bit strings" )
      ->check( CLI::ExistingFile );
  simulate_cmd->add_option( "--cycles", cfg.cycles, "Micro cycles to simulate (default: stimulus length)" );
  cfg.method_name = "none";
  simulate_cmd->add_option( "--method", cfg.method_name, "Synthesize before simulating: none, fpb, fpb-share, dcm" )
      ->check( CLI::IsMember( { "none", "fpb", "fpb-share", "dcm" } ) );
  simulate_cmd->add_option( "--p", cfg.p, "Clock ratio for --method dcm" )->expected( 1 );
  simulate_cmd->add_flag( "--hold", cfg.hold, "Repeat every stimulus bit for a full macro period" );
  simulate_cmd->add_flag( "--flush", cfg.flush, "Keep the last vector applied until all outputs are sampled" );
  simulate_cmd->add_flag( "--internal", cfg.record_internal, "Record every gate signal" );
  add_mode( simulate_cmd );
  add_format( simulate_cmd );

  auto* random = app.add_subcommand( "random", "Seeded random netlist" );
  random->add_option( "--seed", cfg.seed, "Generator seed" );
  random->add_option( "--inputs", cfg.random.num_inputs, "Primary inputs" );
  random->add_option( "--gates", cfg.random.num_gates, "Gates" );
  random->add_option( "--outputs", cfg.random.num_outputs, "Minimum number of outputs" );
  random->add_option( "--depth", cfg.random.max_depth, "Target depth" );
  add_format( random );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    return app.exit( e, out, err );
  }

  if ( synth->parsed() && cfg.method_name == "none" )
    cfg.method_name = "dcm";

  auto const file = cfg.inputs.empty() ? std::string( "dlgp" ) : cfg.inputs.front();
  try
  {
    if ( partition->parsed() )
      cmd_partition( cfg, out );
    else if ( synth->parsed() )
      cmd_synthesize( cfg, out );
    else if ( compare->parsed() )
      cmd_compare( cfg, out );
    else if ( simulate_cmd->parsed() )
      cmd_simulate( cfg, out );
    else
      cmd_random( cfg, out );
  }
  catch ( CLI::ParseError const& e )
  {
    return app.exit( e, out, err );
  }
  catch ( netlist_error const& e )
  {
    err << "error: " << describe( e, file ) << "\n";
    return 2;
  }
  catch ( std::exception const& e )
  {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace dlgp
