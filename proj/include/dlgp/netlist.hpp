/*!
  \file netlist.hpp
  \brief Gate-level combinational netlists, levelization and evaluation
*/

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dlgp
{

/*! \brief Cell vocabulary.
 *
 * `node` is an opaque vertex of arbitrary fan-in.  It is accepted by the
 * partitioning pipeline only; evaluation, synthesis and simulation reject it.
 */
enum class gate_kind : uint8_t
{
  and2,
  or2,
  xor2,
  not1,
  dff_dro,
  dff_ndro,
  splitter,
  repeater,
  buf,
  node
};

std::string_view to_string( gate_kind kind );
std::optional<gate_kind> gate_kind_from_string( std::string_view text );

/*! \brief Required fan-in count, or `std::nullopt` for variable arity. */
std::optional<uint32_t> gate_arity( gate_kind kind );

/*! \brief True for cells that consume pulses on a clock edge. */
bool is_clocked( gate_kind kind );

/*! \brief Reference to a primary input or to a gate output. */
struct signal_ref
{
  bool from_input{ false };
  uint32_t index{ 0 };

  static constexpr signal_ref input( uint32_t i ) { return { true, i }; }
  static constexpr signal_ref node( uint32_t i ) { return { false, i }; }

  bool is_input() const { return from_input; }
  bool is_node() const { return !from_input; }

  friend bool operator==( signal_ref const&, signal_ref const& ) = default;
  friend auto operator<=>( signal_ref const&, signal_ref const& ) = default;
};

struct gate_node
{
  std::string name;
  gate_kind kind;
  std::vector<signal_ref> fanins;
};

struct output_port
{
  std::string name;
  signal_ref driver;
};

/*! \brief One sink of a net: either a gate pin or a primary output. */
struct fanout_entry
{
  bool to_output{ false };
  uint32_t index{ 0 }; /* gate index or output index */
  uint32_t pin{ 0 };   /* fanin position on the gate */
};

/*! \brief Error raised while building or parsing a netlist.
 *
 * `line` and `column` are 1-based and zero when unknown.
 */
class netlist_error : public std::runtime_error
{
public:
  netlist_error( std::string const& message, uint32_t line = 0, uint32_t column = 0, std::string subject = {} );

  uint32_t line() const { return _line; }
  uint32_t column() const { return _column; }
  std::string const& detail() const { return _detail; }

  /*! \brief Name of the offending gate or port, if any. */
  std::string const& subject() const { return _subject; }

private:
  std::string _detail;
  std::string _subject;
  uint32_t _line;
  uint32_t _column;
};

/*! \brief Immutable, validated DAG of gates.
 *
 * Nodes keep declaration order.  Nets are hyper-edges keyed by their driver
 * (a primary input or a gate); their sinks are available through `fanout`.
 */
class netlist
{
public:
  netlist() = default;

  std::string const& model_name() const { return _model; }

  uint32_t num_inputs() const { return static_cast<uint32_t>( _inputs.size() ); }
  uint32_t num_nodes() const { return static_cast<uint32_t>( _nodes.size() ); }
  uint32_t num_outputs() const { return static_cast<uint32_t>( _outputs.size() ); }

  std::string const& input_name( uint32_t i ) const { return _inputs[i]; }
  std::vector<std::string> const& inputs() const { return _inputs; }
  gate_node const& node( uint32_t i ) const { return _nodes[i]; }
  std::vector<gate_node> const& nodes() const { return _nodes; }
  std::vector<output_port> const& outputs() const { return _outputs; }

  std::string const& signal_name( signal_ref s ) const;
  std::optional<signal_ref> find( std::string_view name ) const;

  /*! \brief Sinks of the net driven by `s` (gate pins first, then outputs). */
  std::span<fanout_entry const> fanout( signal_ref s ) const;
  uint32_t fanout_size( signal_ref s ) const { return static_cast<uint32_t>( fanout( s ).size() ); }

  /*! \brief Node indices such that every gate follows its gate fanins. */
  std::span<uint32_t const> topological_order() const { return _topo; }

  uint32_t count( gate_kind kind ) const;

private:
  friend class netlist_builder;

  uint32_t slot( signal_ref s ) const { return s.is_input() ? s.index : num_inputs() + s.index; }

  std::string _model;
  std::vector<std::string> _inputs;
  std::vector<gate_node> _nodes;
  std::vector<output_port> _outputs;
  std::unordered_map<std::string, signal_ref> _by_name;
  std::vector<uint32_t> _fanout_offsets;
  std::vector<fanout_entry> _fanout_entries;
  std::vector<uint32_t> _topo;
};

/*! \brief Incremental construction of a `netlist`.
 *
 * Gate fanins may reference nodes that are added later; `build` checks
 * ranges, arities, name uniqueness and acyclicity.
 */
class netlist_builder
{
public:
  explicit netlist_builder( std::string model_name = {} );

  signal_ref add_input( std::string name );
  signal_ref add_gate( gate_kind kind, std::string name, std::vector<signal_ref> fanins );
  void add_output( std::string name, signal_ref driver );

  uint32_t num_inputs() const { return static_cast<uint32_t>( _ntk._inputs.size() ); }
  uint32_t num_nodes() const { return static_cast<uint32_t>( _ntk._nodes.size() ); }

  /*! \brief True if `name` is already used by an input or gate. */
  bool has_name( std::string const& name ) const;

  /*! \brief Returns `base` or `base_<n>` such that it is not taken yet. */
  std::string fresh_name( std::string const& base );

  /*! \brief Validates and returns the netlist.  Throws `netlist_error`. */
  netlist build() &&;

private:
  netlist _ntk;
  std::unordered_map<std::string, uint32_t> _suffix;
};

/*! \brief Copies `ntk` with every BUF replaced by its fanin. */
netlist sweep_buffers( netlist const& ntk );

/* ---------------------------------------------------------------- io ---- */

/*! \brief Parses the structural text format.
 *
 * \verbatim
   # comment
   .model adder
   .inputs a b
   .outputs y z=g2
   gate AND2 y a b
   gate NOT g2 y
   .end
   \endverbatim
 *
 * Gates may be declared in any order.  `.outputs` entries are either a
 * signal name or `port=signal`.
 */
netlist parse_netlist( std::string_view text );
netlist read_netlist_file( std::string const& path );

/*! \brief Canonical text form; `parse_netlist( write_netlist( n ) )` reproduces it. */
std::string write_netlist( netlist const& ntk );

std::string netlist_to_json( netlist const& ntk, int indent = 2 );
netlist netlist_from_json( std::string_view text );

/* ------------------------------------------------------------ levels ---- */

/*! \brief Logic levels.
 *
 * Primary inputs sit at level 0, so a gate fed only by inputs has level 1
 * and `depth` is the largest node level.
 */
struct level_map
{
  std::vector<uint32_t> level;
  uint32_t depth{ 0 };

  uint32_t of( signal_ref s ) const { return s.is_input() ? 0u : level[s.index]; }
};

level_map levelize( netlist const& ntk );

/* -------------------------------------------------------- evaluation ---- */

/*! \brief Evaluates the outputs for one input assignment (input order).
 *
 * Storage and fan-out cells act as identities.
 */
std::vector<bool> eval_combinational( netlist const& ntk, std::vector<bool> const& inputs );

/*! \brief Named variant; every primary input must be assigned. */
std::map<std::string, bool> eval_combinational( netlist const& ntk, std::map<std::string, bool> const& inputs );

} // namespace dlgp
