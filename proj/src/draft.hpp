#pragma once

#include <dlgp/synth.hpp>

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dlgp::detail
{

/* Mutable netlist under construction by the synthesis passes. */
class draft
{
public:
  struct cell
  {
    std::string name;
    gate_kind kind;
    std::vector<signal_ref> fanins;
    std::optional<insertion_reason> reason;
    uint32_t part{ 0 };
  };

  explicit draft( std::string model ) : _model( std::move( model ) ) {}

  /* Copies inputs, gates and outputs of `ntk` (no provenance, part 0). */
  static draft from_netlist( netlist const& ntk );

  signal_ref add_input( std::string const& name );
  signal_ref add_cell( gate_kind kind, std::string const& base, std::vector<signal_ref> fanins,
                       std::optional<insertion_reason> reason, uint32_t part = 0 );
  void add_output( std::string name, signal_ref driver );

  std::string const& name_of( signal_ref s ) const { return s.is_input() ? _inputs[s.index] : _cells[s.index].name; }
  uint32_t part_of( signal_ref s ) const { return s.is_input() ? 0u : _cells[s.index].part; }

  std::vector<cell>& cells() { return _cells; }
  std::vector<output_port>& outputs() { return _outputs; }

  /* Builds a balanced splitter tree on every net with more than one sink. */
  void insert_splitters();

  sfq_circuit finish( clock_plan clocking, bool keep_parts ) &&;

private:
  std::string reserve( std::string const& base );

  std::string _model;
  std::vector<std::string> _inputs;
  std::vector<cell> _cells;
  std::vector<output_port> _outputs;
  std::unordered_set<std::string> _taken;
  std::unordered_map<std::string, uint32_t> _suffix;
};

} // namespace dlgp::detail
