/*!
  \file sim.hpp
  \brief Cycle-level pulse simulation of SFQ circuits

  Time advances in micro cycles.  A signal carries `1` (pulse), `0` (no
  pulse) or `x` (unknown, before the pipeline has filled).

  - Clocked cells (logic gates and DRO/NDRO flip-flops) consume the pulses
    stored during the previous cycle and emit their result, so each one is
    a pipeline stage.
  - Primary inputs and repeaters are sources: what they present in cycle
    `c` is consumed by their sinks in the same cycle `c`.
  - Splitters and BUFs are transparent.
  - A repeater replays its held bit every cycle.  On a macro tick
    (`c % ratio == ratio - 1`) it latches the value its input carries in
    that cycle, which becomes visible from the next cycle on.
*/

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netlist.hpp"
#include "synth.hpp"

namespace dlgp
{

enum class logic_value : uint8_t
{
  zero,
  one,
  x
};

char to_char( logic_value v );
logic_value logic_value_from_char( char c );
inline logic_value from_bool( bool b ) { return b ? logic_value::one : logic_value::zero; }

class simulator
{
public:
  /*! \brief Throws `std::invalid_argument` for NODE cells. */
  explicit simulator( sfq_circuit const& circuit );

  /*! \brief Advances one micro cycle with the given input values (input order). */
  void step( std::span<logic_value const> inputs );

  /*! \brief Value presented by a signal in the last simulated cycle. */
  logic_value value( signal_ref s ) const;
  logic_value output( uint32_t index ) const;

  /*! \brief Stored bit of a repeater, `std::nullopt` for other cells. */
  std::optional<logic_value> held( uint32_t node ) const;

  /*! \brief Number of cycles simulated so far. */
  uint64_t cycle() const { return _cycle; }

  /*! \brief True if micro cycle `c` carries a macro tick. */
  bool macro_tick( uint64_t c ) const { return c % _ratio == _ratio - 1; }

private:
  netlist const* _ntk;
  uint32_t _ratio;
  std::vector<logic_value> _current;
  std::vector<logic_value> _previous;
  std::vector<logic_value> _held;
  std::vector<bool> _source_phase;
  uint64_t _cycle{ 0 };

  uint32_t slot( signal_ref s ) const { return s.is_input() ? s.index : _ntk->num_inputs() + s.index; }
};

using trace_list = std::vector<std::pair<std::string, std::string>>;

struct waveform
{
  uint64_t cycles{ 0 };

  /*! \brief Micro cycles per macro period (1 for single clocking). */
  uint32_t macro_period{ 1 };

  trace_list inputs;
  trace_list outputs;

  /*! \brief Gate signals, present when requested. */
  trace_list internal;

  /*! \brief Looks up outputs, then inputs, then internal signals.  Throws if absent. */
  std::string const& trace( std::string_view name ) const;

  /*! \brief Aligned text rendering with a cycle ruler and `^` under macro ticks. */
  std::string ascii() const;
  std::string to_json( int indent = 2 ) const;
};

struct sim_options
{
  bool record_internal{ false };
};

using stimulus_map = std::map<std::string, std::string>;

/*! \brief Simulates `cycles` micro cycles.
 *
 * Every primary input needs a bit string of `0`, `1`, `x` covering all
 * cycles.  Throws `std::invalid_argument` otherwise.
 */
waveform simulate( sfq_circuit const& circuit, stimulus_map const& stimulus, uint64_t cycles,
                   sim_options const& ps = {} );

/*! \brief Repeats every symbol `times` times ("10" -> "1100" for 2). */
stimulus_map hold_stimulus( stimulus_map const& stimulus, uint32_t times );

stimulus_map stimulus_from_json( std::string_view text );

/*! \brief Micro cycle at which the outputs for vector `t` are observed.
 *
 * Single clocking applies vector `t` in cycle `t`; dual clocking holds it
 * during macro period `t`.
 */
uint64_t sample_cycle( sfq_circuit const& circuit, uint64_t t );

/*! \brief Output strings sampled at `sample_cycle( circuit, 0 .. count - 1 )`. */
std::map<std::string, std::string> sampled_outputs( waveform const& wave, sfq_circuit const& circuit, uint64_t count );

struct oracle_mismatch
{
  uint64_t vector{ 0 };
  std::string output;
  bool expected{ false };
  logic_value observed{ logic_value::x };
};

struct oracle_result
{
  bool passed{ true };
  std::optional<oracle_mismatch> first_mismatch;
};

/*! \brief Streams `vectors` (input order) through the circuit and compares
 * every sampled output against combinational evaluation of `reference`.
 */
oracle_result compare_with_oracle( sfq_circuit const& circuit, netlist const& reference,
                                   std::vector<std::vector<bool>> const& vectors );

/*! \brief Uses the circuit's own logic (storage and splitters as identities) as reference. */
oracle_result compare_with_oracle( sfq_circuit const& circuit, std::vector<std::vector<bool>> const& vectors );

} // namespace dlgp
