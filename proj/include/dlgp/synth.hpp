/*!
  \file synth.hpp
  \brief Timing-correct SFQ realizations of combinational netlists

  Three flows are provided:

  - `full_path_balance`: every short fanin path is padded with DRO DFFs
    until all fanins of a gate arrive on the same clock cycle.
  - `share_and_retime`: parallel DFF chains hanging off one driver are merged
    into a single tapped chain.
  - `dcm_synthesize`: the dual clocking method.  The netlist is cut into
    depth-bounded level bands; each net crossing a band boundary goes through
    a pulse-repeating gate, which samples its input once per macro cycle and
    replays it on every micro cycle.  No balancing DFFs are needed inside a
    band.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chain.hpp"
#include "netlist.hpp"

namespace dlgp
{

enum class clock_scheme : uint8_t
{
  single,
  dual
};

/*! \brief Clocking of a synthesized circuit.
 *
 * In the dual scheme the macro period is `ratio` micro periods and both
 * clocks share edges; the macro clock fires on micro cycles `c` with
 * `c % ratio == ratio - 1`.
 */
struct clock_plan
{
  clock_scheme scheme{ clock_scheme::single };
  uint32_t ratio{ 1 };
};

enum class insertion_reason : uint8_t
{
  path_balance,
  repeater,
  po_balance,
  fanout_splitter
};

std::string_view to_string( insertion_reason reason );

struct sfq_circuit
{
  netlist ntk;
  clock_plan clocking;

  /*! \brief Why each node was inserted; empty for nodes of the source netlist. */
  std::vector<std::optional<insertion_reason>> provenance;

  /*! \brief 0-based band of every node (dual clocking only, otherwise empty).
   *
   * A repeater belongs to the band it feeds.
   */
  std::vector<uint32_t> part_of;

  /*! \brief Number of bands K (1 for single clocking). */
  uint32_t part_count{ 1 };

  /*! \brief Cut levels chosen by the partitioner (dual clocking only). */
  std::vector<uint32_t> cuts;

  /*! \brief Depth of the source netlist. */
  uint32_t source_depth{ 0 };
};

/*! \brief Wraps a netlist as a single-clock circuit without any balancing. */
sfq_circuit as_circuit( netlist const& ntk );

/*! \brief Baseline 1: one private DRO chain per short fanin edge, outputs padded to the full depth. */
sfq_circuit full_path_balance( netlist const& ntk );

/*! \brief Baseline 2: merges the DFF trees of every driver into one tapped chain.
 *
 * Never increases the DFF count and keeps every sink's DFF distance from
 * its driver, hence the timing.
 */
sfq_circuit share_and_retime( sfq_circuit const& circuit );

struct dcm_params
{
  /*! \brief Depth bound of a band and micro-to-macro clock ratio (>= 2). */
  uint32_t p{ 2 };

  /*! \brief Cost model the partitioner minimizes. */
  chain_params chain;
};

/*! \brief Dual clocking method: partition, repeaters, output forwarding, splitters. */
sfq_circuit dcm_synthesize( netlist const& ntk, dcm_params const& ps );

/*! \brief Number of micro cycles between applying a vector and its outputs.
 *
 * Counted in clocked stages for single clocking (the sample is taken
 * `latency - 1` cycles after the vector is applied) and in macro periods
 * for dual clocking.
 */
uint32_t pipeline_latency( sfq_circuit const& circuit );

/* ---------------------------------------------------------------- cost -- */

/*! \brief Josephson junction count per cell. */
struct cost_table
{
  uint32_t and2{ 12 };
  uint32_t or2{ 8 };
  uint32_t xor2{ 8 };
  uint32_t not1{ 9 };
  uint32_t dff_dro{ 7 };
  uint32_t splitter{ 3 };
  uint32_t jtl{ 2 };

  /*! \brief NDRO flip-flop; not part of the reference library, so configurable. */
  uint32_t ndro{ 11 };

  /*! \brief JJ count of one cell.  A repeater is an NDRO, an AND2 and two splitters. */
  uint32_t jj_of( gate_kind kind ) const;
};

/*! \brief Reads a JSON object such as `{"AND2": 12, "NDRO": 11}` on top of `base`. */
cost_table cost_table_from_json( std::string_view text, cost_table base = {} );

struct cost_options
{
  /*! \brief Adds a binary splitter tree per clock network. */
  bool include_clock_overhead{ false };
};

struct cost_report
{
  uint32_t logic_count{ 0 };
  uint32_t dro_count{ 0 };
  uint32_t ndro_count{ 0 };
  uint32_t repeater_count{ 0 };
  uint32_t dff_count{ 0 }; /* dro + ndro + repeater */
  uint32_t splitter_count{ 0 };
  uint32_t clock_splitter_count{ 0 };
  uint64_t jj_total{ 0 };
  uint32_t part_count{ 1 };
  uint32_t depth{ 0 };
  double peak_throughput_ratio{ 1.0 };
  uint32_t ndro_jj{ 0 };
};

/*! \brief Itemized cell counts and JJ total.  Throws for NODE cells. */
cost_report report_costs( sfq_circuit const& circuit, cost_table const& costs = {}, cost_options const& ps = {} );

std::string cost_report_to_json( cost_report const& report, int indent = 2 );

/* ------------------------------------------------------------------ io -- */

/*! \brief Structural text with a leading `.clock single` or `.clock dual <ratio>` line. */
std::string write_circuit( sfq_circuit const& circuit );

/*! \brief Inverse of `write_circuit`; a missing `.clock` line means single clocking. */
sfq_circuit read_circuit( std::string_view text );

/*! \brief Sidecar `{node name: reason}` for inserted nodes. */
std::string provenance_to_json( sfq_circuit const& circuit, int indent = 2 );

} // namespace dlgp
