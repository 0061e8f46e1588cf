/*!
  \file generators.hpp
  \brief Parametric arithmetic netlists and seeded random DAGs

  All generated netlists use the AND2 / OR2 / XOR2 / NOT vocabulary.
*/

#pragma once

#include <cstdint>

#include "netlist.hpp"

namespace dlgp
{

/*! \brief Parallel-prefix adder; inputs a0.., b0.., cin; outputs s0.., cout. */
netlist kogge_stone_adder( uint32_t bits );

/*! \brief Ripple-carry adder with the same interface as `kogge_stone_adder`. */
netlist ripple_carry_adder( uint32_t bits );

/*! \brief Unsigned array multiplier for `bits >= 2`; inputs a0.., b0..; outputs p0..p{2n-1}. */
netlist array_multiplier( uint32_t bits );

/*! \brief Magnitude comparator; outputs gt (a > b) and eq. */
netlist comparator( uint32_t bits );

/*! \brief ISCAS-85 c17 with each NAND mapped to AND2 + NOT. */
netlist c17();

struct random_params
{
  uint32_t num_inputs{ 4 };
  uint32_t num_gates{ 20 };
  uint32_t num_outputs{ 3 };

  /*! \brief Depth target; gates are spread over levels 1..max_depth. */
  uint32_t max_depth{ 8 };

  /*! \brief Allow NOT gates (single fan-in). */
  bool allow_inverters{ true };
};

/*! \brief Deterministic random DAG for a given seed.
 *
 * Every gate draws one fanin from the level just below its target level,
 * so the depth equals `min( max_depth, num_gates )`.  Nets that would
 * otherwise dangle become primary outputs.
 */
netlist random_netlist( uint64_t seed, random_params const& ps = {} );

} // namespace dlgp
