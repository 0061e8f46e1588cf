#pragma once

#include <iosfwd>

namespace dlgp
{

/*! \brief Entry point of the `dlgp` tool; returns the process exit code. */
int run_cli( int argc, char const* const* argv, std::ostream& out, std::ostream& err );

} // namespace dlgp
