#include <dlgp/generators.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

int main( int argc, char** argv )
{
  namespace fs = std::filesystem;
  fs::path const dir = argc > 1 ? argv[1] : "benchmarks";
  fs::create_directories( dir );

  std::vector<dlgp::netlist> suite{ dlgp::c17(),
                                    dlgp::kogge_stone_adder( 8 ),
                                    dlgp::kogge_stone_adder( 16 ),
                                    dlgp::kogge_stone_adder( 32 ),
                                    dlgp::ripple_carry_adder( 8 ),
                                    dlgp::ripple_carry_adder( 16 ),
                                    dlgp::array_multiplier( 4 ),
                                    dlgp::array_multiplier( 8 ),
                                    dlgp::comparator( 16 ) };
  for ( auto const& ntk : suite )
  {
    auto const path = dir / ( ntk.model_name() + ".net" );
    std::ofstream( path ) << dlgp::write_netlist( ntk );
    std::cout << path.string() << "\n";
  }
}
