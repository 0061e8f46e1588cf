#include <dlgp/cli.hpp>

#include <iostream>

int main( int argc, char** argv )
{
  return dlgp::run_cli( argc, argv, std::cout, std::cerr );
}
