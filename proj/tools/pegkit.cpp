#include <pegkit/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
	return pegkit::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
