// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_GLOB_HPP
#define PEGKIT_GLOB_HPP

#include <pegkit/glob/compile.hpp>
#include <pegkit/glob/tokens.hpp>

#endif // PEGKIT_GLOB_HPP
