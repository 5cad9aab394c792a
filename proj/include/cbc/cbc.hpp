#ifndef CBC_CBC_HPP
#define CBC_CBC_HPP

// Umbrella header: the whole class-breadth verification engine.

#include "cbc/action.hpp"
#include "cbc/bitset.hpp"
#include "cbc/breadth.hpp"
#include "cbc/constructions.hpp"
#include "cbc/errors.hpp"
#include "cbc/families.hpp"
#include "cbc/group.hpp"
#include "cbc/parse.hpp"
#include "cbc/serialize.hpp"
#include "cbc/theorems.hpp"

#endif
