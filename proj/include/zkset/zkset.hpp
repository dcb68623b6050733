#pragma once

#include "zkset/bench.hpp"
#include "zkset/group.hpp"
#include "zkset/merkle.hpp"
#include "zkset/orproof.hpp"
#include "zkset/setmember.hpp"
#include "zkset/sigma.hpp"
