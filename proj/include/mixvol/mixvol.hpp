#pragma once

#include <mixvol/invariants.hpp>
#include <mixvol/lattice_formula.hpp>
#include <mixvol/resultant.hpp>
