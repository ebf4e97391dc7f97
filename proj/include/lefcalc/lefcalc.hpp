#pragma once

#include "lefcalc/numeric.hpp"
#include "lefcalc/smith.hpp"
#include "lefcalc/surface.hpp"
#include "lefcalc/openbook.hpp"
#include "lefcalc/kirby.hpp"
#include "lefcalc/alf.hpp"
#include "lefcalc/invariants.hpp"
#include "lefcalc/harer.hpp"
#include "lefcalc/assembler.hpp"
