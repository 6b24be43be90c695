#pragma once

#include "lpw/error.hpp"
#include "lpw/grid.hpp"
#include "lpw/lp_core.hpp"
#include "lpw/presets.hpp"
#include "lpw/profiles.hpp"
#include "lpw/realization.hpp"
#include "lpw/spaces.hpp"
#include "lpw/szasz.hpp"
#include "lpw/witnesses.hpp"
