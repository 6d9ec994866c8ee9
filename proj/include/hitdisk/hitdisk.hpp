#pragma once

#include "hitdisk/angles.hpp"
#include "hitdisk/annulus_map.hpp"
#include "hitdisk/density.hpp"
#include "hitdisk/elliptic.hpp"
#include "hitdisk/errors.hpp"
#include "hitdisk/geometry.hpp"
#include "hitdisk/kernels.hpp"
#include "hitdisk/montecarlo.hpp"
#include "hitdisk/profile_io.hpp"
