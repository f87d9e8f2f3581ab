#pragma once

#include "fdsec/channel_geometry.hpp"
#include "fdsec/colluding_fading.hpp"
#include "fdsec/colluding_static.hpp"
#include "fdsec/errors.hpp"
#include "fdsec/export.hpp"
#include "fdsec/field.hpp"
#include "fdsec/montecarlo.hpp"
#include "fdsec/pairwise_fading.hpp"
#include "fdsec/pairwise_static.hpp"
