#pragma once

#include "lwhittle/asymptotics.hpp"
#include "lwhittle/fracsim.hpp"
#include "lwhittle/io.hpp"
#include "lwhittle/kde.hpp"
#include "lwhittle/montecarlo.hpp"
#include "lwhittle/oracle.hpp"
#include "lwhittle/series.hpp"
#include "lwhittle/spectral.hpp"
#include "lwhittle/whittle.hpp"
