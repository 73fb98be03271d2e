#pragma once

// Umbrella header.

#include "pellab/error.hpp"
#include "pellab/rational.hpp"
#include "pellab/poly.hpp"
#include "pellab/series.hpp"
#include "pellab/matrix.hpp"
#include "pellab/scaled.hpp"
#include "pellab/pfrac.hpp"
#include "pellab/period.hpp"
#include "pellab/gjm.hpp"
#include "pellab/monodromy.hpp"
#include "pellab/roots.hpp"
#include "pellab/spectral.hpp"
#include "pellab/pellabel.hpp"
