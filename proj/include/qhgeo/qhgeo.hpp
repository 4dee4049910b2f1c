#pragma once

// Umbrella header for the quasihyperbolic geometry toolkit.

#include "qhgeo/bounds.hpp"
#include "qhgeo/cache.hpp"
#include "qhgeo/checkers.hpp"
#include "qhgeo/coarse.hpp"
#include "qhgeo/domain.hpp"
#include "qhgeo/geometry.hpp"
#include "qhgeo/graph.hpp"
#include "qhgeo/hyperbolicity.hpp"
#include "qhgeo/integrate.hpp"
#include "qhgeo/pipeline.hpp"
#include "qhgeo/polyline.hpp"
#include "qhgeo/presets.hpp"
#include "qhgeo/query.hpp"
#include "qhgeo/report.hpp"
#include "qhgeo/svg.hpp"
#include "qhgeo/uniformization.hpp"
#include "qhgeo/version.hpp"
