#pragma once

#include "glidesafe/airframe.hpp"
#include "glidesafe/analysis.hpp"
#include "glidesafe/config.hpp"
#include "glidesafe/dynamics.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/guidance.hpp"
#include "glidesafe/json_io.hpp"
#include "glidesafe/parallel.hpp"
#include "glidesafe/planner.hpp"
#include "glidesafe/primitives.hpp"
#include "glidesafe/simulator.hpp"
#include "glidesafe/surrogate.hpp"
#include "glidesafe/table_io.hpp"
#include "glidesafe/units.hpp"
#include "glidesafe/viability.hpp"
#include "glidesafe/windframe.hpp"
