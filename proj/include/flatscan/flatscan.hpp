#pragma once

#include "flatscan/cylinders.hpp"
#include "flatscan/errors.hpp"
#include "flatscan/geometry.hpp"
#include "flatscan/intersections.hpp"
#include "flatscan/measures.hpp"
#include "flatscan/parse.hpp"
#include "flatscan/scan.hpp"
#include "flatscan/sl2.hpp"
#include "flatscan/surface.hpp"
#include "flatscan/surface_io.hpp"
#include "flatscan/svg.hpp"
#include "flatscan/trace.hpp"
#include "flatscan/unfold.hpp"
