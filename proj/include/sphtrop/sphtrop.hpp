#pragma once

// Umbrella header for the spherical tropicalization library.

#include "sphtrop/cli.hpp"
#include "sphtrop/colored_fan.hpp"
#include "sphtrop/complex.hpp"
#include "sphtrop/cone.hpp"
#include "sphtrop/errors.hpp"
#include "sphtrop/extended.hpp"
#include "sphtrop/fan_builder.hpp"
#include "sphtrop/io_json.hpp"
#include "sphtrop/linalg.hpp"
#include "sphtrop/parallel.hpp"
#include "sphtrop/polyhedron.hpp"
#include "sphtrop/qvector.hpp"
#include "sphtrop/rational.hpp"
#include "sphtrop/render_svg.hpp"
#include "sphtrop/spherical.hpp"
#include "sphtrop/tropical.hpp"
