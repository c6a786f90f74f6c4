#pragma once

// Umbrella header for the horokit library.

#include "horokit/lorentz.hpp"
#include "horokit/coxeter.hpp"
#include "horokit/reference_tables.hpp"
#include "horokit/horoball.hpp"
#include "horokit/volume.hpp"
#include "horokit/packing.hpp"
#include "horokit/density.hpp"
#include "horokit/scene.hpp"
#include "horokit/mesh.hpp"
