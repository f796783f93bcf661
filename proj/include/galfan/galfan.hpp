#pragma once

// Umbrella header for the whole library.

#include "galfan/colored.hpp"
#include "galfan/cone.hpp"
#include "galfan/descent.hpp"
#include "galfan/fan.hpp"
#include "galfan/fixtures.hpp"
#include "galfan/group.hpp"
#include "galfan/io.hpp"
#include "galfan/linalg.hpp"
#include "galfan/linear_system.hpp"
#include "galfan/matrix.hpp"
#include "galfan/quasi_projective.hpp"
#include "galfan/rational.hpp"
#include "galfan/simplex.hpp"
#include "galfan/subdivide.hpp"
