#pragma once

#include "qwalk/bessel.hpp"
#include "qwalk/dispersion.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/quadrature.hpp"
#include "qwalk/walks.hpp"
#include "qwalk/wavepackets.hpp"
