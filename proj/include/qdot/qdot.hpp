#pragma once

// Umbrella header for the coupled-quantum-dot gate simulator.

#include "qdot/commands.hpp"
#include "qdot/config.hpp"
#include "qdot/constants.hpp"
#include "qdot/cnot.hpp"
#include "qdot/csv.hpp"
#include "qdot/gate.hpp"
#include "qdot/linalg.hpp"
#include "qdot/molecule.hpp"
#include "qdot/phonon.hpp"
#include "qdot/propagate.hpp"
#include "qdot/pulse.hpp"
#include "qdot/quadrature.hpp"
#include "qdot/simulate.hpp"
