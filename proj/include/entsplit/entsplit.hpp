#pragma once

// Umbrella header: simulation of entanglement splitting via local cloning
// transformations, with the full set of two-qubit entanglement diagnostics.

#include "entsplit/matrix.hpp"
#include "entsplit/layout.hpp"
#include "entsplit/decomp.hpp"
#include "entsplit/states.hpp"
#include "entsplit/cloner.hpp"
#include "entsplit/measures.hpp"
#include "entsplit/splitting.hpp"
#include "entsplit/cli.hpp"
