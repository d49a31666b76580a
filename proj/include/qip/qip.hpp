// Umbrella header: the whole library.

#pragma once

#include "qip/bell.hpp"
#include "qip/entanglement.hpp"
#include "qip/errors.hpp"
#include "qip/json_io.hpp"
#include "qip/linalg.hpp"
#include "qip/rng.hpp"
#include "qip/states.hpp"
#include "qip/teleport.hpp"
