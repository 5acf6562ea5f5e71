#pragma once

#include "ewkit/matrix.hpp"
#include "ewkit/linalg.hpp"
#include "ewkit/rng.hpp"
#include "ewkit/states.hpp"
#include "ewkit/witness.hpp"
#include "ewkit/detection.hpp"
#include "ewkit/io.hpp"
