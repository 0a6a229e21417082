#pragma once

// Convenience umbrella: pulls in the whole library.

#include "hermite_riesz/basis.hpp"
#include "hermite_riesz/spectral.hpp"
#include "hermite_riesz/kernels.hpp"
#include "hermite_riesz/bellman.hpp"
#include "hermite_riesz/report.hpp"
#include "hermite_riesz/normlab.hpp"
#include "hermite_riesz/suites.hpp"
