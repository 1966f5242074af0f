// framehop.hpp
// Umbrella header.

#pragma once

#include "framehop/config.hpp"
#include "framehop/errors.hpp"
#include "framehop/material.hpp"
#include "framehop/mie.hpp"
#include "framehop/pipeline.hpp"
#include "framehop/relativity.hpp"
#include "framehop/scatter_kernel.hpp"
#include "framehop/signal.hpp"
#include "framehop/spectral.hpp"
#include "framehop/sweep.hpp"
#include "framehop/vec3.hpp"
