#pragma once

#include "apspectra/almost_periodicity.hpp"
#include "apspectra/bohr.hpp"
#include "apspectra/bounds.hpp"
#include "apspectra/errors.hpp"
#include "apspectra/signal.hpp"
#include "apspectra/signal_io.hpp"
#include "apspectra/trig_polynomial.hpp"
#include "apspectra/variation.hpp"
#include "apspectra/zeta.hpp"
#include "apspectra/zeta_experiment.hpp"
