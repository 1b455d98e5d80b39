#pragma once

#include "hurst/error.hpp"
#include "hurst/fbm.hpp"
#include "hurst/harness.hpp"
#include "hurst/io.hpp"
#include "hurst/ndwt.hpp"
#include "hurst/posterior.hpp"
#include "hurst/prior.hpp"
#include "hurst/regression.hpp"
#include "hurst/signal.hpp"
#include "hurst/wavelet_filter.hpp"
