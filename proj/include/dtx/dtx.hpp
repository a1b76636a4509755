#ifndef DTX_DTX_HPP
#define DTX_DTX_HPP

#include "dtx/error.hpp"
#include "dtx/real_set.hpp"
#include "dtx/monotone.hpp"
#include "dtx/cdf.hpp"
#include "dtx/measure.hpp"
#include "dtx/transform.hpp"
#include "dtx/stochastic.hpp"
#include "dtx/copula.hpp"
#include "dtx/verify.hpp"

#endif  // DTX_DTX_HPP
