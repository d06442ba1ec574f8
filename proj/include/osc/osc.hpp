#ifndef OSC_OSC_HPP_
#define OSC_OSC_HPP_

#include "osc/boundary.hpp"
#include "osc/error.hpp"
#include "osc/frames.hpp"
#include "osc/group.hpp"
#include "osc/metric.hpp"
#include "osc/numeric.hpp"
#include "osc/oracle.hpp"
#include "osc/representations.hpp"

#endif  // OSC_OSC_HPP_
