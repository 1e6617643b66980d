#ifndef AKMS_AKMS_HPP
#define AKMS_AKMS_HPP

#include "akms/channel.hpp"
#include "akms/control.hpp"
#include "akms/error.hpp"
#include "akms/montecarlo.hpp"
#include "akms/presets.hpp"
#include "akms/quadrature.hpp"
#include "akms/runconfig.hpp"
#include "akms/runner.hpp"
#include "akms/secrecy.hpp"
#include "akms/specfun.hpp"

#endif
