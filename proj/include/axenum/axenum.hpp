#pragma once

#include "axenum/coding.hpp"
#include "axenum/partial_function.hpp"
#include "axenum/set_description.hpp"
#include "axenum/fresh.hpp"
#include "axenum/axiom.hpp"
#include "axenum/yields.hpp"
#include "axenum/brute_force.hpp"
#include "axenum/json_conv.hpp"
#include "axenum/fixtures.hpp"
#include "axenum/tree.hpp"
#include "axenum/scheduler.hpp"
#include "axenum/trace.hpp"
#include "axenum/context.hpp"
#include "axenum/strategies.hpp"
#include "axenum/construction.hpp"
#include "axenum/verify.hpp"
