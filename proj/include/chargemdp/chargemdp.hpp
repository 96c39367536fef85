#pragma once

#include "chargemdp/blackwell.hpp"
#include "chargemdp/cases.hpp"
#include "chargemdp/charge.hpp"
#include "chargemdp/expr.hpp"
#include "chargemdp/mdp.hpp"
#include "chargemdp/mdp_io.hpp"
#include "chargemdp/periodic_set.hpp"
#include "chargemdp/rational.hpp"
#include "chargemdp/rational_function.hpp"
#include "chargemdp/search.hpp"
#include "chargemdp/stream.hpp"
