#pragma once

#include "toepsys/error.hpp"
#include "toepsys/poly.hpp"
#include "toepsys/core.hpp"
#include "toepsys/factor.hpp"
#include "toepsys/decompose.hpp"
#include "toepsys/states.hpp"
#include "toepsys/lp.hpp"
#include "toepsys/metric.hpp"
#include "toepsys/circulant.hpp"
#include "toepsys/opsys.hpp"
#include "toepsys/geometry3.hpp"
#include "toepsys/json_io.hpp"
