#pragma once

#include "lry/ratio.hpp"
#include "lry/model.hpp"
#include "lry/strategy.hpp"
#include "lry/targets.hpp"
#include "lry/protocol.hpp"
#include "lry/rng.hpp"
#include "lry/sweep.hpp"
#include "lry/grid.hpp"
#include "lry/geodelta.hpp"
#include "lry/oracle.hpp"
#include "lry/examples.hpp"
#include "lry/io.hpp"
