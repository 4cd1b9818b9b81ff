#pragma once

#include "quivex/errors.hpp"
#include "quivex/exchange.hpp"
#include "quivex/json_io.hpp"
#include "quivex/qp.hpp"
#include "quivex/quotient.hpp"
#include "quivex/seeds.hpp"
#include "quivex/surface.hpp"
#include "quivex/torus.hpp"
