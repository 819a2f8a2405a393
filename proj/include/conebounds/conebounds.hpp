#pragma once

#include "conebounds/cli.hpp"
#include "conebounds/error.hpp"
#include "conebounds/gauge_opt.hpp"
#include "conebounds/geometry.hpp"
#include "conebounds/io.hpp"
#include "conebounds/model_ops.hpp"
#include "conebounds/quadrature.hpp"
#include "conebounds/reduced_1d.hpp"
#include "conebounds/robin.hpp"
#include "conebounds/tridiagonal.hpp"
