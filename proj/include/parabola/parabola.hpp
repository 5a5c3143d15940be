#pragma once

#include "parabola/arith.hpp"
#include "parabola/charsum.hpp"
#include "parabola/counting.hpp"
#include "parabola/gauss.hpp"
#include "parabola/gaussian_unit.hpp"
#include "parabola/parallel.hpp"
#include "parabola/rational.hpp"
#include "parabola/report.hpp"
#include "parabola/series.hpp"
