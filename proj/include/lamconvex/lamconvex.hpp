#pragma once

#include "lamconvex/error.hpp"
#include "lamconvex/core.hpp"
#include "lamconvex/lamparams.hpp"
#include "lamconvex/convexity.hpp"
#include "lamconvex/counterexample.hpp"
#include "lamconvex/io.hpp"
#include "lamconvex/report.hpp"
