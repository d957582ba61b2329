#pragma once

#include "rvw/balls_bins.hpp"
#include "rvw/degree.hpp"
#include "rvw/fq.hpp"
#include "rvw/grid.hpp"
#include "rvw/instance_gen.hpp"
#include "rvw/multipoly.hpp"
#include "rvw/numeric.hpp"
#include "rvw/poly_parser.hpp"
#include "rvw/report.hpp"
#include "rvw/schanuel_brink.hpp"
#include "rvw/serialize.hpp"
#include "rvw/warning_verify.hpp"
#include "rvw/zerosum.hpp"
