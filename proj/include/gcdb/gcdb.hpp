#pragma once

#include "gcdb/arith_table.hpp"
#include "gcdb/averages.hpp"
#include "gcdb/core.hpp"
#include "gcdb/factor.hpp"
#include "gcdb/graph.hpp"
#include "gcdb/lattice_stats.hpp"
#include "gcdb/metric.hpp"
#include "gcdb/parallel.hpp"
#include "gcdb/patterns.hpp"
#include "gcdb/zeta.hpp"
