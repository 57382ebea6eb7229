#pragma once

#include "rcm/association.hpp"
#include "rcm/coupling.hpp"
#include "rcm/errors.hpp"
#include "rcm/exact_measures.hpp"
#include "rcm/flows.hpp"
#include "rcm/graph.hpp"
#include "rcm/graph_enum.hpp"
#include "rcm/kn.hpp"
#include "rcm/measure.hpp"
#include "rcm/number.hpp"
#include "rcm/polynomial.hpp"
#include "rcm/random.hpp"
#include "rcm/report.hpp"
#include "rcm/statistics.hpp"
#include "rcm/tutte.hpp"
