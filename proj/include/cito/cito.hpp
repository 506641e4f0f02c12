#pragma once

#include "cito/breaking.hpp"
#include "cito/cycles.hpp"
#include "cito/datasets.hpp"
#include "cito/io.hpp"
#include "cito/metrics.hpp"
#include "cito/model.hpp"
#include "cito/ordering.hpp"
#include "cito/rational.hpp"
#include "cito/scc.hpp"
#include "cito/search.hpp"
