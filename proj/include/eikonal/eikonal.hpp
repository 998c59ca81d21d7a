#pragma once

#include "eikonal/common.hpp"
#include "eikonal/metric_graph.hpp"
#include "eikonal/weight_field.hpp"
#include "eikonal/quadrature.hpp"
#include "eikonal/optical.hpp"
#include "eikonal/dirichlet.hpp"
#include "eikonal/slopes.hpp"
#include "eikonal/regularity.hpp"
#include "eikonal/transversal.hpp"
#include "eikonal/expression.hpp"
#include "eikonal/scenario.hpp"
