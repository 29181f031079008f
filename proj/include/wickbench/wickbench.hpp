#pragma once

// Umbrella header.

#include "chaos.hpp"
#include "checks.hpp"
#include "exp_span.hpp"
#include "json_io.hpp"
#include "linalg.hpp"
#include "measures.hpp"
#include "multi_index.hpp"
#include "products.hpp"
#include "quadrature.hpp"
#include "random.hpp"
#include "report.hpp"
#include "suite.hpp"
