#pragma once

#include "errors.hpp"
#include "matrix.hpp"
#include "dissimilarity.hpp"
#include "graph.hpp"
#include "spectral.hpp"
#include "walker.hpp"
#include "aggregation.hpp"
#include "strategy.hpp"
#include "dataset.hpp"
#include "synthetic.hpp"
#include "config.hpp"
#include "run.hpp"
#include "report.hpp"
