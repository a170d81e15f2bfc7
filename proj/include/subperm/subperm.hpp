#pragma once

#include "subperm/version.hpp"
#include "subperm/errors.hpp"
#include "subperm/arith/rational.hpp"
#include "subperm/arith/combinatorics.hpp"
#include "subperm/arith/polynomial.hpp"
#include "subperm/ensembles/matrix.hpp"
#include "subperm/ensembles/subpermanent.hpp"
#include "subperm/ensembles/cycle_types.hpp"
#include "subperm/ensembles/oracles.hpp"
#include "subperm/ensembles/bernoulli.hpp"
#include "subperm/ensembles/sampling.hpp"
#include "subperm/formulas/terms.hpp"
#include "subperm/formulas/series.hpp"
#include "subperm/formulas/appendix.hpp"
#include "subperm/verify/report.hpp"
#include "subperm/verify/order.hpp"
#include "subperm/verify/moments.hpp"
#include "subperm/verify/claims.hpp"
#include "subperm/verify/suite.hpp"
