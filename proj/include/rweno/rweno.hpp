#ifndef RWENO_RWENO_HPP_
#define RWENO_RWENO_HPP_

#include "rweno/analysis.hpp"
#include "rweno/error.hpp"
#include "rweno/funcspace.hpp"
#include "rweno/ratnet.hpp"
#include "rweno/reconstruct.hpp"
#include "rweno/rng.hpp"
#include "rweno/scheme.hpp"
#include "rweno/solver.hpp"
#include "rweno/train.hpp"

#endif  // RWENO_RWENO_HPP_
