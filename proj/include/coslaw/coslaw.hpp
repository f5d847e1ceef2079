#ifndef COSLAW_COSLAW_HPP
#define COSLAW_COSLAW_HPP

#include "coslaw/complex_matrix.hpp"
#include "coslaw/cosine.hpp"
#include "coslaw/discrete_semigroup.hpp"
#include "coslaw/eig.hpp"
#include "coslaw/errors.hpp"
#include "coslaw/json_io.hpp"
#include "coslaw/laws.hpp"
#include "coslaw/norms.hpp"
#include "coslaw/rng.hpp"
#include "coslaw/sqrt_series.hpp"
#include "coslaw/version.hpp"

#endif
