#ifndef POLEST_POLEST_HPP
#define POLEST_POLEST_HPP

#include "bounds.hpp"
#include "combinatorics.hpp"
#include "error.hpp"
#include "extremal.hpp"
#include "form.hpp"
#include "format.hpp"
#include "lp_space.hpp"
#include "norms.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "series.hpp"

#endif
