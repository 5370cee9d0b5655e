#pragma once

#include "hyperarr/combinatorics.hpp"
#include "hyperarr/ensembles.hpp"
#include "hyperarr/eta.hpp"
#include "hyperarr/exact_linalg.hpp"
#include "hyperarr/homology.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/parallel.hpp"
#include "hyperarr/projective.hpp"
#include "hyperarr/separability.hpp"
#include "hyperarr/span_oracle.hpp"
#include "hyperarr/stats_store.hpp"
#include "hyperarr/verify.hpp"
