#pragma once

#include "hj/axioms.hpp"
#include "hj/bound_params.hpp"
#include "hj/config.hpp"
#include "hj/distribution.hpp"
#include "hj/enumerate.hpp"
#include "hj/errors.hpp"
#include "hj/families.hpp"
#include "hj/fuzz.hpp"
#include "hj/hj_engine.hpp"
#include "hj/mc_runner.hpp"
#include "hj/path_stats.hpp"
#include "hj/permutation.hpp"
#include "hj/proof_lab.hpp"
#include "hj/rational.hpp"
#include "hj/report_json.hpp"
#include "hj/rng.hpp"
#include "hj/semigroup.hpp"
#include "hj/wilson.hpp"
