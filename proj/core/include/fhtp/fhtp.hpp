#pragma once

#include "fhtp/channel_model.hpp"
#include "fhtp/errors.hpp"
#include "fhtp/fading.hpp"
#include "fhtp/oracle.hpp"
#include "fhtp/policy.hpp"
#include "fhtp/scenario.hpp"
#include "fhtp/throughput_region.hpp"
#include "fhtp/ttm_solver.hpp"
#include "fhtp/vector.hpp"
