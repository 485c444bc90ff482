#pragma once

#include "amri_protocol.hpp"
#include "core_model.hpp"
#include "deg_res_sampling.hpp"
#include "feww_insertion_deletion.hpp"
#include "feww_insertion_only.hpp"
#include "hard_instances.hpp"
#include "harness.hpp"
#include "l0_sampler.hpp"
#include "random.hpp"
#include "star_detection.hpp"
