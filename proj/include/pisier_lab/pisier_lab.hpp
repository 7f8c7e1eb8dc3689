#pragma once

#include "pisier_lab/bound_report.hpp"
#include "pisier_lab/compensated_sum.hpp"
#include "pisier_lab/cube_function.hpp"
#include "pisier_lab/cube_io.hpp"
#include "pisier_lab/cube_point.hpp"
#include "pisier_lab/errors.hpp"
#include "pisier_lab/linear_proxy.hpp"
#include "pisier_lab/lower_bound.hpp"
#include "pisier_lab/norm.hpp"
#include "pisier_lab/pisier_bench.hpp"
#include "pisier_lab/random_function.hpp"
#include "pisier_lab/sandwich.hpp"
#include "pisier_lab/vector_function.hpp"
#include "pisier_lab/walsh_hadamard.hpp"
