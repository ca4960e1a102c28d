#pragma once

#include "hre/error.hpp"
#include "hre/linalg.hpp"
#include "hre/pc_matrix.hpp"
#include "hre/prioritization.hpp"
#include "hre/hre_solver.hpp"
#include "hre/hierarchy.hpp"
#include "hre/model_io.hpp"
