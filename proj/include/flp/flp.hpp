#pragma once

// Agent-constrained facility location on the line: model, optimal solvers, mechanisms,
// instance generators and the verification layer.

#include "flp/bounds.hpp"
#include "flp/errors.hpp"
#include "flp/instance_gen.hpp"
#include "flp/io.hpp"
#include "flp/mechanisms.hpp"
#include "flp/model.hpp"
#include "flp/opt_solver.hpp"
#include "flp/rational.hpp"
#include "flp/regressions.hpp"
#include "flp/verification.hpp"
