#ifndef OPINT_OPINT_HPP
#define OPINT_OPINT_HPP

#include "checks.hpp"
#include "ddiff.hpp"
#include "errors.hpp"
#include "funcmodel.hpp"
#include "linalg.hpp"
#include "matrix_io.hpp"
#include "moi.hpp"
#include "perturb.hpp"
#include "report.hpp"
#include "rng.hpp"

#endif
