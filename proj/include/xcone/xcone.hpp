#pragma once

#include "xcone/tolerance.hpp"
#include "xcone/rng.hpp"
#include "xcone/xmatrix.hpp"
#include "xcone/cones.hpp"
#include "xcone/criteria.hpp"
#include "xcone/extremals.hpp"
#include "xcone/certify.hpp"
#include "xcone/classify.hpp"
#include "xcone/io.hpp"
