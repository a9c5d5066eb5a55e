#pragma once

#include "error.hpp"
#include "integers.hpp"
#include "scalars.hpp"
#include "pbw_algebra.hpp"
#include "ncmatrix.hpp"
#include "linalg.hpp"
#include "spin_extension.hpp"
#include "cayley_hamilton.hpp"
#include "line_bundles.hpp"
#include "representations.hpp"
#include "derham.hpp"
#include "json_io.hpp"
#include "cache.hpp"
#include "cli.hpp"
