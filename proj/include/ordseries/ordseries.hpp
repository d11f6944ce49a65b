#pragma once

// Umbrella header: the whole library in one include.

#include "arith.hpp"       // IWYU pragma: export
#include "combine.hpp"     // IWYU pragma: export
#include "csv.hpp"         // IWYU pragma: export
#include "errors.hpp"      // IWYU pragma: export
#include "expr.hpp"        // IWYU pragma: export
#include "format.hpp"      // IWYU pragma: export
#include "index.hpp"       // IWYU pragma: export
#include "missing.hpp"     // IWYU pragma: export
#include "regular.hpp"     // IWYU pragma: export
#include "rolling.hpp"     // IWYU pragma: export
#include "series.hpp"      // IWYU pragma: export
#include "svg.hpp"         // IWYU pragma: export
