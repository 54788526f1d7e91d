#pragma once

// Umbrella header: the whole library in dependency order.

#include "reiflab/errors.hpp"
#include "reiflab/geom.hpp"
#include "reiflab/theta.hpp"
#include "reiflab/construct.hpp"
#include "reiflab/address.hpp"
#include "reiflab/rotation.hpp"
#include "reiflab/families.hpp"
#include "reiflab/sample.hpp"
#include "reiflab/localview.hpp"
#include "reiflab/parallel.hpp"
#include "reiflab/reifenberg.hpp"
#include "reiflab/analysis.hpp"
#include "reiflab/io.hpp"
#include "reiflab/cli.hpp"
