#pragma once

#include "tgraph/algebra.hpp"
#include "tgraph/cardinal.hpp"
#include "tgraph/constructions.hpp"
#include "tgraph/errors.hpp"
#include "tgraph/factor_map.hpp"
#include "tgraph/graph.hpp"
#include "tgraph/io.hpp"
#include "tgraph/paths.hpp"
#include "tgraph/projective.hpp"
