#pragma once

#include "rational.hpp"
#include "root_data.hpp"
#include "text_io.hpp"
#include "torbit.hpp"
#include "path.hpp"
#include "gls.hpp"
#include "crystal_graph.hpp"
#include "crystal_models.hpp"
#include "character.hpp"
#include "fixtures.hpp"
#include "invariants.hpp"
