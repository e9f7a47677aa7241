#pragma once

#include "chainvd/configspace.hpp"
#include "chainvd/constructions.hpp"
#include "chainvd/errors.hpp"
#include "chainvd/frechet.hpp"
#include "chainvd/geometry.hpp"
#include "chainvd/io.hpp"
#include "chainvd/random.hpp"
#include "chainvd/voronoi.hpp"
