#pragma once

#include "exsheaf/error.hpp"
#include "exsheaf/config.hpp"
#include "exsheaf/lattice.hpp"
#include "exsheaf/atom.hpp"
#include "exsheaf/cohom.hpp"
#include "exsheaf/rigidity.hpp"
#include "exsheaf/factorization.hpp"
#include "exsheaf/catalog.hpp"
#include "exsheaf/reducer.hpp"
#include "exsheaf/io.hpp"
#include "exsheaf/fixtures.hpp"
