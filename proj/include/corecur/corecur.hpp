#pragma once

#include "corecur/cyk.hpp"
#include "corecur/error.hpp"
#include "corecur/euclid.hpp"
#include "corecur/graph_wf.hpp"
#include "corecur/hydra.hpp"
#include "corecur/rec_engine.hpp"
#include "corecur/sorting.hpp"
#include "corecur/wf_orders.hpp"
