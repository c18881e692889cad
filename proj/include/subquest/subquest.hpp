#pragma once

#include "subquest/clique.hpp"
#include "subquest/codec.hpp"
#include "subquest/dfs_code.hpp"
#include "subquest/engine.hpp"
#include "subquest/error.hpp"
#include "subquest/graph.hpp"
#include "subquest/isomorphism.hpp"
#include "subquest/oracle.hpp"
#include "subquest/pattern_mining.hpp"
#include "subquest/priority.hpp"
#include "subquest/queues.hpp"
#include "subquest/result_set.hpp"
#include "subquest/subgraph.hpp"
#include "subquest/vertex_index.hpp"
#include "subquest/virtual_priority_queue.hpp"
