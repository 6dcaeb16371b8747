#ifndef ATNEVO_ATNEVO_HPP
#define ATNEVO_ATNEVO_HPP

#include "atn.hpp"
#include "config.hpp"
#include "core.hpp"
#include "evolution.hpp"
#include "experiment.hpp"
#include "genetic_code.hpp"
#include "genome.hpp"
#include "graph_builder.hpp"
#include "maze.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "runtime.hpp"
#include "stats.hpp"
#include "tokens.hpp"

#endif
