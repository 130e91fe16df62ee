#pragma once

#include "pbpo/classifier.hpp"
#include "pbpo/error.hpp"
#include "pbpo/fixtures.hpp"
#include "pbpo/graph.hpp"
#include "pbpo/interop.hpp"
#include "pbpo/io.hpp"
#include "pbpo/lattice.hpp"
#include "pbpo/limits.hpp"
#include "pbpo/rewrite.hpp"
