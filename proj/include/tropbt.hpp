#pragma once

#include "tropbt/rational.hpp"
#include "tropbt/lattice.hpp"
#include "tropbt/curve.hpp"
#include "tropbt/metgraph.hpp"
#include "tropbt/pairing.hpp"
#include "tropbt/theta.hpp"
#include "tropbt/bitangent.hpp"
#include "tropbt/family.hpp"
#include "tropbt/properties.hpp"
#include "tropbt/fixtures.hpp"
#include "tropbt/svg.hpp"
#include "tropbt/io.hpp"
