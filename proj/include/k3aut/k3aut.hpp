#pragma once

#include "k3aut/integer.hpp"
#include "k3aut/pell.hpp"
#include "k3aut/lattice.hpp"
#include "k3aut/roots.hpp"
#include "k3aut/isometry.hpp"
#include "k3aut/gluing.hpp"
#include "k3aut/report.hpp"
