#pragma once

// Umbrella header for the heis library.

#include "heis/classify.hpp"
#include "heis/error.hpp"
#include "heis/form.hpp"
#include "heis/group.hpp"
#include "heis/heisenberg.hpp"
#include "heis/hom.hpp"
#include "heis/int_matrix.hpp"
#include "heis/io.hpp"
#include "heis/modarith.hpp"
#include "heis/reduction.hpp"
#include "heis/weyl.hpp"
