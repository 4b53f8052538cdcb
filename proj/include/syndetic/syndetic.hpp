#ifndef SYNDETIC_SYNDETIC_HPP_
#define SYNDETIC_SYNDETIC_HPP_

#include "core.hpp"
#include "covering.hpp"
#include "finite_set.hpp"
#include "group.hpp"
#include "gspace.hpp"
#include "hom.hpp"
#include "measure.hpp"
#include "partition.hpp"
#include "rational.hpp"
#include "setcalc.hpp"
#include "sigma.hpp"
#include "simplex.hpp"
#include "submeasure.hpp"
#include "windowed.hpp"

#endif  // SYNDETIC_SYNDETIC_HPP_
