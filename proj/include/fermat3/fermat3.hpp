#pragma once

#include "fermat3/arith.hpp"
#include "fermat3/classgroup.hpp"
#include "fermat3/contfrac.hpp"
#include "fermat3/criteria.hpp"
#include "fermat3/error.hpp"
#include "fermat3/field.hpp"
#include "fermat3/frey.hpp"
#include "fermat3/group.hpp"
#include "fermat3/harness.hpp"
#include "fermat3/ideal.hpp"
#include "fermat3/polynomial.hpp"
#include "fermat3/report.hpp"
#include "fermat3/sunits.hpp"
#include "fermat3/units.hpp"
