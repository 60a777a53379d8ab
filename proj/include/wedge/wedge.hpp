#pragma once

#include "wedge/betti.hpp"
#include "wedge/element.hpp"
#include "wedge/field.hpp"
#include "wedge/groebner.hpp"
#include "wedge/koszul.hpp"
#include "wedge/linalg.hpp"
#include "wedge/monomial.hpp"
#include "wedge/qforms.hpp"
#include "wedge/quotient.hpp"
#include "wedge/resolution.hpp"
#include "wedge/ring.hpp"
#include "wedge/series.hpp"
