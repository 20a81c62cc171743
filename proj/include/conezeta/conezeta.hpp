#pragma once

#include "conezeta/canonical.hpp"
#include "conezeta/cone.hpp"
#include "conezeta/cone_integral.hpp"
#include "conezeta/io.hpp"
#include "conezeta/lie_algebra.hpp"
#include "conezeta/motivic_rational.hpp"
#include "conezeta/oracle.hpp"
#include "conezeta/parse.hpp"
#include "conezeta/topological.hpp"
#include "conezeta/verify.hpp"
