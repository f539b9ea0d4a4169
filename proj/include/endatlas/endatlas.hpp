#ifndef ENDATLAS_ENDATLAS_HPP
#define ENDATLAS_ENDATLAS_HPP

#include "endatlas/error.hpp"
#include "endatlas/lattice.hpp"
#include "endatlas/rootsys.hpp"
#include "endatlas/weyl.hpp"
#include "endatlas/torus.hpp"
#include "endatlas/galois.hpp"
#include "endatlas/endodata.hpp"
#include "endatlas/elliptic.hpp"
#include "endatlas/reduction.hpp"
#include "endatlas/shapiro.hpp"
#include "endatlas/localglobal.hpp"
#include "endatlas/parallel.hpp"
#include "endatlas/serialize.hpp"
#include "endatlas/report.hpp"
#include "endatlas/suites.hpp"

#endif  // ENDATLAS_ENDATLAS_HPP
