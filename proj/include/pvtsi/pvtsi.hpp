#pragma once

#include "pvtsi/jet.hpp"
#include "pvtsi/transforms.hpp"
#include "pvtsi/integrand.hpp"
#include "pvtsi/quadrature.hpp"
#include "pvtsi/oracle.hpp"
#include "pvtsi/study.hpp"
