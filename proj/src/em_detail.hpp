#pragma once

#include "lmoment/characters.hpp"

namespace lmoment::analytic::detail {

Complex em_corrections(Complex s, double n, double& bound);

}  // namespace lmoment::analytic::detail
