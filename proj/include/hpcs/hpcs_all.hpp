#pragma once

#include <hpcs/common.hpp>
#include <hpcs/fock.hpp>
#include <hpcs/hpcs.hpp>
#include <hpcs/specfun.hpp>
#include <hpcs/squeezed.hpp>
#include <hpcs/verify.hpp>

namespace hpcs {

inline constexpr const char* version = "0.1.0";

}  // namespace hpcs
