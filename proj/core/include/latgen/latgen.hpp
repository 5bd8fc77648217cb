#pragma once

#include "latgen/cbc.hpp"
#include "latgen/cbc_dbd.hpp"
#include "latgen/compensated_sum.hpp"
#include "latgen/error.hpp"
#include "latgen/fft.hpp"
#include "latgen/kernel.hpp"
#include "latgen/numtheory.hpp"
#include "latgen/weights.hpp"
