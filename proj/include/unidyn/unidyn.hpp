#pragma once

#include "galois.hpp"
#include "portraits.hpp"
