#ifndef GINV_GINV_HPP
#define GINV_GINV_HPP

#include "ginv/block_formulas.hpp"
#include "ginv/block_pair.hpp"
#include "ginv/conditions.hpp"
#include "ginv/drazin.hpp"
#include "ginv/matrix.hpp"
#include "ginv/oracle.hpp"

#endif  // GINV_GINV_HPP
