#pragma once

#include "paralat/branch_tree.hpp"
#include "paralat/eqp.hpp"
#include "paralat/eventual.hpp"
#include "paralat/poly.hpp"
#include "paralat/ratfunc.hpp"
#include "paralat/enumerate.hpp"
#include "paralat/gram_schmidt.hpp"
#include "paralat/hnf.hpp"
#include "paralat/lll.hpp"
#include "paralat/param_basis.hpp"
#include "paralat/param_lll.hpp"
#include "paralat/solvers.hpp"
#include "paralat/verify.hpp"
#include "paralat/random.hpp"
