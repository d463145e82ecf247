#pragma once

#include "sorder/types.hpp"

namespace sorder {

// Number of intermediate levels n for sums of z^n D(v)|n><n|D(v)^dag restricted
// to the leading `dim` rows: the smaller of the support of the displaced
// levels and the point where |z|^n drops below 1e-17.
int work_dim(int dim, cplx center, cplx z);

}  // namespace sorder
