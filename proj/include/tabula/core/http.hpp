#pragma once

// httplib pulls in <resolv.h>, whose `_res` macro collides with Eigen
// parameter names; nothing here needs the resolver state.
#include "httplib.h"
#ifdef _res
#undef _res
#endif
