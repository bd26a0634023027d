// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "ampd/kernels.hpp"

namespace ampd::kernels {

// Backend factories. Each returns nullptr when the build target or the
// running CPU lacks the instruction set.
const Ops* scalar_ops();
const Ops* avx2_ops();
const Ops* neon_ops();

}  // namespace ampd::kernels
