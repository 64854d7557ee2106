#pragma once

#include <string>
#include <vector>

#include "slicealg/algebra.hpp"

namespace slicealg {

// Builtin algebras: C, H, O, SC, SH, DR, DC, DH, SO, SO_ALT and CL(p,q)
// with p+q <= 6. Instances are cached, so repeated calls return the same
// pointer and elements built from them can be mixed freely.
AlgebraPtr make_builtin(const std::string& name, const std::vector<int>& params = {});

// Accepts the CLI forms: names above (case-insensitive), "cl-p-q",
// "CL(p,q)" and "Rn" as shorthand for CL(0,n).
AlgebraPtr algebra_from_id(const std::string& id);

// Ids of every builtin with dimension <= max_dim, CL(p,q) included.
std::vector<std::string> builtin_ids(int max_dim = 64);

}  // namespace slicealg
