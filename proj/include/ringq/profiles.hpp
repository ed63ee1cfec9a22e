#pragma once

#include <string>

#include "ringq/qprofile.hpp"

namespace ringq {

/// Named radial dilatation profiles used by the CLI and bindings:
///   const:K   constant K
///   log       log(1/r)
///   log2      max(1, log^2(1/r))
///   powlog:C  C log^{n-1}(1/r)
/// Unknown names raise std::invalid_argument.
QProfile profile_by_name(const std::string& name, int n);

/// Same registry, clamped below at 1 so the truncated-map construction
/// (which requires Q >= 1) accepts every named profile.
QProfile family_profile_by_name(const std::string& name, int n);

}  // namespace ringq
