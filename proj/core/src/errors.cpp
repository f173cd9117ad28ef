#include "tempnet/errors.hpp"

namespace tempnet {

void throw_invariant(const std::string& what) {
  throw InvariantError("invariant violated: " + what);
}

}  // namespace tempnet
