#include "sonic/error.hpp"

namespace sonic {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace sonic
