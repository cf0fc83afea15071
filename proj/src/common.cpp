#include "jsr/common.hpp"

#include <algorithm>

namespace jsr {

Support sorted(Support s) {
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace jsr
