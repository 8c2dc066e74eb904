#include "infodyn/embedding.hpp"

namespace infodyn::detail {

void require_samples(std::size_t have, std::size_t need) {
  if (have < need)
    throw DataError("insufficient samples: need at least " + std::to_string(need) + ", got " +
                    std::to_string(have));
}

}  // namespace infodyn::detail
