#include "symplectica/random.hpp"

#include "symplectica/error.hpp"

namespace symplectica {

Int SplitMix64::below(const Int& bound) {
  if (bound <= 0) throw PreconditionError("SplitMix64::below: non-positive bound");
  const std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
  Int acc = 0;
  for (std::size_t k = 0; k < words; ++k) {
    acc <<= 64;
    const std::uint64_t w = next();
    Int part;
    mpz_import(part.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
    acc += part;
  }
  return mod(acc, bound);
}

}  // namespace symplectica
