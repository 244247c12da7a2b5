#include "fthresh/prime.hpp"

#include <string>

#include <gmpxx.h>

#include "fthresh/errors.hpp"

namespace fthresh {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  const mpz_class z(std::to_string(n), 10);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

Prime::Prime(std::uint64_t value) : value_(value) {
  if (value >= (std::uint64_t{1} << 62)) throw DomainError("characteristic must fit in 62 bits");
  if (!is_prime(value)) throw DomainError(std::to_string(value) + " is not prime");
}

}  // namespace fthresh
