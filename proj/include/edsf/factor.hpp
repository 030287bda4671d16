#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "edsf/errors.hpp"

namespace edsf {

struct PrimePower {
  mpz_class prime;
  unsigned exp;
};

struct Factorization {
  mpz_class input;
  std::vector<PrimePower> factors;  // ascending primes
  mpz_class remainder;              // 1, or the composite part left when the
                                    // budget ran out (certified = false then)
  bool certified;                   // remainder == 1 and every prime passed a
                                    // deterministic primality certificate
};

struct FactorOptions {
  uint64_t seed = 1;          // seeds the rho polynomial constants
  double budget_secs = 60.0;  // per-call wall clock budget
};

// Miller-Rabin with the first 13 prime bases: deterministic below
// 3317044064679887385961981 (~3.317e24); above that, extra derived bases
// bring the error under 4^-64 but the answer is no longer a certificate.
bool is_prime(const mpz_class& n);

// True when is_prime(n) is deterministic at this size.
bool is_prime_certified_range(const mpz_class& n);

// Trial division below 1e5, perfect-power splitting, then Brent's rho with
// batched gcds (one gcd per 128 steps). n >= 1.
Factorization factorize(const mpz_class& n, const FactorOptions& opt = {});

// Largest e with q^e | n. n != 0, q >= 2.
unsigned long ord_q(const mpz_class& n, const mpz_class& q);

// "2^3 * 5 * 17"; "1" for an empty factorization. A leftover composite
// remainder is appended as "[R composite]".
std::string to_string(const Factorization& f);

}  // namespace edsf
