#include "edsf/factor.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <vector>

#include "mont.hpp"

namespace edsf {

namespace {

using detail::u128;
using detail::u64;

const mpz_class kDeterministicBound("3317044064679887385961981");

const unsigned kSmallBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

u64 mulmod_u64(u64 a, u64 b, u64 n) { return (u128)a * b % n; }

u64 powmod_u64(u64 a, u64 e, u64 n) {
  u64 r = 1;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, n);
    a = mulmod_u64(a, a, n);
    e >>= 1;
  }
  return r;
}

bool mr_round_u64(u64 n, u64 d, unsigned s, u64 base) {
  base %= n;
  if (base == 0) return true;
  u64 x = powmod_u64(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool is_prime_u64(u64 n) {
  // n odd, not divisible by the small trial primes
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : kSmallBases)
    if (!mr_round_u64(n, d, s, b)) return false;
  return true;
}

bool mr_round_mpz(const mpz_class& n, const mpz_class& d, unsigned long s,
                  const mpz_class& base) {
  mpz_class b = base % n;
  if (b == 0) return true;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

template <int NL>
bool is_prime_limbs(const mpz_class& n, const mpz_class& d, unsigned long s,
                    bool extra_rounds) {
  detail::Mont<NL> M(n);
  for (unsigned b : kSmallBases)
    if (!detail::mr_round(M, n, d, s, mpz_class(b))) return false;
  if (!extra_rounds) return true;
  u64 state = n.get_ui() ^ 0x243f6a8885a308d3ULL;
  for (int i = 0; i < 64; ++i) {
    mpz_class b = mpz_class(detail::splitmix64(state)) + 2;
    if (!detail::mr_round(M, n, d, s, b)) return false;
  }
  return true;
}

const std::vector<u64>& trial_primes() {
  static const std::vector<u64> primes = [] {
    const unsigned limit = 100000;
    std::vector<bool> composite(limit, false);
    std::vector<u64> out;
    for (unsigned i = 2; i < limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = 2 * i; j < limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

mpz_class rho_mpz(const mpz_class& n, u64& seed,
                  std::chrono::steady_clock::time_point deadline) {
  constexpr unsigned long batch = 128;
  for (;;) {
    mpz_class y = mpz_class(detail::splitmix64(seed)) % n;
    mpz_class c = mpz_class(detail::splitmix64(seed)) % n;
    mpz_class x, ys, q = 1, g = 1;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        if (std::chrono::steady_clock::now() > deadline) return 0;
        ys = y;
        unsigned long lim = std::min(batch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * (x - y) % n;
        }
        g = gcd(q, n);
        k += batch;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(mpz_class(x - ys), n);
      }
    }
    if (g != n && g != 0) return abs(g);
  }
}

mpz_class rho_factor(const mpz_class& n, u64& seed,
                     std::chrono::steady_clock::time_point deadline) {
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits <= 126) return detail::rho_limbs<2>(n, seed, deadline);
  if (bits <= 190) return detail::rho_limbs<3>(n, seed, deadline);
  if (bits <= 254) return detail::rho_limbs<4>(n, seed, deadline);
  return rho_mpz(n, seed, deadline);
}

}  // namespace

bool is_prime_certified_range(const mpz_class& n) {
  return n < kDeterministicBound;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  for (unsigned p : kSmallBases) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits <= 63) return is_prime_u64(n.get_ui());
  mpz_class n1 = n - 1;
  unsigned long s = mpz_scan1(n1.get_mpz_t(), 0);
  mpz_class d = n1 >> s;
  bool extra = !is_prime_certified_range(n);
  if (bits <= 126) return is_prime_limbs<2>(n, d, s, extra);
  if (bits <= 190) return is_prime_limbs<3>(n, d, s, extra);
  if (bits <= 254) return is_prime_limbs<4>(n, d, s, extra);
  for (unsigned b : kSmallBases)
    if (!mr_round_mpz(n, d, s, b)) return false;
  if (extra) {
    u64 state = n.get_ui() ^ 0x243f6a8885a308d3ULL;
    for (int i = 0; i < 64; ++i)
      if (!mr_round_mpz(n, d, s, mpz_class(detail::splitmix64(state)) + 2))
        return false;
  }
  return true;
}

Factorization factorize(const mpz_class& n, const FactorOptions& opt) {
  if (n < 1) throw PreconditionFailed("factorize requires n >= 1");
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(opt.budget_secs));
  Factorization out;
  out.input = n;
  out.remainder = 1;
  out.certified = true;

  std::map<mpz_class, unsigned long> found;
  mpz_class work = n;
  for (u64 p : trial_primes()) {
    if (mpz_cmp_ui(work.get_mpz_t(), p * p) < 0) break;
    while (mpz_divisible_ui_p(work.get_mpz_t(), p)) {
      mpz_divexact_ui(work.get_mpz_t(), work.get_mpz_t(), p);
      ++found[mpz_class(p)];
    }
  }
  if (work > 1 && mpz_cmp_ui(work.get_mpz_t(), 100000ul * 100000ul) < 0) {
    // survived trial division below 1e5 and is under 1e10: prime
    ++found[work];
    work = 1;
  }

  u64 seed = opt.seed ? opt.seed : 1;
  std::vector<std::pair<mpz_class, unsigned long>> pending;
  if (work > 1) pending.emplace_back(work, 1);
  while (!pending.empty()) {
    auto [m, mult] = pending.back();
    pending.pop_back();
    if (is_prime(m)) {
      found[m] += mult;
      if (!is_prime_certified_range(m)) out.certified = false;
      continue;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
      size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
      for (unsigned long e = 2; e <= bits; ++e) {
        mpz_class root, rem;
        mpz_rootrem(root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t(), e);
        if (rem == 0) {
          pending.emplace_back(root, mult * e);
          break;
        }
      }
      continue;
    }
    if (std::chrono::steady_clock::now() > deadline) {
      mpz_class part;
      mpz_pow_ui(part.get_mpz_t(), m.get_mpz_t(), mult);
      out.remainder *= part;
      out.certified = false;
      continue;
    }
    mpz_class g = rho_factor(m, seed, deadline);
    if (g == 0) {  // budget exhausted inside rho
      mpz_class part;
      mpz_pow_ui(part.get_mpz_t(), m.get_mpz_t(), mult);
      out.remainder *= part;
      out.certified = false;
      continue;
    }
    pending.emplace_back(g, mult);
    pending.emplace_back(mpz_class(m / g), mult);
  }

  for (auto& [p, e] : found)
    out.factors.push_back({p, static_cast<unsigned>(e)});
  return out;
}

unsigned long ord_q(const mpz_class& n, const mpz_class& q) {
  if (n == 0) throw PreconditionFailed("ord_q requires n != 0");
  if (q < 2) throw PreconditionFailed("ord_q requires q >= 2");
  mpz_class tmp, a = abs(n);
  return mpz_remove(tmp.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
}

std::string to_string(const Factorization& f) {
  if (f.factors.empty() && f.remainder == 1) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& pp : f.factors) {
    if (!first) os << " * ";
    first = false;
    os << pp.prime;
    if (pp.exp > 1) os << '^' << pp.exp;
  }
  if (f.remainder != 1) {
    if (!first) os << " * ";
    os << '[' << f.remainder << " composite]";
  }
  return os.str();
}

}  // namespace edsf
