#pragma once

// Fixed-width Montgomery kernels used by the primality test and rho loop.
// Values stay in the Montgomery domain throughout; rho never converts back
// since gcd(x*R mod n, n) = gcd(x, n).

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <cstring>

namespace edsf::detail {

using u64 = uint64_t;
using u128 = unsigned __int128;

inline u64 splitmix64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <int NL>
struct Limbs {
  u64 w[NL];
};

template <int NL>
inline Limbs<NL> limbs_from_mpz(const mpz_class& v) {
  Limbs<NL> out;
  std::memset(out.w, 0, sizeof(out.w));
  mpz_export(out.w, nullptr, -1, sizeof(u64), 0, 0, v.get_mpz_t());
  return out;
}

template <int NL>
inline mpz_class mpz_from_limbs(const Limbs<NL>& v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), NL, -1, sizeof(u64), 0, 0, v.w);
  return out;
}

template <int NL>
inline bool limbs_is_zero(const Limbs<NL>& a) {
  for (int i = 0; i < NL; ++i)
    if (a.w[i]) return false;
  return true;
}

template <int NL>
inline bool limbs_eq(const Limbs<NL>& a, const Limbs<NL>& b) {
  for (int i = 0; i < NL; ++i)
    if (a.w[i] != b.w[i]) return false;
  return true;
}

template <int NL>
inline bool limbs_ge(const u64* a, const u64* b) {
  for (int i = NL - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

template <int NL>
inline void limbs_sub_inplace(u64* a, const u64* b) {
  u64 borrow = 0;
  for (int i = 0; i < NL; ++i) {
    u64 bi = b[i] + borrow;
    borrow = (bi < borrow) || (a[i] < bi);
    a[i] -= bi;
  }
}

// Modulus must be odd and leave the top two bits of the top limb clear
// (n < 2^(64*NL-2)) so the CIOS accumulator never overflows.
template <int NL>
struct Mont {
  Limbs<NL> n;
  u64 ninv;        // -n^{-1} mod 2^64
  Limbs<NL> one;   // R mod n
  Limbs<NL> r2;    // R^2 mod n

  explicit Mont(const mpz_class& modulus) {
    n = limbs_from_mpz<NL>(modulus);
    u64 inv = n.w[0];  // correct mod 2^3 for odd n
    for (int i = 0; i < 5; ++i) inv *= 2 - n.w[0] * inv;
    ninv = ~inv + 1;
    mpz_class r = mpz_class(1) << (64 * NL);
    one = limbs_from_mpz<NL>(mpz_class(r % modulus));
    r2 = limbs_from_mpz<NL>(mpz_class((r * r) % modulus));
  }

  Limbs<NL> mul(const Limbs<NL>& a, const Limbs<NL>& b) const {
    u64 t[NL + 2];
    std::memset(t, 0, sizeof(t));
    for (int i = 0; i < NL; ++i) {
      u128 c = 0;
      for (int j = 0; j < NL; ++j) {
        u128 cur = (u128)a.w[i] * b.w[j] + t[j] + c;
        t[j] = (u64)cur;
        c = cur >> 64;
      }
      u128 cur = (u128)t[NL] + c;
      t[NL] = (u64)cur;
      t[NL + 1] += (u64)(cur >> 64);

      u64 m = t[0] * ninv;
      c = ((u128)m * n.w[0] + t[0]) >> 64;
      for (int j = 1; j < NL; ++j) {
        u128 cur2 = (u128)m * n.w[j] + t[j] + c;
        t[j - 1] = (u64)cur2;
        c = cur2 >> 64;
      }
      u128 cur3 = (u128)t[NL] + c;
      t[NL - 1] = (u64)cur3;
      t[NL] = t[NL + 1] + (u64)(cur3 >> 64);
      t[NL + 1] = 0;
    }
    if (t[NL] != 0 || limbs_ge<NL>(t, n.w)) limbs_sub_inplace<NL>(t, n.w);
    Limbs<NL> r;
    std::memcpy(r.w, t, sizeof(r.w));
    return r;
  }

  Limbs<NL> add(const Limbs<NL>& a, const Limbs<NL>& b) const {
    u64 t[NL + 1];
    u64 carry = 0;
    for (int i = 0; i < NL; ++i) {
      u64 s = a.w[i] + carry;
      carry = s < carry;
      t[i] = s + b.w[i];
      carry += t[i] < s;
    }
    t[NL] = carry;
    if (t[NL] != 0 || limbs_ge<NL>(t, n.w)) limbs_sub_inplace<NL>(t, n.w);
    Limbs<NL> r;
    std::memcpy(r.w, t, sizeof(r.w));
    return r;
  }

  Limbs<NL> sub(const Limbs<NL>& a, const Limbs<NL>& b) const {
    Limbs<NL> r = a;
    bool borrow = !limbs_ge<NL>(a.w, b.w);
    limbs_sub_inplace<NL>(r.w, b.w);
    if (borrow) {
      u64 carry = 0;
      for (int i = 0; i < NL; ++i) {
        u64 s = r.w[i] + carry;
        carry = s < carry;
        r.w[i] = s + n.w[i];
        carry += r.w[i] < s;
      }
    }
    return r;
  }

  // a^e in the Montgomery domain, a already Montgomery, e plain.
  Limbs<NL> pow(const Limbs<NL>& a, const mpz_class& e) const {
    Limbs<NL> r = one;
    long bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (long i = bits - 1; i >= 0; --i) {
      r = mul(r, r);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
  }
};

// One Miller-Rabin round on odd n = d*2^s + 1. Base given in plain form.
template <int NL>
inline bool mr_round(const Mont<NL>& M, const mpz_class& n,
                     const mpz_class& d, unsigned long s,
                     const mpz_class& base) {
  mpz_class b = base % n;
  if (b == 0) return true;
  Limbs<NL> x = M.mul(limbs_from_mpz<NL>(b), M.r2);
  x = M.pow(x, d);
  Limbs<NL> minus_one = M.sub(limbs_from_mpz<NL>(mpz_class(0)), M.one);
  if (limbs_eq(x, M.one) || limbs_eq(x, minus_one)) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = M.mul(x, x);
    if (limbs_eq(x, minus_one)) return true;
  }
  return false;
}

// Brent's rho with batched gcds. Returns a nontrivial factor of odd composite
// n, or 0 on budget exhaustion. All arithmetic stays in the Montgomery
// domain: the iteration z -> z^2*R^-1 + c is still quadratic mod every prime
// divisor, so the usual collision bound applies.
template <int NL>
inline mpz_class rho_limbs(const mpz_class& n, u64& seed,
                           std::chrono::steady_clock::time_point deadline) {
  const Mont<NL> M(n);
  constexpr unsigned batch = 128;
  for (;;) {
    Limbs<NL> y = limbs_from_mpz<NL>(mpz_class(splitmix64(seed)) % n);
    Limbs<NL> c = limbs_from_mpz<NL>(mpz_class(splitmix64(seed)) % n);
    Limbs<NL> x = y, ys = y, q = M.one;
    mpz_class g = 1;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = M.add(M.mul(y, y), c);
      unsigned long k = 0;
      while (k < r && g == 1) {
        if (std::chrono::steady_clock::now() > deadline) return 0;
        ys = y;
        unsigned long lim = std::min<unsigned long>(batch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = M.add(M.mul(y, y), c);
          q = M.mul(q, M.sub(x, y));
        }
        g = gcd(mpz_from_limbs(q), n);
        k += batch;
      }
      r *= 2;
    }
    if (g == n) {
      // batch overshot: replay single steps from the saved point
      g = 1;
      while (g == 1) {
        ys = M.add(M.mul(ys, ys), c);
        g = gcd(mpz_from_limbs(M.sub(x, ys)), n);
      }
    }
    if (g != n) return g;
    // cycle degenerated; retry with a fresh constant
  }
}

}  // namespace edsf::detail
