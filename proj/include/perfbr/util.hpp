// Shared small utilities: integer helpers, deterministic RNG, error types.
#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace perfbr {

// ---------------------------------------------------------------------------
// Errors. Names follow the operation contracts across modules.
// ---------------------------------------------------------------------------

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonUnityRoots : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAutomorphism : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSplit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DictionaryTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DefectNotInImage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

// Raised when the proof driver would need a splitting field outside the
// supported cyclotomic tower (or beyond the configured factor-degree bound).
struct NeedsExtension : std::runtime_error {
    int factor_degree;
    // 0 when no cyclotomic level within the cap can help.
    long suggested_level;
    NeedsExtension(const std::string& msg, int deg, long level = 0)
        : std::runtime_error(msg), factor_degree(deg), suggested_level(level) {}
};

// ---------------------------------------------------------------------------
// Small-integer number theory (desk scale, 64-bit).
// ---------------------------------------------------------------------------

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

inline long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> small, big;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) big.push_back(n / d);
        }
    }
    for (auto it = big.rbegin(); it != big.rend(); ++it) small.push_back(*it);
    return small;
}

inline std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto [q, e] : factorize(n)) r -= r / q;
    return r;
}

// Largest divisor of n coprime to p.
inline long prime_to_p_part(long n, long p) {
    while (n % p == 0) n /= p;
    return n;
}

// Least s >= 1 with p^s = 1 mod N; requires gcd(p, N) = 1. N = 1 gives 1.
inline long multiplicative_order_mod(long p, long N) {
    if (N <= 0) throw InputError("multiplicative_order_mod: N must be positive");
    if (N == 1) return 1;
    if (std::gcd(p % N, N) != 1) throw InputError("multiplicative_order_mod: gcd(p, N) != 1");
    long s = 1, x = p % N;
    while (x != 1) {
        x = static_cast<long>((static_cast<long long>(x) * (p % N)) % N);
        ++s;
        if (s > N) throw InternalInconsistency("multiplicative_order_mod: no order found");
    }
    return s;
}

inline long pow_mod_long(long base, long exp, long mod) {
    long long r = 1 % mod, b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        exp >>= 1;
    }
    return static_cast<long>(r);
}

// Inverse of a mod m (m not necessarily prime; a must be a unit).
inline long inv_mod_long(long a, long m) {
    long t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw NotInvertible("inv_mod_long: not a unit");
    return ((t % m) + m) % m;
}

// ---------------------------------------------------------------------------
// Deterministic RNG: SplitMix64 (Steele, Lea, Flood 2014). Chosen for the
// instance generator because the whole state is one 64-bit word and the
// update is trivial to reproduce in any language from the two constants
// below; streams are split per purpose by seeding with seed XOR a tag.
// ---------------------------------------------------------------------------

class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw InputError("SplitMix64::below: n must be positive");
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(double prob) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < prob;
    }

   private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Rational helpers (p-local view of mpq_class).
// ---------------------------------------------------------------------------

inline constexpr long kValInfinity = std::numeric_limits<long>::max();

// p-adic valuation of x; kValInfinity for x = 0.
inline long padic_valuation(const mpq_class& x, long p) {
    if (x == 0) return kValInfinity;
    mpz_class q(p), tmp;
    long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), q.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), q.get_mpz_t()));
    return vn - vd;
}

// Canonical representative of x mod p^e in [0, p^e); requires v_p(x) >= 0.
inline mpz_class mod_prime_power(const mpq_class& x, long p, long e) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    mpz_class den = x.get_den();
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotInvertible("mod_prime_power: denominator not invertible");
    mpz_class r = (x.get_num() % m) * deninv % m;
    if (r < 0) r += m;
    return r;
}

inline std::string rational_to_string(const mpq_class& x) { return x.get_str(); }

inline mpq_class rational_from_string(const std::string& s) {
    mpq_class x;
    if (x.set_str(s, 10) != 0) throw InputError("malformed rational: \"" + s + "\"");
    x.canonicalize();
    return x;
}

}  // namespace perfbr
