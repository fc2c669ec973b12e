#include "elmod/intfactor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace elmod {
namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 pollard_brent(u64 n) {
    // Deterministic parameter sweep; n is odd, composite, not a prime power
    // of a small prime (trial division already ran).
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 ys = y, q = 1;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && d == 1; k += m) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r <<= 1;
            if (r > (u64(1) << 40)) break;  // give up on this c
        }
        if (d == n) {
            // Backtrack one step at a time.
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != 1 && d != n) return d;
    }
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::map<u64, int> fac;
    for (u64 p = 2; p <= 1000000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++fac[p];
            n /= p;
        }
    }
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            ++fac[m];
            continue;
        }
        u64 d = pollard_brent(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return {fac.begin(), fac.end()};
}

}  // namespace elmod
