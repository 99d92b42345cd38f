//! Small-integer number theory helpers shared across the crate: gcd chains,
//! Kronecker symbols, primality, modular square roots and factoring.

/// Greatest common divisor of two signed 64-bit integers, always nonnegative.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as i64
}

/// Extended gcd: returns `(g, u, v)` with `u*a + v*b = g >= 0`.
pub fn ext_gcd_i64(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

/// Modular inverse of `a` mod `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: i64, m: u64) -> Option<u64> {
    let (g, u, _) = ext_gcd_i64(a.rem_euclid(m as i64), m as i64);
    if g != 1 {
        return None;
    }
    Some(u.rem_euclid(m as i64) as u64)
}

/// `a * b mod m` without overflow for 64-bit moduli.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m`.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Integer square root of a nonnegative i64 (floor).
pub fn isqrt_i64(n: i64) -> i64 {
    assert!(n >= 0, "isqrt of negative number");
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i64;
    // correct rounding at the boundary
    while x > 0 && x.checked_mul(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |s| s <= n) {
        x += 1;
    }
    x
}

/// Is `n` a perfect square? Returns the root if so.
pub fn perfect_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = isqrt_i64(n);
    (r * r == n).then_some(r)
}

/// Kronecker symbol (a/n), extended to all integers n.
pub fn kronecker(mut a: i64, mut n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    // (a/2)^v
    let mut k = if v % 2 == 0 {
        1
    } else {
        match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => return 0, // a even
        }
    };
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // now n odd positive; standard Jacobi loop
    a = a.rem_euclid(n);
    while a != 0 {
        v = 0;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            match n.rem_euclid(8) {
                3 | 5 => k = -k,
                _ => {}
            }
        }
        // quadratic reciprocity for odd positive a, n
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            k = -k;
        }
        let t = n % a;
        n = a;
        a = t;
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `bound`, ascending.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return vec![];
    }
    let n = bound as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p < n {
        if sieve[p] {
            let mut q = p * p;
            while q < n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Factor `n` by trial division; fine for the small moduli and group orders
/// handled here.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `v_p(n)` for n != 0.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
/// Requires `(a/p) = 1` or `a ≡ 0`.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // Tonelli-Shanks
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Lift a square root of `a` from mod p to mod p^k (Hensel; p odd, a a unit).
pub fn sqrt_mod_pk(a: u64, p: u64, k: u32) -> Option<u64> {
    let pk = p.pow(k);
    let mut r = sqrt_mod_p(a % p, p)?;
    if r == 0 {
        return (a % pk == 0).then_some(0);
    }
    let mut modulus = p;
    while modulus < pk {
        let next = (modulus * modulus).min(pk);
        // r' = r - (r^2 - a)/(2r) mod next
        let inv2r = inv_mod((2 * r % next) as i64, next)?;
        let r2 = mul_mod(r, r, next);
        let diff = (r2 + next - a % next) % next;
        r = (r + next - mul_mod(diff, inv2r, next)) % next;
        modulus = next;
    }
    Some(r)
}
