//! Integer helpers: factorization, prime supports and π-parts.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// π(n): the primes dividing `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// The largest divisor of `n` whose prime divisors all satisfy `keep`.
pub fn part_where(n: u64, keep: impl Fn(u64) -> bool) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|&(p, _)| keep(p))
        .map(|(p, e)| p.pow(e))
        .product()
}

/// n_p, the largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    part_where(n, |q| q == p)
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() <= 1
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest `d ≥ 1` with `a^d ≡ 1 (mod m)`; `None` if `a` is not a unit mod `m`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m < 2 || gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut d = 1;
    while x != 1 {
        x = x * (a % m) % m;
        d += 1;
    }
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(1260), vec![(2, 2), (3, 2), (5, 1), (7, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_divisors(45), vec![3, 5]);
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(part_where(1260, |p| p != 7), 180);
    }

    #[test]
    fn orders_mod_m() {
        assert_eq!(multiplicative_order(11, 7), Some(3));
        assert_eq!(multiplicative_order(7, 5), Some(4));
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(2, 4), None);
    }

    #[test]
    fn predicates() {
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert!(is_squarefree(1));
        assert!(is_prime_power(8));
        assert!(is_prime_power(1));
        assert!(!is_prime_power(6));
        assert!(is_prime(1_000_003));
    }
}
