//! Small integer helpers shared across modules.

/// Trial-division primality test; inputs here are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest power of `p` dividing `n` (with `p_part(n, p) = 1` when `p ∤ n`).
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n % p == 0 {
        part *= p;
        n /= p;
    }
    part
}

/// `m` such that `n = p^m`, or `None` if `n` is not a power of `p`.
pub fn log_p_exact(mut n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut m = 0;
    while n % p == 0 {
        n /= p;
        m += 1;
    }
    (n == 1).then_some(m)
}

/// Prime factorization by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(p_part(48, 3), 3);
        assert_eq!(p_part(48, 5), 1);
        assert_eq!(log_p_exact(8, 2), Some(3));
        assert_eq!(log_p_exact(12, 2), None);
        assert_eq!(log_p_exact(1, 7), Some(0));
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(120), vec![(2, 3), (3, 1), (5, 1)]);
    }
}
