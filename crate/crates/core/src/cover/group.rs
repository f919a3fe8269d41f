//! Small helpers for vectors over Z/p.

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and a ≠ 0 mod p
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (u64::from(a % p), 1u64);
    let p = u64::from(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

pub fn add(u: &[u32], v: &[u32], p: u32) -> Vec<u32> {
    u.iter().zip(v).map(|(a, b)| (a + b) % p).collect()
}

pub fn scale(u: &[u32], t: u32, p: u32) -> Vec<u32> {
    u.iter().map(|a| ((u64::from(*a) * u64::from(t)) % u64::from(p)) as u32).collect()
}

pub fn is_zero(u: &[u32]) -> bool {
    u.iter().all(|&a| a == 0)
}

/// Rank over Z/p of the span of `vectors`; the subgroup they generate has order p^rank.
pub fn rank_mod(vectors: &[Vec<u32>], p: u32) -> usize {
    let mut rows: Vec<Vec<u32>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        rows[rank] = scale(&rows[rank], inv, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = p - rows[r][col];
                let shifted = scale(&rows[rank], f, p);
                rows[r] = add(&rows[r], &shifted, p);
            }
        }
        rank += 1;
    }
    rank
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
pub fn normalize_first(u: &[u32], p: u32) -> Vec<u32> {
    match u.iter().find(|&&a| a != 0) {
        Some(&lead) => scale(u, inv_mod(lead, p), p),
        None => u.to_vec(),
    }
}

/// Scales a nonzero vector so that its last nonzero entry is 1.
pub fn normalize_last(u: &[u32], p: u32) -> Vec<u32> {
    match u.iter().rev().find(|&&a| a != 0) {
        Some(&lead) => scale(u, inv_mod(lead, p), p),
        None => u.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn inverses_mod_5() {
        for a in 1..5 {
            assert_eq!(a * inv_mod(a, 5) % 5, 1);
        }
    }

    #[test]
    fn rank_of_dependent_vectors() {
        assert_eq!(rank_mod(&[vec![1, 1], vec![2, 2]], 5), 1);
        assert_eq!(rank_mod(&[vec![1, 1], vec![4, 0]], 5), 2);
        assert_eq!(rank_mod(&[vec![0, 0]], 5), 0);
    }
}
