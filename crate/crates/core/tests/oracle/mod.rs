//! Independent reference computations for the integration tests.
//!
//! Regular 2-form dimensions are recomputed here without charts: an eigenform
//! of degree bound d is a homogeneous form of degree d, divisible by every
//! l_i^{r_i} and vanishing to order s at every singular point. The linear
//! algebra runs over F_q with q = 2^61 − 1, where x² − x + 1 splits. Reduction
//! mod q can only lower a rank, so a kernel dimension that agrees with the
//! exact pipeline is a genuine cross-check.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub const Q: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    (a + b) % Q
}

pub fn sub(a: u64, b: u64) -> u64 {
    (a + Q - b) % Q
}

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % Q as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    assert!(a % Q != 0, "inverse of zero");
    pow(a, Q - 2)
}

pub fn from_i64(v: i64) -> u64 {
    v.rem_euclid(Q as i64) as u64
}

/// A root of x² − x + 1 in F_q. Since q ≡ 3 mod 4, √−3 = (−3)^((q+1)/4).
pub fn mu() -> u64 {
    let root = pow(from_i64(-3), (Q + 1) / 4);
    assert_eq!(mul(root, root), from_i64(-3));
    let m = mul(add(1, root), inv(2));
    assert_eq!(add(sub(mul(m, m), m), 1), 0);
    m
}

/// The nine lines as printed, each coefficient written `a + b·μ` with μ² = μ − 1.
pub const PRINTED_LINES: [[(i64, i64); 3]; 9] = [
    [(1, 0), (0, 0), (-1, 0)],
    [(1, 0), (0, 0), (1, -1)],
    [(1, 0), (0, 0), (0, 1)],
    [(0, 0), (1, 0), (1, -1)],
    [(0, 0), (1, 0), (-1, 0)],
    [(0, 0), (1, 0), (0, 1)],
    [(1, 0), (0, 1), (0, 0)],
    [(1, 0), (1, -1), (0, 0)],
    [(1, 0), (-1, 0), (0, 0)],
];

pub fn lines_mod_q() -> Vec<[u64; 3]> {
    let m = mu();
    PRINTED_LINES
        .iter()
        .map(|l| l.map(|(a, b)| add(from_i64(a), mul(from_i64(b), m))))
        .collect()
}

fn cross(u: &[u64; 3], v: &[u64; 3]) -> [u64; 3] {
    [
        sub(mul(u[1], v[2]), mul(u[2], v[1])),
        sub(mul(u[2], v[0]), mul(u[0], v[2])),
        sub(mul(u[0], v[1]), mul(u[1], v[0])),
    ]
}

fn normalize(p: [u64; 3]) -> [u64; 3] {
    let lead = *p.iter().find(|&&x| x != 0).expect("distinct lines meet in a point");
    let s = inv(lead);
    p.map(|x| mul(x, s))
}

fn dot(l: &[u64; 3], p: &[u64; 3]) -> u64 {
    (0..3).fold(0, |acc, i| add(acc, mul(l[i], p[i])))
}

/// Intersection points of the given lines with the (0-based) indices of the lines through each.
pub fn intersection_points(lines: &[[u64; 3]]) -> Vec<([u64; 3], Vec<usize>)> {
    let mut pts: BTreeMap<[u64; 3], Vec<usize>> = BTreeMap::new();
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            let p = normalize(cross(&lines[a], &lines[b]));
            pts.entry(p).or_insert_with(|| {
                (0..lines.len()).filter(|&i| dot(&lines[i], &p) == 0).collect()
            });
        }
    }
    pts.into_iter().collect()
}

/// Concurrent triples of the printed lines, labels 1-based and sorted.
pub fn concurrent_triples() -> Vec<[usize; 3]> {
    let lines = lines_mod_q();
    let mut out = Vec::new();
    for a in 0..9 {
        for b in a + 1..9 {
            for c in b + 1..9 {
                let p = cross(&lines[a], &lines[b]);
                if dot(&lines[c], &p) == 0 {
                    out.push([a + 1, b + 1, c + 1]);
                }
            }
        }
    }
    out
}

fn ceil_div(num: i64, den: i64) -> i64 {
    num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
}

pub fn degree_bound(p: i64, n: i64, j: i64) -> i64 {
    (p - j - 1) * n - 3
}

pub fn divisibility_raw(p: i64, k: i64, j: i64) -> i64 {
    ceil_div((p - j - 1) * k - p + 1, p)
}

pub fn point_order_raw(p: i64, r: i64, j: i64) -> i64 {
    ceil_div((p - j - 1) * r - 2 * p + 1, p)
}

type Poly = BTreeMap<[u32; 3], u64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let c = out.entry(e).or_insert(0);
            *c = add(*c, mul(*ca, *cb));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn linear(l: &[u64; 3]) -> Poly {
    let mut out = Poly::new();
    for (i, c) in l.iter().enumerate() {
        if *c != 0 {
            let mut e = [0; 3];
            e[i] = 1;
            out.insert(e, *c);
        }
    }
    out
}

fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn falling(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| mul(acc, u64::from(n - i)))
}

/// ∂^α G at the point, for G given by its coefficients.
fn derivative_at(g: &Poly, alpha: &[u32; 3], pt: &[u64; 3]) -> u64 {
    g.iter().fold(0, |acc, (e, c)| {
        let mut term = *c;
        for i in 0..3 {
            term = mul(term, falling(e[i], alpha[i]));
            if term == 0 {
                return acc;
            }
            term = mul(term, pow(pt[i], u64::from(e[i] - alpha[i])));
        }
        add(acc, term)
    })
}

pub fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let s = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = mul(*x, s);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub(*x, mul(f, *y));
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the j-th eigenspace of regular 2-forms on the cyclic cover
/// z^p = Π l_i^{k_i} of the printed arrangement.
pub fn eigenspace_dimension(p: u32, weights: &[u32], j: u32) -> usize {
    let all = lines_mod_q();
    let branch: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] != 0).collect();
    let (p, j) = (i64::from(p), i64::from(j));
    let total: i64 = branch.iter().map(|&i| i64::from(weights[i])).sum();
    assert_eq!(total % p, 0, "weights do not sum to a multiple of p");
    let d = degree_bound(p, total / p, j);
    let orders: Vec<i64> = branch
        .iter()
        .map(|&i| divisibility_raw(p, i64::from(weights[i]), j).max(0))
        .collect();
    let free = d - orders.iter().sum::<i64>();
    if d < 0 || free < 0 {
        return 0;
    }

    let mut prefactor = Poly::from([([0, 0, 0], 1)]);
    for (&i, &r) in branch.iter().zip(&orders) {
        for _ in 0..r {
            prefactor = poly_mul(&prefactor, &linear(&all[i]));
        }
    }
    let basis: Vec<Poly> = monomials(free as u32)
        .into_iter()
        .map(|e| poly_mul(&prefactor, &Poly::from([(e, 1)])))
        .collect();

    let branch_lines: Vec<[u64; 3]> = branch.iter().map(|&i| all[i]).collect();
    let mut rows = Vec::new();
    for (pt, through) in intersection_points(&branch_lines) {
        let r: i64 = through.iter().map(|&t| i64::from(weights[branch[t]])).sum();
        let s = point_order_raw(p, r, j).max(0) as u32;
        for order in 0..s {
            for alpha in monomials(order) {
                rows.push(basis.iter().map(|g| derivative_at(g, &alpha, &pt)).collect());
            }
        }
    }
    if rows.is_empty() {
        return basis.len();
    }
    basis.len() - rank(rows)
}

/// Per-j dimensions for one cyclic quotient.
pub fn dimensions(p: u32, weights: &[u32]) -> Vec<usize> {
    (0..p).map(|j| eigenspace_dimension(p, weights, j)).collect()
}

/// Orbit of `row` under multiplication by units mod p.
pub fn scalar_family(p: u32, row: &[u32]) -> Vec<Vec<u32>> {
    (1..p).map(|t| row.iter().map(|k| k * t % p).collect()).collect()
}

/// Every permutation of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            return out;
        };
        let k = (i + 1..n).rev().find(|&k| current[k] > current[i]).expect("successor exists");
        current.swap(i, k);
        current[i + 1..].reverse();
        out.push(current.clone());
    }
}
