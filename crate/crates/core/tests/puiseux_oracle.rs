//! The Puiseux recursion against valuations of an explicit parametrization.
//!
//! For `x = t^{β_0}` and `y = Σ_i t^{β_i}` the semigroup is the set of
//! valuations of `k[[x, y]]`. Below a bound `N` it is the set of pivots of the
//! monomials `x^a y^b` with `a·β_0 + b·β_1 < N`, truncated mod `t^N` and
//! row-reduced; larger monomials vanish mod `t^N`.

use branchforge_core::{semigroup_from_puiseux, PuiseuxData};

const P: i64 = 1_000_003;

fn mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = (out[i + j] + x * y) % P;
        }
    }
    out
}

fn inv(a: i64) -> i64 {
    let (mut r, mut base, mut e) = (1i64, a.rem_euclid(P), P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    r
}

fn valuations(mult: u32, exponents: &[u32], n: usize) -> Vec<u32> {
    let mut x = vec![0i64; n];
    x[mult as usize] = 1;
    let mut y = vec![0i64; n];
    for &e in exponents {
        if (e as usize) < n {
            y[e as usize] = 1;
        }
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut xa = {
        let mut one = vec![0i64; n];
        one[0] = 1;
        one
    };
    for a in 0.. {
        if a * mult as usize >= n {
            break;
        }
        let mut m = xa.clone();
        for b in 0.. {
            if a * mult as usize + b * exponents[0] as usize >= n {
                break;
            }
            rows.push(m.clone());
            m = mul(&m, &y, n);
        }
        xa = mul(&xa, &x, n);
    }

    // echelon form with lowest-index pivots
    let mut pivots: Vec<(usize, Vec<i64>)> = Vec::new();
    for mut row in rows {
        for (p, prow) in &pivots {
            let c = row[*p];
            if c != 0 {
                for (r, &v) in row.iter_mut().zip(prow) {
                    *r = (*r - c * v).rem_euclid(P);
                }
            }
        }
        if let Some(lead) = row.iter().position(|&v| v != 0) {
            let s = inv(row[lead]);
            row.iter_mut().for_each(|v| *v = *v * s % P);
            pivots.push((lead, row));
        }
    }
    let mut vals: Vec<u32> = pivots.into_iter().map(|(p, _)| p as u32).collect();
    vals.sort_unstable();
    vals
}

fn check(mult: u32, exponents: &[u32], expected: &[u32]) {
    let s = semigroup_from_puiseux(&PuiseuxData::new(mult, exponents.to_vec())).unwrap();
    assert_eq!(s.generators(), expected);
    let n = 2 * s.conductor() as usize + 1;
    assert_eq!(valuations(mult, exponents, n), s.elements_below(n as u32));
}

#[test]
fn four_six_seven() {
    check(4, &[6, 7], &[4, 6, 13]);
}

#[test]
fn single_pair() {
    check(2, &[3], &[2, 3]);
    check(3, &[5], &[3, 5]);
}

#[test]
fn two_pairs() {
    check(6, &[9, 10], &[6, 9, 19]);
    check(4, &[10, 11], &[4, 10, 21]);
}

#[test]
fn three_pairs() {
    check(8, &[12, 14, 15], &[8, 12, 26, 53]);
}
