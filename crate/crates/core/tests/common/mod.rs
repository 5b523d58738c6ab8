//! Oracles shared by the property and acceptance targets. They avoid the
//! library's own algorithms wherever a cheaper independent route exists.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use seshadri_core::excset::{enumerate_pairs, exc_set, in_exc_set, Detail};
use seshadri_core::pell::{fundamental_solution, nth_solution};
use seshadri_core::{run_pipeline, FilterId, Int, PipelineConfig, Rat};

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d)).unwrap()
}

pub fn non_squares(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&d| {
        let r = (d as f64).sqrt() as u64;
        !(r.saturating_sub(1)..=r + 1).any(|s| s * s == d)
    })
}

/// Smallest `y >= 2` with `y^2 - d x^2 = 1`, searched directly up to `cap`.
pub fn brute_pell(d: u64, cap: u64) -> Option<(u64, u64)> {
    let d = d as u128;
    (2..cap as u128).find_map(|y| {
        let t = y * y - 1;
        if t % d != 0 {
            return None;
        }
        let x2 = t / d;
        let x = (x2 as f64).sqrt() as u128;
        (x.saturating_sub(1)..=x + 1)
            .find(|&x| x * x == x2 && x > 0)
            .map(|x| (x as u64, y as u64))
    })
}

/// Fundamental solution by the chakravala method, which shares no code with
/// the continued-fraction route.
pub fn chakravala(d: &BigInt) -> (BigInt, BigInt) {
    let mut a = d.sqrt();
    if &a * &a < *d {
        a += 1u32;
    }
    // (a, b, k) with a^2 - d b^2 = k
    let mut b = BigInt::one();
    let mut k = &a * &a - d;
    while k != BigInt::one() {
        let ka = k.abs();
        // m ≡ -a * b^{-1} (mod |k|), picked to minimise |m^2 - d|
        let inv = mod_inverse(&b, &ka);
        let base = (-&a * inv).mod_floor(&ka);
        let root = d.sqrt();
        let mut m = &base + (&root - &base).div_floor(&ka) * &ka;
        let next = &m + &ka;
        if (&m * &m - d).abs() > (&next * &next - d).abs() {
            m = next;
        }
        if m <= BigInt::zero() {
            m += &ka;
        }
        let na = (&a * &m + d * &b) / &ka;
        let nb = (&a + &b * &m) / &ka;
        let nk = (&m * &m - d) / &k;
        a = na.abs();
        b = nb.abs();
        k = nk;
    }
    (b, a)
}

fn mod_inverse(x: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = x.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Every pair `(a, b)` with `b` in `[q^2, q^2 + window]` and `a q < b p d`
/// violates `a^2 >= d b (b - 1)`. Uses machine integers; rows are scanned in
/// full when short, otherwise only at the largest admissible `a`, which
/// dominates the rest of the row.
pub fn b_bound_holds(d: u64, p: u64, q: u64, window: u64) -> bool {
    let (d, p, q) = (d as u128, p as u128, q as u128);
    (q * q..=q * q + window as u128).all(|b| {
        let a_max = (b * p * d - 1) / q;
        let lo = if a_max > 20_000 { a_max } else { 1 };
        (lo..=a_max).all(|a| a * a < d * b * (b - 1))
    })
}

/// Samples values of the index-`j` exceptional set (smooth values, the first
/// `prefix` pairs and a spread of rows across the whole range) and checks
/// that each lies in the index-`k` set.
pub fn nesting_holds(d: u64, j: u64, k: u64, prefix: usize) -> bool {
    let di = Int::from(d);
    let sj = nth_solution(&di, &Int::from(j)).unwrap();
    let sk = nth_solution(&di, &Int::from(k)).unwrap();
    let member = |v: &Rat| in_exc_set(&di, sk.p(), sk.q(), v).unwrap();

    let mut sample: Vec<Rat> = seshadri_core::excset::smooth_values(&di)
        .unwrap()
        .into_iter()
        .map(Rat::from_int)
        .collect();
    sample.extend(
        enumerate_pairs(&di, sj.p(), sj.q(), false).unwrap().take(prefix).map(|c| c.value()),
    );
    // Rows spread over [2, q_j^2), at both ends of each row.
    let q2 = sj.q() * sj.q();
    let pd = sj.p() * &di;
    for step in 0..200u32 {
        let b: Int = Int::from(2u32) + (&q2 - 3u32) * step / 199u32;
        let a_max = (&b * &pd - 1u32).div_floor(sj.q());
        if a_max < b {
            continue;
        }
        sample.push(Rat::new(b.clone(), b.clone()).unwrap());
        sample.push(Rat::new(a_max, b).unwrap());
    }
    sample.iter().all(member)
}

/// Exhaustive version when the smaller set is small enough to list.
pub fn nesting_exhaustive(d: u64, j: u64, k: u64) -> bool {
    let di = Int::from(d);
    let sj = nth_solution(&di, &Int::from(j)).unwrap();
    let sk = nth_solution(&di, &Int::from(k)).unwrap();
    let small = exc_set(&di, sj.p(), sj.q()).unwrap();
    small.iter().all(|v| in_exc_set(&di, sk.p(), sk.q(), v).unwrap())
}

pub fn final_values(d: u64, config: &PipelineConfig) -> BTreeSet<Rat> {
    let di = Int::from(d);
    let sol = fundamental_solution(&di).unwrap();
    let config = PipelineConfig { detail: Detail::Summary, ..config.clone() };
    run_pipeline(&di, &sol, &config).unwrap().final_values
}

/// Runs every ordering of `filters` and reports whether the final values agree.
pub fn order_independent(d: u64, filters: &[FilterId], base: &PipelineConfig) -> bool {
    let mut seen: Option<BTreeSet<Rat>> = None;
    for perm in filters.iter().copied().permutations(filters.len()) {
        let config = PipelineConfig { filters: perm, detail: Detail::Summary, ..base.clone() };
        let got = final_values(d, &config);
        match &seen {
            None => seen = Some(got),
            Some(first) if *first != got => return false,
            Some(_) => {}
        }
    }
    true
}

/// Values kept by hodge-xu are kept by gino, pipeline against pipeline.
pub fn hodge_within_gino(d: u64) -> bool {
    let gino = final_values(d, &PipelineConfig::with_filters(&[FilterId::Gino]));
    let hodge = final_values(d, &PipelineConfig::with_filters(&[FilterId::HodgeXu]));
    hodge.is_subset(&gino)
}

pub fn to_u64(n: &Int) -> u64 {
    n.to_u64().expect("fits in u64")
}
