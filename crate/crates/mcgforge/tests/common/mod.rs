//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use mcgforge::links::{Alexander, BraidWord};
use num_bigint::BigInt;

// ---------- reduced Burau representation ----------

/// Laurent polynomial: `coef[k]` multiplies `t^(k + low)`.
#[derive(Clone, Debug, PartialEq)]
struct Laurent {
    low: i32,
    coef: Vec<i128>,
}

impl Laurent {
    fn c(x: i128) -> Self {
        Laurent { low: 0, coef: vec![x] }
    }
    fn mono(x: i128, e: i32) -> Self {
        Laurent { low: e, coef: vec![x] }
    }
    fn zero() -> Self {
        Laurent { low: 0, coef: vec![] }
    }
    fn add(&self, o: &Self) -> Self {
        if self.coef.is_empty() {
            return o.clone();
        }
        if o.coef.is_empty() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = (self.low + self.coef.len() as i32).max(o.low + o.coef.len() as i32);
        let mut coef = vec![0; (high - low) as usize];
        for (i, &x) in self.coef.iter().enumerate() {
            coef[(self.low - low) as usize + i] += x;
        }
        for (i, &x) in o.coef.iter().enumerate() {
            coef[(o.low - low) as usize + i] += x;
        }
        Laurent { low, coef }.trim()
    }
    fn neg(&self) -> Self {
        Laurent { low: self.low, coef: self.coef.iter().map(|x| -x).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.coef.is_empty() || o.coef.is_empty() {
            return Laurent::zero();
        }
        let mut coef = vec![0; self.coef.len() + o.coef.len() - 1];
        for (i, &x) in self.coef.iter().enumerate() {
            for (j, &y) in o.coef.iter().enumerate() {
                coef[i + j] += x * y;
            }
        }
        Laurent { low: self.low + o.low, coef }.trim()
    }
    fn trim(mut self) -> Self {
        while self.coef.last() == Some(&0) {
            self.coef.pop();
        }
        let z = self.coef.iter().position(|&x| x != 0).unwrap_or(self.coef.len());
        self.coef.drain(..z);
        self.low += z as i32;
        if self.coef.is_empty() {
            self.low = 0;
        }
        self
    }
}

type LMat = Vec<Vec<Laurent>>;

fn ident(n: usize) -> LMat {
    (0..n).map(|i| (0..n).map(|j| Laurent::c((i == j) as i128)).collect()).collect()
}

fn mat_mul(a: &LMat, b: &LMat) -> LMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Laurent::zero(), |s, k| s.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

fn burau_letter(n: usize, l: i32) -> LMat {
    let m = n - 1;
    let mut a = ident(m);
    let i = l.unsigned_abs() as usize;
    let pos = l > 0;
    let t = Laurent::mono(1, 1);
    let ti = Laurent::mono(1, -1);
    if m == 1 {
        a[0][0] = if pos { t.neg() } else { ti.neg() };
    } else if i == 1 {
        if pos {
            a[0][0] = t.neg();
            a[1][0] = Laurent::c(1);
        } else {
            a[0][0] = ti.neg();
            a[1][0] = ti.clone();
        }
    } else if i == n - 1 {
        let r = m - 2;
        if pos {
            a[r][r + 1] = t.clone();
            a[r + 1][r + 1] = t.neg();
        } else {
            a[r][r + 1] = Laurent::c(1);
            a[r + 1][r + 1] = ti.neg();
        }
    } else {
        let r = i - 2;
        if pos {
            a[r][r + 1] = t.clone();
            a[r + 1][r + 1] = t.neg();
            a[r + 2][r + 1] = Laurent::c(1);
        } else {
            a[r][r + 1] = Laurent::c(1);
            a[r + 1][r + 1] = ti.neg();
            a[r + 2][r + 1] = ti.clone();
        }
    }
    a
}

fn laurent_det(m: &LMat) -> Laurent {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut s = Laurent::zero();
    for j in 0..n {
        if m[0][j].coef.is_empty() {
            continue;
        }
        let minor: LMat = (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect()).collect();
        let term = m[0][j].mul(&laurent_det(&minor));
        s = s.add(&if j % 2 == 0 { term } else { term.neg() });
    }
    s
}

/// `det(I − ψ(β)) / (1 + t + … + t^{n−1})`, normalized.
pub fn burau_alexander(b: &BraidWord) -> Vec<i64> {
    let n = b.strands();
    let mut m = ident(n - 1);
    for &l in b.letters() {
        m = mat_mul(&m, &burau_letter(n, l));
    }
    let id = ident(n - 1);
    let dm: LMat = (0..n - 1).map(|i| (0..n - 1).map(|j| id[i][j].add(&m[i][j].neg())).collect()).collect();
    let d = laurent_det(&dm);
    // exact division by [n]_t on the shifted numerator
    let mut num = d.coef.clone();
    if num.is_empty() {
        return vec![];
    }
    let den = vec![1i128; n];
    let mut q = vec![0i128; num.len() + 1 - n];
    for k in (0..q.len()).rev() {
        let f = num[k + n - 1];
        q[k] = f;
        for j in 0..n {
            num[k + j] -= f * den[j];
        }
    }
    assert!(num.iter().all(|&x| x == 0), "Burau numerator not divisible by [n]_t");
    Alexander::normalized(q.into_iter().map(|x| x as i64).collect()).coeffs
}

// ---------- Farey graph ----------

/// Farey graph on slopes: adjacency `|ps - qr| = 1`, independent of the
/// intersection code.
pub type SlopePairs = HashMap<((i64, i64), (i64, i64)), u32>;

pub fn farey_all_pairs(bound: u64) -> SlopePairs {
    let mut slopes = Vec::new();
    for q in 0..=bound as i64 {
        for p in -(bound as i64)..=bound as i64 {
            let norm = q > 0 || p == 1;
            let g = num_gcd(p.unsigned_abs(), q.unsigned_abs());
            let w = (p.abs() + q.abs() + (p - q).abs()) as u64;
            if norm && g == 1 && w <= bound {
                slopes.push((p, q));
            }
        }
    }
    let mut out = HashMap::new();
    for &src in &slopes {
        let mut dist: HashMap<(i64, i64), u32> = HashMap::from([(src, 0)]);
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            for &v in &slopes {
                if (u.0 * v.1 - u.1 * v.0).abs() == 1 && !dist.contains_key(&v) {
                    dist.insert(v, dist[&u] + 1);
                    q.push_back(v);
                }
            }
        }
        for (v, d) in dist {
            out.insert((src, v), d);
        }
    }
    out
}

pub fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

// ---------- exact rationals ----------

/// Exact value of a finite f64 as `num / 2^shift`.
pub fn f64_rational(x: f64) -> (BigInt, u32) {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    let m = BigInt::from(m) * sign;
    if e >= 0 {
        (m << e as usize, 0)
    } else {
        (m, (-e) as u32)
    }
}

/// Decimal string as `num / 10^scale`.
pub fn decimal_rational(s: &str) -> (BigInt, u32) {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i32>().unwrap()),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let scale = frac.len() as i32 - exp;
    if scale >= 0 {
        (digits, scale as u32)
    } else {
        (digits * BigInt::from(10).pow((-scale) as u32), 0)
    }
}

/// Sign of `decimal − f64`.
pub fn cmp_decimal(s: &str, x: f64) -> std::cmp::Ordering {
    let (d, ds) = decimal_rational(s);
    let (f, fs) = f64_rational(x);
    (d << fs as usize).cmp(&(f * BigInt::from(10).pow(ds)))
}

/// `floor(3√3/4 · 10^digits)` by integer square root.
pub fn three_root_three_over_four(digits: u32) -> BigInt {
    let n = BigInt::from(27) * BigInt::from(10).pow(2 * digits + 4);
    n.sqrt() / BigInt::from(400)
}


// ---------- CLI goldens ----------

/// `(golden file stem, arguments)`; paths are relative to the crate root.
pub const CLI_GOLDEN: &[(&str, &str)] = &[
    ("surface_info", "surface info --genus 2 --boundary 1"),
    ("distance", "distance --a 1/0 --b 2/1"),
    ("coset_abelian", "coset abelian --g 3 --k 3 --exps 5,5,5"),
    ("coset_free", "coset free --g 4"),
    ("link_family", "link family --l 1 --m 4 --k 2"),
    ("certify_penner", "certify penner"),
    ("certify_growth", "certify growth"),
    ("certify_independence", "certify independence --a 1.0 --b 1.5"),
    ("certify_filling", "certify filling --vol 2 --lambda 12.566370614359172"),
    ("certify_qhyp", "certify qhyp --goal link_complement(4_1(-5),L')"),
    ("ingest_volumes", "ingest volumes --file tests/data/volumes.jsonl"),
];
