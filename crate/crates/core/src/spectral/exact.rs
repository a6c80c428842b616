//! Exact comparison of spectral radii through integer characteristic
//! polynomials, Sturm sequences and rational bisection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graph::{Bits, Graph};

/// Polynomial with rational coefficients, lowest degree first, no trailing
/// zeros.
type Poly = Vec<BigRational>;

/// det(xI − A) by Faddeev–LeVerrier; coefficients lowest degree first.
pub fn characteristic_polynomial(g: &Graph) -> Vec<BigInt> {
    let n = g.order();
    let adj = g.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M_k = A·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(A·M_k)/k.
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let c_prev = coeffs[n - k + 1].clone();
        // A·M_{k−1}: row i is the sum of rows j ∈ N(i).
        let mut next: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n];
                for j in Bits(adj[i]) {
                    for (r, x) in row.iter_mut().zip(&m[j]) {
                        *r += x;
                    }
                }
                row
            })
            .collect();
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c_prev;
        }
        // tr(A·M_k) = Σ_i Σ_{j∈N(i)} M_k[j][i].
        let mut trace = BigInt::zero();
        for i in 0..n {
            for j in Bits(adj[i]) {
                trace += &next[j][i];
            }
        }
        coeffs[n - k] = -trace / BigInt::from(k);
        m = next;
    }
    coeffs
}

/// Compares the largest real roots of two real-rooted integer polynomials
/// with positive leading coefficient.
pub fn compare_largest_roots(p1: &[BigInt], p2: &[BigInt]) -> Ordering {
    let s1 = squarefree(&to_rational(p1));
    let s2 = squarefree(&to_rational(p2));
    let common = gcd(&s1, &s2);
    let bound = root_bound(&s1).max(root_bound(&s2));
    let mut r1 = TopRoot::isolate(&s1, &bound);
    let mut r2 = TopRoot::isolate(&s2, &bound);
    loop {
        if r1.lo >= r2.hi {
            return Ordering::Greater;
        }
        if r2.lo >= r1.hi {
            return Ordering::Less;
        }
        if common.len() > 1 {
            let lo = (&r1.lo).max(&r2.lo).clone();
            let hi = (&r1.hi).min(&r2.hi).clone();
            let seq = sturm_sequence(&common);
            if count_roots(&seq, &lo, &hi) > 0 {
                return Ordering::Equal;
            }
        }
        r1.refine();
        r2.refine();
    }
}

fn to_rational(p: &[BigInt]) -> Poly {
    trim(p.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Remainder of `a` divided by `b` (b nonzero).
fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &factor * c;
        }
        r = trim(r);
    }
    r
}

fn quotient(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![];
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b.last().unwrap().clone();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &factor * c;
        }
        q[shift] = factor;
        // The leading term cancels exactly; drop it even if others vanish.
        r.pop();
        r = trim(r);
    }
    trim(q)
}

fn monic(p: Poly) -> Poly {
    match p.last().cloned() {
        Some(lead) if !lead.is_zero() => p.into_iter().map(|c| c / &lead).collect(),
        _ => p,
    }
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = monic(r);
    }
    monic(x)
}

fn squarefree(p: &Poly) -> Poly {
    let d = derivative(p);
    if d.is_empty() {
        return monic(p.clone());
    }
    let g = gcd(p, &d);
    monic(quotient(p, &g))
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let k = seq.len();
        if seq[k - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = rem(&seq[k - 2], &seq[k - 1]);
        if r.is_empty() {
            break;
        }
        // Negate, then scale by a positive constant to keep numbers small.
        let lead = r.last().unwrap().abs();
        seq.push(r.into_iter().map(|c| -c / &lead).collect());
    }
    seq
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn variations(seq: &[Poly], x: &BigRational) -> usize {
    let mut last = 0;
    let mut count = 0;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Distinct roots in (lo, hi]; `lo` and `hi` must not be roots.
fn count_roots(seq: &[Poly], lo: &BigRational, hi: &BigRational) -> usize {
    variations(seq, lo) - variations(seq, hi)
}

/// An integer strictly above every root modulus (Cauchy bound).
fn root_bound(p: &Poly) -> BigRational {
    let lead = p.last().unwrap().abs();
    let max = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    (BigRational::one() + max).ceil() + BigRational::one()
}

/// Isolating interval (lo, hi] for the largest root of a squarefree poly.
struct TopRoot {
    poly: Poly,
    seq: Vec<Poly>,
    lo: BigRational,
    hi: BigRational,
}

impl TopRoot {
    fn isolate(p: &Poly, bound: &BigRational) -> Self {
        let seq = sturm_sequence(p);
        let mut r = TopRoot {
            poly: p.clone(),
            seq,
            lo: -bound.clone(),
            hi: bound.clone(),
        };
        if p.len() <= 1 {
            // Constant: no roots; never happens for characteristic polynomials.
            return r;
        }
        while count_roots(&r.seq, &r.lo, &r.hi) > 1 {
            r.refine();
        }
        r
    }

    /// Halves the interval, keeping the top root inside.
    fn refine(&mut self) {
        let mid = self.split_point();
        if count_roots(&self.seq, &mid, &self.hi) >= 1 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Near-midpoint that is not a root.
    fn split_point(&self) -> BigRational {
        let width = &self.hi - &self.lo;
        let two = BigRational::from_integer(BigInt::from(2));
        let mut mid = &self.lo + &width / &two;
        let mut k = 3i64;
        while eval(&self.poly, &mid).is_zero() {
            mid = &self.lo + &width * BigRational::new(BigInt::from(k - 1), BigInt::from(2 * k - 1));
            k += 1;
        }
        mid
    }
}
