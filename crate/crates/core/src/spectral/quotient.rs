//! Equitable-partition quotients for joins of regular blocks, and the
//! diagnostics built on them.
//!
//! A graph made of blocks B_1..B_k, each inducing a d_i-regular graph and
//! fully joined to every other block, has the quotient matrix
//! Q_ii = d_i, Q_ij = s_j. Its dominant eigenvalue is ρ, and the Perron
//! vector is constant on each block. We solve the symmetrised form
//! S = D^{1/2} Q D^{−1/2} (S_ij = √(s_i s_j)) and map back.

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::constructions::{turan_parts, turan_size};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub size: u64,
    /// Degree of the regular graph inside the block (0 empty, size−1 complete).
    pub intra_degree: u64,
}

impl Block {
    pub fn empty(size: u64) -> Self {
        Block { size, intra_degree: 0 }
    }

    pub fn complete(size: u64) -> Self {
        Block {
            size,
            intra_degree: size.saturating_sub(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientSolution {
    pub rho: f64,
    /// Perron-vector value on each block, scaled so the full vector has
    /// unit Euclidean norm.
    pub block_values: Vec<f64>,
}

pub fn quotient_radius(blocks: &[Block]) -> Result<f64> {
    quotient_solution(blocks).map(|s| s.rho)
}

pub fn quotient_solution(blocks: &[Block]) -> Result<QuotientSolution> {
    if blocks.is_empty() {
        return Err(Error::input("quotient needs at least one block"));
    }
    for b in blocks {
        if b.size == 0 {
            return Err(Error::input("blocks must be nonempty"));
        }
        if b.intra_degree >= b.size || (b.size * b.intra_degree) % 2 == 1 {
            return Err(Error::input(format!(
                "no {}-regular graph on {} vertices",
                b.intra_degree, b.size
            )));
        }
    }
    let k = blocks.len();
    let s = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            blocks[i].intra_degree as f64
        } else {
            ((blocks[i].size as f64) * (blocks[j].size as f64)).sqrt()
        }
    });
    let eig = SymmetricEigen::new(s);
    let (top, rho) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::MIN), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    let z = eig.eigenvectors.column(top);
    let sign = if z.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    // z_i = √s_i · y_i, and Σ s_i y_i² = Σ z_i² = 1 already.
    let block_values = blocks
        .iter()
        .zip(z.iter())
        .map(|(b, zi)| sign * zi / (b.size as f64).sqrt())
        .collect();
    Ok(QuotientSolution { rho, block_values })
}

fn turan_blocks(n: u64, p: u64) -> Vec<Block> {
    turan_parts(n as usize, p as usize)
        .expect("p ≥ 1")
        .into_iter()
        .map(|s| Block::empty(s as u64))
        .collect()
}

/// The three inequalities ρ(T_p(n)) ≥ 2e/n ≥ (p−1)n/p − p/(4n) and the
/// edge bound e ≥ (p−1)n²/(2p) − p/8.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayleighChain {
    pub n: u64,
    pub p: u64,
    pub edges: u64,
    #[serde(with = "crate::float17")]
    pub rho: f64,
    #[serde(with = "crate::float17")]
    pub average_degree: f64,
    #[serde(with = "crate::float17")]
    pub degree_bound: f64,
    #[serde(with = "crate::float17")]
    pub edge_bound: f64,
    /// ρ − 2e/n.
    #[serde(with = "crate::float17")]
    pub slack_rho: f64,
    /// 2e/n − ((p−1)n/p − p/(4n)), exact value rounded.
    #[serde(with = "crate::float17")]
    pub slack_degree: f64,
    /// e − ((p−1)n²/(2p) − p/8), exact value rounded.
    #[serde(with = "crate::float17")]
    pub slack_edges: f64,
    pub rho_holds: bool,
    pub degree_holds: bool,
    pub edges_hold: bool,
    /// Whether T_p(n) is regular, in which case ρ = 2e/n.
    pub regular: bool,
}

impl RayleighChain {
    pub fn holds(&self) -> bool {
        self.rho_holds && self.degree_holds && self.edges_hold
    }
}

/// Slack allowed on the floating comparison ρ ≥ 2e/n.
const RHO_SLACK: f64 = 1e-9;

pub fn rayleigh_chain_check(n: u64, p: u64) -> Result<RayleighChain> {
    if p < 2 || n < p {
        return Err(Error::input(format!("need p ≥ 2 and n ≥ p, got n={n}, p={p}")));
    }
    let rho = quotient_radius(&turan_blocks(n, p))?;
    let e = turan_size(n, p);
    let (ni, pi, ei) = (n as i128, p as i128, e as i128);
    let avg = Ratio::new(2 * ei, ni);
    let degree_bound = Ratio::new((pi - 1) * ni, pi) - Ratio::new(pi, 4 * ni);
    let edge_bound = Ratio::new((pi - 1) * ni * ni, 2 * pi) - Ratio::new(pi, 8);
    let to_f = |r: Ratio<i128>| *r.numer() as f64 / *r.denom() as f64;
    let avg_f = to_f(avg);
    Ok(RayleighChain {
        n,
        p,
        edges: e,
        rho,
        average_degree: avg_f,
        degree_bound: to_f(degree_bound),
        edge_bound: to_f(edge_bound),
        slack_rho: rho - avg_f,
        slack_degree: to_f(avg - degree_bound),
        slack_edges: to_f(Ratio::from_integer(ei) - edge_bound),
        rho_holds: rho >= avg_f - RHO_SLACK,
        degree_holds: avg >= degree_bound,
        edges_hold: Ratio::from_integer(ei) >= edge_bound,
        regular: n % p == 0,
    })
}

/// x_w / x_u on H(n,p,q): w in the K_{q−1} block, u in a largest Turán part.
pub fn perron_ratio_diagnostic(n: u64, p: u64, q: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::input("the ratio needs q ≥ 2 (a nonempty clique block)"));
    }
    if p < 1 || n + 1 < q + p {
        return Err(Error::input(format!("H({n},{p},{q}) needs n ≥ q−1+p")));
    }
    let mut blocks = vec![Block::complete(q - 1)];
    blocks.extend(turan_blocks(n + 1 - q, p));
    let sol = quotient_solution(&blocks)?;
    Ok(sol.block_values[0] / sol.block_values[1])
}
