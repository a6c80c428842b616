//! Spectral radius, Perron vectors and exact radius comparison.

mod exact;
mod quotient;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

pub use exact::{characteristic_polynomial, compare_largest_roots};
pub use quotient::{
    perron_ratio_diagnostic, quotient_radius, quotient_solution, rayleigh_chain_check, Block,
    QuotientSolution, RayleighChain,
};

/// Default residual tolerance for power iteration.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Radii closer than this are compared exactly.
pub const TIE_THRESHOLD: f64 = 1e-9;
/// Iteration cap per component.
pub const MAX_ITERATIONS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    #[serde(with = "crate::float17")]
    pub rho: f64,
    #[serde(with = "crate::float17::vec")]
    pub perron: Vec<f64>,
    #[serde(with = "crate::float17")]
    pub residual: f64,
    pub iterations: u64,
}

/// Dominant adjacency eigenvalue by power iteration on A + I from the
/// all-ones vector, run per component. The Perron vector lives on the
/// maximizing component with the least vertex.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralProfile> {
    let n = g.order();
    if n == 0 {
        return Err(Error::input("spectral radius of the empty-order graph"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::input(format!("tolerance must be positive, got {tol}")));
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut iterations = 0;
    for comp in g.components() {
        let (rho, x, its) = component_power(g.rows(), comp, n, tol)?;
        iterations += its;
        // Components come in order of least vertex, so a later component
        // only wins when clearly larger.
        let better = match &best {
            None => true,
            Some((b, _)) => rho > *b + TIE_THRESHOLD,
        };
        if better {
            best = Some((rho, x));
        }
    }
    let (rho, perron) = best.expect("at least one component");
    let residual = residual_inf(g.rows(), &perron, rho);
    Ok(SpectralProfile {
        rho,
        perron,
        residual,
        iterations,
    })
}

fn multiply(adj: &[u64], x: &[f64], out: &mut [f64], comp: u64) {
    for v in Bits(comp) {
        out[v] = Bits(adj[v]).map(|u| x[u]).sum();
    }
}

fn residual_inf(adj: &[u64], x: &[f64], rho: f64) -> f64 {
    let mut ax = vec![0.0; x.len()];
    multiply(adj, x, &mut ax, crate::graph::low_bits(x.len()));
    ax.iter()
        .zip(x)
        .map(|(a, b)| (a - rho * b).abs())
        .fold(0.0, f64::max)
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

/// Power iteration restricted to one component; returns (ρ, x, iterations).
fn component_power(adj: &[u64], comp: u64, n: usize, tol: f64) -> Result<(f64, Vec<f64>, u64)> {
    let mut x = vec![0.0; n];
    for v in Bits(comp) {
        x[v] = 1.0;
    }
    normalize(&mut x);
    if comp.count_ones() == 1 {
        return Ok((0.0, x, 0));
    }
    let mut ax = vec![0.0; n];
    const CHECK_EVERY: u64 = 8;
    let mut it = 0;
    while it < MAX_ITERATIONS {
        multiply(adj, &x, &mut ax, comp);
        if it % CHECK_EVERY == 0 {
            // Rayleigh quotient with the unit vector x.
            let rho: f64 = Bits(comp).map(|v| x[v] * ax[v]).sum();
            let res = Bits(comp).map(|v| (ax[v] - rho * x[v]).abs()).fold(0.0, f64::max);
            if res <= tol {
                return Ok((rho, x, it));
            }
        }
        for v in Bits(comp) {
            x[v] += ax[v];
        }
        normalize(&mut x);
        it += 1;
    }
    Err(Error::Numeric(format!(
        "power iteration did not reach residual {tol} in {MAX_ITERATIONS} steps"
    )))
}

/// Orders ρ(g1) against ρ(g2). Numeric when the gap is clearly larger than
/// the iteration error, exact (characteristic polynomials) otherwise.
pub fn compare_radius_exact(g1: &Graph, g2: &Graph, tol: f64) -> Result<Ordering> {
    let p1 = spectral_radius(g1, tol)?;
    let p2 = spectral_radius(g2, tol)?;
    Ok(compare_profiles(g1, &p1, g2, &p2))
}

/// As [`compare_radius_exact`] with profiles already computed.
pub fn compare_profiles(g1: &Graph, p1: &SpectralProfile, g2: &Graph, p2: &SpectralProfile) -> Ordering {
    if numerically_separated(g1, p1, g2, p2) {
        return if p1.rho > p2.rho { Ordering::Greater } else { Ordering::Less };
    }
    compare_largest_roots(&characteristic_polynomial(g1), &characteristic_polynomial(g2))
}

/// Whether the numeric gap alone decides the order: it must exceed both
/// [`TIE_THRESHOLD`] and twice the eigenvalue error bound √n·residual.
pub fn numerically_separated(g1: &Graph, p1: &SpectralProfile, g2: &Graph, p2: &SpectralProfile) -> bool {
    let n = g1.order().max(g2.order()) as f64;
    let slack = TIE_THRESHOLD.max(2.0 * n.sqrt() * p1.residual.max(p2.residual));
    (p1.rho - p2.rho).abs() > slack
}
