use std::f64::consts::PI;

use gauss_quad::legendre::GaussLegendre;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::surface_area_sigma;

/// Largest `m` that uses tensor-product rules; above it nodes are
/// quasi-random.
pub const MAX_TENSOR_M: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    SphereSurface,
    BallVolume,
}

/// Nodes and weights on a sphere or ball in `M ≅ R^{m+1}`.
///
/// Points are stored row-major with stride `m + 1`. Surface rules also carry
/// exterior unit normals in the same layout.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub center: Vec<f64>,
    pub radius: f64,
    pub m: usize,
    pub resolution: usize,
    pub seed: u64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    normals: Vec<f64>,
}

impl QuadratureRule {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        kind: RuleKind,
        center: Vec<f64>,
        radius: f64,
        m: usize,
        resolution: usize,
        seed: u64,
        nodes: Vec<f64>,
        weights: Vec<f64>,
        normals: Vec<f64>,
    ) -> Self {
        Self { kind, center, radius, m, resolution, seed, nodes, weights, normals }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.m + 1
    }

    pub fn node(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.nodes[i * d..(i + 1) * d]
    }

    pub fn normal(&self, i: usize) -> Option<&[f64]> {
        let d = self.dim();
        (!self.normals.is_empty()).then(|| &self.normals[i * d..(i + 1) * d])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// The same rule family at another resolution.
    pub fn with_resolution(&self, resolution: usize) -> Result<Self> {
        build_rule(self.kind, &self.center, self.radius, self.m, resolution, self.seed)
    }

    /// Nodes (with weights) farther than `epsilon` from `x`.
    pub fn excluding_ball(&self, x: &[f64], epsilon: f64) -> Self {
        let d = self.dim();
        let mut out = Self { nodes: Vec::new(), weights: Vec::new(), normals: Vec::new(), ..self.clone() };
        for i in 0..self.len() {
            let y = self.node(i);
            let dist2: f64 = y.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
            if dist2.sqrt() >= epsilon {
                out.nodes.extend_from_slice(y);
                out.weights.push(self.weights[i]);
                if !self.normals.is_empty() {
                    out.normals.extend_from_slice(&self.normals[i * d..(i + 1) * d]);
                }
            }
        }
        out
    }

    /// Splits the rule into two rules whose weights partition the original.
    pub fn split(&self, mut first: impl FnMut(&[f64]) -> bool) -> (Self, Self) {
        let d = self.dim();
        let empty = Self { nodes: Vec::new(), weights: Vec::new(), normals: Vec::new(), ..self.clone() };
        let (mut a, mut b) = (empty.clone(), empty);
        for i in 0..self.len() {
            let target = if first(self.node(i)) { &mut a } else { &mut b };
            target.nodes.extend_from_slice(self.node(i));
            target.weights.push(self.weights[i]);
            if !self.normals.is_empty() {
                target.normals.extend_from_slice(&self.normals[i * d..(i + 1) * d]);
            }
        }
        (a, b)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

pub fn build_quadrature(
    kind: RuleKind,
    center: &[f64],
    radius: f64,
    m: usize,
    resolution: usize,
    seed: u64,
) -> Result<QuadratureRule> {
    if resolution < 4 {
        return Err(Error::InvalidParameter(format!("resolution must be at least 4, got {resolution}")));
    }
    build_rule(kind, center, radius, m, resolution, seed)
}

pub(crate) fn build_rule(
    kind: RuleKind,
    center: &[f64],
    radius: f64,
    m: usize,
    resolution: usize,
    seed: u64,
) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::InvalidParameter("quadrature needs m >= 1".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    if center.len() != m + 1 {
        return Err(Error::DimensionMismatch { expected: m + 1, got: center.len() });
    }
    let resolution = resolution.max(2);
    let (dirs, dir_weights) = unit_sphere(m, resolution, seed)?;
    let d = m + 1;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut normals = Vec::new();
    match kind {
        RuleKind::SphereSurface => {
            let scale = radius.powi(m as i32);
            for (i, w) in dir_weights.iter().enumerate() {
                let u = &dirs[i * d..(i + 1) * d];
                nodes.extend(center.iter().zip(u).map(|(c, ui)| c + radius * ui));
                normals.extend_from_slice(u);
                weights.push(w * scale);
            }
        }
        RuleKind::BallVolume if m <= MAX_TENSOR_M => {
            let radial = gauss_legendre(resolution, 0.0, radius)?;
            for (i, w) in dir_weights.iter().enumerate() {
                let u = &dirs[i * d..(i + 1) * d];
                for &(rho, wr) in &radial {
                    nodes.extend(center.iter().zip(u).map(|(c, ui)| c + rho * ui));
                    weights.push(w * wr * rho.powi(m as i32));
                }
            }
        }
        RuleKind::BallVolume => {
            let points = halton_ball(m, resolution, seed);
            let volume = surface_area_sigma(m)?.value * radius.powi(m as i32 + 1) / (m as f64 + 1.0);
            let w = volume / (points.len() / d) as f64;
            nodes.extend(points.chunks(d).flat_map(|p| p.iter().zip(center).map(|(u, c)| c + radius * u).collect::<Vec<_>>()));
            weights.resize(points.len() / d, w);
        }
    }
    Ok(QuadratureRule::from_parts(kind, center.to_vec(), radius, m, resolution, seed, nodes, weights, normals))
}

/// Gauss–Legendre pairs `(node, weight)` on `[a, b]`.
pub(crate) fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<Vec<(f64, f64)>> {
    let rule = GaussLegendre::new(n.max(2)).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let half = 0.5 * (b - a);
    let mut pairs: Vec<(f64, f64)> =
        rule.into_node_weight_pairs().into_iter().map(|(x, w)| (a + half * (x + 1.0), half * w)).collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    Ok(pairs)
}

/// Directions and weights on the unit sphere `S^m`, flat with stride m + 1.
pub(crate) fn unit_sphere(m: usize, resolution: usize, seed: u64) -> Result<(Vec<f64>, Vec<f64>)> {
    if m > MAX_TENSOR_M {
        let d = m + 1;
        let points = halton_sphere(m, resolution, seed);
        let n = points.len() / d;
        let w = surface_area_sigma(m)?.value / n as f64;
        return Ok((points, vec![w; n]));
    }
    tensor_sphere(m, resolution)
}

fn tensor_sphere(m: usize, resolution: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    match m {
        1 => {
            // trapezoid in the periodic angle
            let n = 2 * resolution;
            let h = 2.0 * PI / n as f64;
            let mut dirs = Vec::with_capacity(2 * n);
            for j in 0..n {
                let phi = (j as f64 + 0.5) * h;
                dirs.extend([phi.cos(), phi.sin()]);
            }
            Ok((dirs, vec![h; n]))
        }
        2 => {
            // Gauss–Legendre in cos θ, exact for polynomial data in that variable
            let (circle, cw) = tensor_sphere(1, resolution)?;
            let mut dirs = Vec::new();
            let mut weights = Vec::new();
            for (t, wt) in gauss_legendre(resolution, -1.0, 1.0)? {
                let s = (1.0 - t * t).sqrt();
                for (j, wc) in cw.iter().enumerate() {
                    dirs.extend([t, s * circle[2 * j], s * circle[2 * j + 1]]);
                    weights.push(wt * wc);
                }
            }
            Ok((dirs, weights))
        }
        _ => {
            // Gauss–Legendre in the polar angle with the sin^{m-1} Jacobian
            let (inner, iw) = tensor_sphere(m - 1, resolution)?;
            let mut dirs = Vec::new();
            let mut weights = Vec::new();
            for (psi, wp) in gauss_legendre(resolution, 0.0, PI)? {
                let (s, c) = psi.sin_cos();
                let jac = s.powi(m as i32 - 1);
                for (j, wi) in iw.iter().enumerate() {
                    dirs.push(c);
                    dirs.extend(inner[j * m..(j + 1) * m].iter().map(|u| s * u));
                    weights.push(wp * jac * wi);
                }
            }
            Ok((dirs, weights))
        }
    }
}

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    out
}

/// Randomly shifted Halton points in `[-1, 1]^{m+1}` kept when inside the
/// unit ball and `|u| >= min_radius`, until `resolution^3` points are found.
fn halton_points(m: usize, resolution: usize, seed: u64, min_radius: f64) -> Vec<f64> {
    let d = m + 1;
    assert!(d <= PRIMES.len(), "quasi-random rules support m < {}", PRIMES.len());
    let target = resolution.pow(3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
    let mut out = Vec::with_capacity(target * d);
    let mut point = vec![0.0; d];
    let mut i = 1u64;
    while out.len() < target * d {
        for (s, p) in point.iter_mut().enumerate() {
            let u = (radical_inverse(i, PRIMES[s]) + shift[s]).fract();
            *p = 2.0 * u - 1.0;
        }
        i += 1;
        let r2: f64 = point.iter().map(|v| v * v).sum();
        if r2 <= 1.0 && r2 >= min_radius * min_radius {
            out.extend_from_slice(&point);
        }
    }
    out
}

fn halton_ball(m: usize, resolution: usize, seed: u64) -> Vec<f64> {
    halton_points(m, resolution, seed, 0.0)
}

/// Radial projection of uniform ball points is uniform on the sphere.
fn halton_sphere(m: usize, resolution: usize, seed: u64) -> Vec<f64> {
    let mut points = halton_points(m, resolution, seed, 1e-3);
    for p in points.chunks_mut(m + 1) {
        let r = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        p.iter_mut().for_each(|v| *v /= r);
    }
    points
}
