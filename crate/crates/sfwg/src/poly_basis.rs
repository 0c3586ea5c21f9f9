//! Polynomial bases on elements and edges, and quadrature rules.
//!
//! Element bases are scaled monomials centered at the element centroid,
//! `((x - x_c)/h_T)^a ((y - y_c)/h_T)^b` with `a + b ≤ k`, so local Gram
//! matrices depend on the element shape but not its size. Edge bases are
//! monomials `s^i` in the signed arc-length parameter `s ∈ [-1/2, 1/2]`
//! (midpoint-centered, normalized by the edge length), with the orientation
//! fixed by the edge's global vertex order.
//!
//! Monomials are ordered by total degree, and within a degree by descending
//! x-power: `1, ξ, η, ξ², ξη, η², …`.
//!
//! Quadrature on the reference triangle `(0,0),(1,0),(0,1)` is a collapsed
//! tensor-product Gauss–Legendre rule; convex polygons are integrated by
//! fanning triangles from the centroid. Edge rules are Gauss–Legendre on
//! `[0,1]` weighted by arc length at the call site.

use crate::mesh::{ElementGeom, Point2};
use nalgebra::DMatrix;
use std::f64::consts::PI;

/// Dimension of the polynomial space `P_k` in two variables.
pub fn dim_pk(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// Exponent pairs `(a, b)` of all monomials `x^a y^b` with `a + b ≤ k`,
/// in the crate-wide ordering.
pub fn monomial_exponents(k: usize) -> Vec<(u32, u32)> {
    let mut exps = Vec::with_capacity(dim_pk(k));
    for d in 0..=k as u32 {
        for a in (0..=d).rev() {
            exps.push((a, d - a));
        }
    }
    exps
}

/// Scaled monomial basis of `P_k(T)`, centered at the element centroid and
/// normalized by the element diameter.
#[derive(Clone, Debug)]
pub struct ElementBasis {
    pub k: usize,
    center: Point2,
    scale: f64,
    exps: Vec<(u32, u32)>,
}

impl ElementBasis {
    pub fn new(geom: &ElementGeom, k: usize) -> Self {
        Self {
            k,
            center: geom.centroid,
            scale: geom.diameter,
            exps: monomial_exponents(k),
        }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exps
    }

    /// Values of all basis functions at `p`.
    pub fn eval(&self, p: Point2) -> Vec<f64> {
        let (xi, eta) = self.local(p);
        let (xp, yp) = self.power_tables(xi, eta);
        self.exps
            .iter()
            .map(|&(a, b)| xp[a as usize] * yp[b as usize])
            .collect()
    }

    /// Values and gradients (with the `1/h_T` chain factor) at `p`.
    pub fn eval_with_grad(&self, p: Point2) -> (Vec<f64>, Vec<[f64; 2]>) {
        let (xi, eta) = self.local(p);
        let (xp, yp) = self.power_tables(xi, eta);
        let inv_h = 1.0 / self.scale;
        let mut values = Vec::with_capacity(self.exps.len());
        let mut grads = Vec::with_capacity(self.exps.len());
        for &(a, b) in &self.exps {
            let (a, b) = (a as usize, b as usize);
            values.push(xp[a] * yp[b]);
            let gx = if a == 0 { 0.0 } else { a as f64 * xp[a - 1] * yp[b] * inv_h };
            let gy = if b == 0 { 0.0 } else { b as f64 * xp[a] * yp[b - 1] * inv_h };
            grads.push([gx, gy]);
        }
        (values, grads)
    }

    fn local(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.center.x) / self.scale, (p.y - self.center.y) / self.scale)
    }

    fn power_tables(&self, xi: f64, eta: f64) -> (Vec<f64>, Vec<f64>) {
        let mut xp = vec![1.0; self.k + 1];
        let mut yp = vec![1.0; self.k + 1];
        for i in 1..=self.k {
            xp[i] = xp[i - 1] * xi;
            yp[i] = yp[i - 1] * eta;
        }
        (xp, yp)
    }
}

/// Monomial basis `1, s, s², …, s^k` of `P_k(e)` in the midpoint-centered
/// arc-length parameter `s ∈ [-1/2, 1/2]`.
#[derive(Clone, Copy, Debug)]
pub struct EdgeBasis {
    pub k: usize,
}

impl EdgeBasis {
    pub fn new(k: usize) -> Self {
        Self { k }
    }

    pub fn dim(&self) -> usize {
        self.k + 1
    }

    pub fn eval(&self, s: f64) -> Vec<f64> {
        let mut values = Vec::with_capacity(self.k + 1);
        let mut acc = 1.0;
        for _ in 0..=self.k {
            values.push(acc);
            acc *= s;
        }
        values
    }
}

/// A planar quadrature rule with a declared polynomial exactness degree.
#[derive(Clone, Debug)]
pub struct QuadRule2d {
    pub points: Vec<Point2>,
    pub weights: Vec<f64>,
    pub degree: usize,
}

/// A 1D quadrature rule on `[0, 1]` with weights summing to one.
#[derive(Clone, Debug)]
pub struct QuadRule1d {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub degree: usize,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for l in 2..=n {
                let p2 = ((2 * l - 1) as f64 * x * p1 - (l - 1) as f64 * p0) / l as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Gauss–Legendre rule on `[0, 1]` exact for polynomials of degree `d`.
pub fn edge_quadrature(d: usize) -> QuadRule1d {
    let n = (d + 2) / 2; // ceil((d+1)/2)
    let (nodes, weights) = gauss_legendre(n.max(1));
    QuadRule1d {
        points: nodes.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        weights: weights.iter().map(|w| 0.5 * w).collect(),
        degree: d,
    }
}

/// Quadrature on the reference triangle `(0,0),(1,0),(0,1)`, exact for total
/// degree `d`: a tensor Gauss–Legendre rule on the unit square collapsed by
/// `x = u, y = v(1-u)`. The collapse multiplies the integrand by the Jacobian
/// `1-u`, which raises the u-direction degree by one; the u rule gets one
/// more point to absorb it.
pub fn triangle_quadrature(d: usize) -> QuadRule2d {
    let nu = (d + 3) / 2; // ceil((d+2)/2)
    let nv = (d + 2) / 2; // ceil((d+1)/2)
    let (unodes, uweights) = gauss_legendre(nu.max(1));
    let (vnodes, vweights) = gauss_legendre(nv.max(1));
    let mut points = Vec::with_capacity(nu * nv);
    let mut weights = Vec::with_capacity(nu * nv);
    for (xu, wu) in unodes.iter().zip(&uweights) {
        let u = 0.5 * (xu + 1.0);
        for (xv, wv) in vnodes.iter().zip(&vweights) {
            let v = 0.5 * (xv + 1.0);
            points.push(Point2::new(u, v * (1.0 - u)));
            weights.push(0.25 * wu * wv * (1.0 - u));
        }
    }
    QuadRule2d { points, weights, degree: d }
}

/// Quadrature on a convex polygon, exact for total degree `d`: the polygon is
/// fanned into triangles from its centroid and the reference rule is mapped
/// affinely onto each. Points and weights are in physical coordinates.
pub fn polygon_quadrature(geom: &ElementGeom, polygon: &[Point2], d: usize) -> QuadRule2d {
    let reference = triangle_quadrature(d);
    let c = geom.centroid;
    let m = polygon.len();
    let mut points = Vec::with_capacity(m * reference.points.len());
    let mut weights = Vec::with_capacity(m * reference.points.len());
    for i in 0..m {
        let p = polygon[i];
        let q = polygon[(i + 1) % m];
        let e1 = [p.x - c.x, p.y - c.y];
        let e2 = [q.x - c.x, q.y - c.y];
        let jac = e1[0] * e2[1] - e1[1] * e2[0]; // twice the fan triangle area
        for (rp, rw) in reference.points.iter().zip(&reference.weights) {
            points.push(Point2::new(
                c.x + rp.x * e1[0] + rp.y * e2[0],
                c.y + rp.x * e1[1] + rp.y * e2[1],
            ));
            weights.push(rw * jac);
        }
    }
    QuadRule2d { points, weights, degree: d }
}

/// Gram matrix of an element basis under a quadrature rule.
pub fn gram_matrix(basis: &ElementBasis, rule: &QuadRule2d) -> DMatrix<f64> {
    let n = basis.dim();
    let mut gram = DMatrix::zeros(n, n);
    for (p, &w) in rule.points.iter().zip(&rule.weights) {
        let values = basis.eval(*p);
        for r in 0..n {
            let wr = w * values[r];
            for c in 0..n {
                gram[(r, c)] += wr * values[c];
            }
        }
    }
    gram
}
