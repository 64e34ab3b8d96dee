//! Generators for the benchmark families: frequency-synchronization
//! equilibrium systems on graphs with their symmetric-edge-polytope root
//! counts, and the camera-pose depth formulations (three-point absolute
//! pose and five-point relative pose).

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{Exponent, LaurentPolynomial, LaurentSystem};
use crate::error::BenchError;
use crate::polyhedral::mixed_volume;
use crate::rng::{normal, Seed};

/// Simple undirected graph on vertices 0..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &edges {
            assert!(a < nodes && b < nodes && a != b, "simple graph required");
            seen.insert((a.min(b), a.max(b)));
        }
        assert_eq!(seen.len(), edges.len(), "duplicate edges");
        Graph {
            nodes,
            edges: seen.into_iter().collect(),
        }
    }

    pub fn path(nodes: usize) -> Self {
        Graph::new(nodes, (1..nodes).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(nodes: usize) -> Self {
        assert!(nodes >= 3);
        let mut e: Vec<(usize, usize)> = (1..nodes).map(|i| (i - 1, i)).collect();
        e.push((nodes - 1, 0));
        Graph::new(nodes, e)
    }

    pub fn complete(nodes: usize) -> Self {
        let mut e = Vec::new();
        for a in 0..nodes {
            for b in (a + 1)..nodes {
                e.push((a, b));
            }
        }
        Graph::new(nodes, e)
    }

    /// Hub vertex 0 joined to every vertex of the outer cycle 1..nodes.
    pub fn wheel(nodes: usize) -> Self {
        assert!(nodes >= 4);
        let rim = nodes - 1;
        let mut e: Vec<(usize, usize)> = (1..=rim).map(|i| (0, i)).collect();
        for i in 1..rim {
            e.push((i, i + 1));
        }
        e.push((rim, 1));
        Graph::new(nodes, e)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return false;
        }
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Algebraic equilibrium system of a coupled-oscillator network: variables
/// (s_i, c_i) for i = 1..n with oscillator 0 gauge-fixed to (0, 1).
#[derive(Debug, Clone)]
pub struct KuramotoInstance {
    pub graph: Graph,
    pub frequencies: Vec<f64>,
    pub couplings: Vec<f64>,
    pub system: LaurentSystem,
}

/// Builds the gauge-fixed equilibrium system: for i = 1..n the balance
/// equation ω_i − Σ_{j∼i} k_ij (s_i c_j − c_i s_j) = 0, plus the circle
/// conditions s_i² + c_i² − 1 = 0. Square of size 2n.
pub fn kuramoto_system(g: &Graph, seed: Seed) -> Result<KuramotoInstance, BenchError> {
    if !g.is_connected() {
        return Err(BenchError::Disconnected);
    }
    let n = g.nodes() - 1;
    let nv = 2 * n;
    // Variable layout: s_1..s_n then c_1..c_n.
    let s_var = |i: usize| i - 1;
    let c_var = |i: usize| n + i - 1;
    let mut rng = seed.derive("kuramoto-params", 0).rng();
    let frequencies: Vec<f64> = (0..n).map(|_| 0.5 * normal(&mut rng)).collect();
    let couplings: Vec<f64> = g.edges().iter().map(|_| 1.0 + 0.5 * rng.gen::<f64>()).collect();
    let coupling_of = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        g.edges()
            .iter()
            .position(|&e| e == key)
            .map(|idx| couplings[idx])
            .expect("edge exists")
    };

    let mut polys = Vec::with_capacity(nv);
    for i in 1..=n {
        let mut p = LaurentPolynomial::constant(nv, Complex64::new(frequencies[i - 1], 0.0));
        for j in g.neighbors(i) {
            let k = coupling_of(i, j);
            if j == 0 {
                // sin(θ_i − θ_0) = s_i with the gauge (s_0, c_0) = (0, 1).
                p.add_term(Exponent::unit(nv, s_var(i)), Complex64::new(-k, 0.0));
            } else {
                let mut e1 = vec![0i64; nv];
                e1[s_var(i)] = 1;
                e1[c_var(j)] = 1;
                p.add_term(Exponent(e1), Complex64::new(-k, 0.0));
                let mut e2 = vec![0i64; nv];
                e2[c_var(i)] = 1;
                e2[s_var(j)] = 1;
                p.add_term(Exponent(e2), Complex64::new(k, 0.0));
            }
        }
        polys.push(p);
    }
    for i in 1..=n {
        let mut p = LaurentPolynomial::constant(nv, Complex64::new(-1.0, 0.0));
        let mut e1 = vec![0i64; nv];
        e1[s_var(i)] = 2;
        p.add_term(Exponent(e1), Complex64::new(1.0, 0.0));
        let mut e2 = vec![0i64; nv];
        e2[c_var(i)] = 2;
        p.add_term(Exponent(e2), Complex64::new(1.0, 0.0));
        polys.push(p);
    }
    Ok(KuramotoInstance {
        graph: g.clone(),
        frequencies,
        couplings,
        system: LaurentSystem::new(nv, polys),
    })
}

/// Vertices ±(e_i − e_j) per edge, in the lattice with vertex 0 eliminated.
pub fn symmetric_edge_polytope(g: &Graph) -> Result<Vec<Exponent>, BenchError> {
    if !g.is_connected() {
        return Err(BenchError::Disconnected);
    }
    let n = g.nodes() - 1;
    let mut verts = std::collections::BTreeSet::new();
    for &(a, b) in g.edges() {
        let mut v = vec![0i64; n];
        if a > 0 {
            v[a - 1] = 1;
        }
        if b > 0 {
            v[b - 1] = -1;
        }
        verts.insert(Exponent(v.clone()));
        verts.insert(Exponent(v.iter().map(|x| -x).collect()));
    }
    Ok(verts.into_iter().collect())
}

/// Generic complex equilibrium count: n!·vol of the symmetric edge polytope,
/// computed as the mixed volume of n copies of its vertex set.
pub fn kuramoto_count(g: &Graph, seed: Seed) -> Result<u128, BenchError> {
    let verts = symmetric_edge_polytope(g)?;
    let n = g.nodes() - 1;
    let supports = vec![verts; n];
    Ok(mixed_volume(&supports, seed.derive("kuramoto-count", 0))?)
}

/// A three-point absolute-pose instance: three squared-distance equations in
/// the depths λ₁..λ₃, plus the forward-constructed ground truth.
#[derive(Debug, Clone)]
pub struct AbsolutePoseInstance {
    pub system: LaurentSystem,
    pub world_points: Vec<[f64; 3]>,
    pub image_points: Vec<[f64; 3]>,
    pub true_depths: Vec<f64>,
}

fn random_rotation(rng: &mut rand_chacha::ChaCha8Rng) -> [[f64; 3]; 3] {
    // Normalized quaternion from Gaussian samples.
    let q: Vec<f64> = (0..4).map(|_| normal(rng)).collect();
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (w, x, y, z) = (q[0] / norm, q[1] / norm, q[2] / norm, q[3] / norm);
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

fn apply_pose(r: &[[f64; 3]; 3], t: &[f64; 3], p: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = r[i][0] * p[0] + r[i][1] * p[1] + r[i][2] * p[2] + t[i];
    }
    out
}

fn triangle_area(points: &[[f64; 3]]) -> f64 {
    let u = [
        points[1][0] - points[0][0],
        points[1][1] - points[0][1],
        points[1][2] - points[0][2],
    ];
    let v = [
        points[2][0] - points[0][0],
        points[2][1] - points[0][1],
        points[2][2] - points[0][2],
    ];
    let cx = u[1] * v[2] - u[2] * v[1];
    let cy = u[2] * v[0] - u[0] * v[2];
    let cz = u[0] * v[1] - u[1] * v[0];
    0.5 * (cx * cx + cy * cy + cz * cz).sqrt()
}

fn dist_sq(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

/// The pair-distance quadric ‖λ_i x_i − λ_j x_j‖² − d² in the depth
/// variables at positions (vi, vj) of an nv-variable system.
fn depth_quadric(
    nv: usize,
    vi: usize,
    xi: &[f64; 3],
    vj: usize,
    xj: &[f64; 3],
    d2: f64,
) -> LaurentPolynomial {
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let mut p = LaurentPolynomial::constant(nv, Complex64::new(-d2, 0.0));
    let mut eii = vec![0i64; nv];
    eii[vi] += 2;
    p.add_term(Exponent(eii), Complex64::new(dot(xi, xi), 0.0));
    let mut ejj = vec![0i64; nv];
    ejj[vj] += 2;
    p.add_term(Exponent(ejj), Complex64::new(dot(xj, xj), 0.0));
    let mut eij = vec![0i64; nv];
    eij[vi] += 1;
    eij[vj] += 1;
    p.add_term(Exponent(eij), Complex64::new(-2.0 * dot(xi, xj), 0.0));
    p
}

/// Samples a generic three-point pose problem. Degenerate (near-collinear)
/// world configurations are resampled internally.
pub fn p3p_system(seed: Seed) -> Result<AbsolutePoseInstance, BenchError> {
    for attempt in 0..32u64 {
        let mut rng = seed.derive("p3p", attempt).rng();
        let world: Vec<[f64; 3]> = (0..3)
            .map(|_| [2.0 * normal(&mut rng), 2.0 * normal(&mut rng), 2.0 * normal(&mut rng)])
            .collect();
        if triangle_area(&world) < 0.2 {
            continue;
        }
        let r = random_rotation(&mut rng);
        let t = [normal(&mut rng), normal(&mut rng), 8.0 + rng.gen::<f64>()];
        let cam: Vec<[f64; 3]> = world.iter().map(|p| apply_pose(&r, &t, p)).collect();
        if cam.iter().any(|c| c[2] < 1.0) {
            continue;
        }
        let depths: Vec<f64> = cam.iter().map(|c| c[2]).collect();
        let image: Vec<[f64; 3]> = cam
            .iter()
            .map(|c| [c[0] / c[2], c[1] / c[2], 1.0])
            .collect();
        let mut polys = Vec::with_capacity(3);
        for (i, j) in [(0usize, 1usize), (1, 2), (2, 0)] {
            polys.push(depth_quadric(
                3,
                i,
                &image[i],
                j,
                &image[j],
                dist_sq(&world[i], &world[j]),
            ));
        }
        let system = LaurentSystem::new(3, polys);
        let z: Vec<Complex64> = depths.iter().map(|&d| Complex64::new(d, 0.0)).collect();
        debug_assert!(system.scaled_residual(&z) < 1e-10);
        return Ok(AbsolutePoseInstance {
            system,
            world_points: world,
            image_points: image,
            true_depths: depths,
        });
    }
    Err(BenchError::DegenerateConfiguration)
}

/// A five-point relative-pose instance: ten same-distance equations and one
/// same-orientation determinant in the nine unscaled depths, the image data,
/// and the forward-constructed ground truth.
#[derive(Debug, Clone)]
pub struct RelativePoseInstance {
    /// Polynomials over (λ₂..λ₅, μ₁..μ₅); λ₁ is fixed to one.
    pub system: LaurentSystem,
    /// The same equations as a family over the 20 image coordinates.
    pub family: crate::solve::ParametricFamily,
    /// Flattened image coordinates (x₁..x₅ then y₁..y₅, two coords each).
    pub image_parameters: Vec<Complex64>,
    pub first_images: Vec<[f64; 3]>,
    pub second_images: Vec<[f64; 3]>,
    /// Ground truth (λ₂..λ₅, μ₁..μ₅) after normalizing λ₁ = 1.
    pub true_depths: Vec<f64>,
}

/// Variable layout for the relative-pose system.
const REL_NV: usize = 9;

fn rel_var(kind: usize, i: usize) -> Option<usize> {
    // kind 0: λ_i (i = 1..5, λ₁ fixed), kind 1: μ_i (i = 1..5)
    match kind {
        0 => {
            if i == 1 {
                None
            } else {
                Some(i - 2)
            }
        }
        _ => Some(4 + (i - 1)),
    }
}

/// Same-distance equation between view pairs with λ₁ ≡ 1 substituted, built
/// over variables-then-parameters so it can serve as a family template.
fn rel_pair_equation(
    nv_total: usize,
    i: usize,
    j: usize,
    // functions giving the (possibly symbolic) image coordinates
    x_coord: &dyn Fn(usize, usize) -> LaurentPolynomial,
    y_coord: &dyn Fn(usize, usize) -> LaurentPolynomial,
) -> LaurentPolynomial {
    // ‖λ_i x_i − λ_j x_j‖² − ‖μ_i y_i − μ_j y_j‖², third coordinates are 1.
    let depth = |kind: usize, idx: usize| -> LaurentPolynomial {
        match rel_var(kind, idx) {
            Some(v) => LaurentPolynomial::variable(nv_total, v),
            None => LaurentPolynomial::constant(nv_total, Complex64::new(1.0, 0.0)),
        }
    };
    let mut acc = LaurentPolynomial::zero(nv_total);
    for axis in 0..3 {
        let (xi, xj) = if axis < 2 {
            (x_coord(i, axis), x_coord(j, axis))
        } else {
            let one = LaurentPolynomial::constant(nv_total, Complex64::new(1.0, 0.0));
            (one.clone(), one)
        };
        let li = depth(0, i).mul(&xi);
        let lj = depth(0, j).mul(&xj);
        let d = li.sub(&lj);
        acc = acc.add(&d.mul(&d));
        let (yi, yj) = if axis < 2 {
            (y_coord(i, axis), y_coord(j, axis))
        } else {
            let one = LaurentPolynomial::constant(nv_total, Complex64::new(1.0, 0.0));
            (one.clone(), one)
        };
        let mi = depth(1, i).mul(&yi);
        let mj = depth(1, j).mul(&yj);
        let e = mi.sub(&mj);
        acc = acc.sub(&e.mul(&e));
    }
    acc
}

fn det3(cols: [[LaurentPolynomial; 3]; 3]) -> LaurentPolynomial {
    // Columns of symbolic 3-vectors; cofactor expansion.
    let m = |r: usize, c: usize| &cols[c][r];
    let term = |a: &LaurentPolynomial, b: &LaurentPolynomial| a.mul(b);
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        term(m(r1, c1), m(r2, c2)).sub(&term(m(r1, c2), m(r2, c1)))
    };
    m(0, 0)
        .mul(&minor(1, 2, 1, 2))
        .sub(&m(0, 1).mul(&minor(1, 2, 0, 2)))
        .add(&m(0, 2).mul(&minor(1, 2, 0, 1)))
}

fn rel_orientation_equation(
    nv_total: usize,
    x_coord: &dyn Fn(usize, usize) -> LaurentPolynomial,
    y_coord: &dyn Fn(usize, usize) -> LaurentPolynomial,
) -> LaurentPolynomial {
    let depth = |kind: usize, idx: usize| -> LaurentPolynomial {
        match rel_var(kind, idx) {
            Some(v) => LaurentPolynomial::variable(nv_total, v),
            None => LaurentPolynomial::constant(nv_total, Complex64::new(1.0, 0.0)),
        }
    };
    let one = LaurentPolynomial::constant(nv_total, Complex64::new(1.0, 0.0));
    // Column j of the orientation matrix: depth₁·p₁ − depth_j·p_j.
    let col = |kind: usize, j: usize| -> [LaurentPolynomial; 3] {
        let coord = |idx: usize, axis: usize| {
            if axis < 2 {
                if kind == 0 {
                    x_coord(idx, axis)
                } else {
                    y_coord(idx, axis)
                }
            } else {
                one.clone()
            }
        };
        [0, 1, 2].map(|axis| {
            depth(kind, 1)
                .mul(&coord(1, axis))
                .sub(&depth(kind, j).mul(&coord(j, axis)))
        })
    };
    let dx = det3([col(0, 2), col(0, 3), col(0, 4)]);
    let dy = det3([col(1, 2), col(1, 3), col(1, 4)]);
    dx.sub(&dy)
}

/// Samples a generic five-point relative-pose problem with λ₁ normalized to
/// one. The parameter order in the family is x₁..x₅ then y₁..y₅, two
/// coordinates per image point.
pub fn five_point_system(seed: Seed) -> Result<RelativePoseInstance, BenchError> {
    for attempt in 0..32u64 {
        let mut rng = seed.derive("five-point", attempt).rng();
        let world: Vec<[f64; 3]> = (0..5)
            .map(|_| {
                [
                    1.5 * normal(&mut rng),
                    1.5 * normal(&mut rng),
                    6.0 + 2.0 * rng.gen::<f64>(),
                ]
            })
            .collect();
        let r = random_rotation(&mut rng);
        let t = [normal(&mut rng), normal(&mut rng), 1.0];
        let second: Vec<[f64; 3]> = world.iter().map(|p| apply_pose(&r, &t, p)).collect();
        if world.iter().any(|p| p[2] < 1.0) || second.iter().any(|p| p[2] < 1.0) {
            continue;
        }
        // Normalize the scene so the first depth is exactly one.
        let lam1 = world[0][2];
        let lambdas: Vec<f64> = world.iter().map(|p| p[2] / lam1).collect();
        let mus: Vec<f64> = second.iter().map(|p| p[2] / lam1).collect();
        let xs: Vec<[f64; 3]> = world.iter().map(|p| [p[0] / p[2], p[1] / p[2], 1.0]).collect();
        let ys: Vec<[f64; 3]> = second.iter().map(|p| [p[0] / p[2], p[1] / p[2], 1.0]).collect();

        // Family template over 9 variables + 20 parameters.
        let nv_total = REL_NV + 20;
        let px = |i: usize, axis: usize| REL_NV + 2 * (i - 1) + axis;
        let py = |i: usize, axis: usize| REL_NV + 10 + 2 * (i - 1) + axis;
        let x_sym = move |i: usize, axis: usize| LaurentPolynomial::variable(nv_total, px(i, axis));
        let y_sym = move |i: usize, axis: usize| LaurentPolynomial::variable(nv_total, py(i, axis));
        let mut template_polys = Vec::with_capacity(11);
        for i in 1..=5usize {
            for j in (i + 1)..=5 {
                template_polys.push(rel_pair_equation(nv_total, i, j, &x_sym, &y_sym));
            }
        }
        template_polys.push(rel_orientation_equation(nv_total, &x_sym, &y_sym));
        let family = crate::solve::ParametricFamily::new(
            LaurentSystem::new(nv_total, template_polys),
            REL_NV,
        );

        let mut params = Vec::with_capacity(20);
        for p in &xs {
            params.push(Complex64::new(p[0], 0.0));
            params.push(Complex64::new(p[1], 0.0));
        }
        for p in &ys {
            params.push(Complex64::new(p[0], 0.0));
            params.push(Complex64::new(p[1], 0.0));
        }
        let system = family.at(&params).expect("parameters substitute");

        let mut truth = Vec::with_capacity(REL_NV);
        truth.extend(lambdas.iter().skip(1).copied());
        truth.extend(mus.iter().copied());
        let z: Vec<Complex64> = truth.iter().map(|&d| Complex64::new(d, 0.0)).collect();
        if system.scaled_residual(&z) > 1e-9 {
            continue;
        }
        return Ok(RelativePoseInstance {
            system,
            family,
            image_parameters: params,
            first_images: xs,
            second_images: ys,
            true_depths: truth,
        });
    }
    Err(BenchError::DegenerateConfiguration)
}

/// Closed-form generic equilibrium counts for the graph families with known
/// formulas: trees 2ⁿ, cycles (n+1)·C(n, ⌊n/2⌋), odd-rim wheels
/// (1−√3)ⁿ + (1+√3)ⁿ.
pub fn closed_form_count(kind: &str, nodes: usize) -> Option<u128> {
    let n = (nodes - 1) as u32;
    match kind {
        "tree" | "path" => Some(1u128 << n),
        "cycle" => {
            let binom = |n: u64, k: u64| -> u128 {
                let mut acc: u128 = 1;
                for i in 0..k {
                    acc = acc * (n - i) as u128 / (i + 1) as u128;
                }
                acc
            };
            Some((n as u128 + 1) * binom(n as u64, (n / 2) as u64))
        }
        "wheel" if n % 2 == 1 => {
            let s3 = 3f64.sqrt();
            let v = (1.0 - s3).powi(n as i32) + (1.0 + s3).powi(n as i32);
            Some(v.round() as u128)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::{bezout_number, total_degree_solve};
    use crate::tracker::TrackerOptions;

    #[test]
    fn complete_three_gives_a_square_four_by_four_system() {
        let inst = kuramoto_system(&Graph::complete(3), Seed(1)).unwrap();
        assert_eq!(inst.system.nvars(), 4);
        assert!(inst.system.is_square());
    }

    #[test]
    fn two_node_path_has_two_equilibria() {
        let inst = kuramoto_system(&Graph::path(2), Seed(2)).unwrap();
        assert_eq!(inst.system.nvars(), 2);
        let out = total_degree_solve(&inst.system, &TrackerOptions::default(), Seed(3)).unwrap();
        assert_eq!(out.solutions.len(), 2);
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]);
        assert!(matches!(
            kuramoto_system(&g, Seed(0)),
            Err(BenchError::Disconnected)
        ));
    }

    #[test]
    fn edge_polytopes_of_small_graphs() {
        // Triangle: hexagon (6 vertices); 3-path: parallelogram (4);
        // single edge: the segment [−1, 1].
        assert_eq!(symmetric_edge_polytope(&Graph::complete(3)).unwrap().len(), 6);
        assert_eq!(symmetric_edge_polytope(&Graph::path(3)).unwrap().len(), 4);
        let seg = symmetric_edge_polytope(&Graph::path(2)).unwrap();
        assert_eq!(seg, vec![Exponent(vec![-1]), Exponent(vec![1])]);
    }

    #[test]
    fn counts_match_closed_forms() {
        assert_eq!(kuramoto_count(&Graph::path(3), Seed(5)).unwrap(), 4);
        assert_eq!(kuramoto_count(&Graph::path(4), Seed(5)).unwrap(), 8);
        assert_eq!(kuramoto_count(&Graph::complete(3), Seed(5)).unwrap(), 6);
        assert_eq!(kuramoto_count(&Graph::cycle(4), Seed(5)).unwrap(), 12);
        assert_eq!(closed_form_count("tree", 4), Some(8));
        assert_eq!(closed_form_count("cycle", 4), Some(12));
        assert_eq!(closed_form_count("cycle", 5), Some(30));
        // Wheel on 4 nodes is the complete graph on 4 vertices; the odd-rim
        // closed form gives its count.
        assert_eq!(closed_form_count("wheel", 4), Some(20));
    }

    #[test]
    fn p3p_instance_has_bezout_eight_and_recovers_truth() {
        let inst = p3p_system(Seed(11)).unwrap();
        assert_eq!(bezout_number(&inst.system).unwrap(), 8);
        let out = total_degree_solve(&inst.system, &TrackerOptions::default(), Seed(12)).unwrap();
        assert_eq!(out.solutions.len(), 8);
        let z: Vec<Complex64> = inst
            .true_depths
            .iter()
            .map(|&d| Complex64::new(d, 0.0))
            .collect();
        let nearest = out
            .solutions
            .iter()
            .map(|s| crate::algebra::vec_dist(s, &z))
            .fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-8, "ground truth missing: {nearest}");
    }

    #[test]
    fn five_point_instance_is_consistent() {
        let inst = five_point_system(Seed(21)).unwrap();
        assert_eq!(inst.system.len(), 11);
        assert_eq!(inst.system.nvars(), 9);
        let z: Vec<Complex64> = inst
            .true_depths
            .iter()
            .map(|&d| Complex64::new(d, 0.0))
            .collect();
        assert!(inst.system.scaled_residual(&z) < 1e-9);
        // The family evaluated at the recorded parameters reproduces the
        // concrete system.
        let again = inst.family.at(&inst.image_parameters).unwrap();
        assert!(again.scaled_residual(&z) < 1e-9);
    }
}
