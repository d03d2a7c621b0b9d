//! Spectral analysis of the walk and signed Laplace operators.
//!
//! The operators built in [`crate::walk`] and [`crate::chemical`] are rarely
//! symmetric as matrices, but each is self-adjoint with respect to a
//! weighted inner product `<f, g>_w = sum_i w_i f_i g_i` (walk degrees for
//! the walks, `t` or `d` for the signed operators). [`eigen_decompose`]
//! exploits this: conjugating by `W^{1/2}` turns the operator into a
//! genuinely symmetric matrix, which goes to a symmetric eigensolver, and
//! the eigenvectors are mapped back (they come out `w`-orthonormal). When
//! no weights make the matrix symmetric — non-reversible walks — only the
//! complex eigenvalues are reported, and none of the certification below
//! applies to them.
//!
//! [`rayleigh_quotient`] evaluates the quadratic forms *structurally*
//! (difference sums over hyperedges, boundary-map norms) rather than
//! through the assembled matrices, so it can cross-check them;
//! [`weighted_quotient`] is the matrix route. [`verify_minmax`] samples
//! random functions to exercise the variational characterization of the
//! spectrum, and [`certify_rw`] / [`certify_chemical`] check the interval
//! theorems: walk spectra live in `[0, 2]` with `0` always attained (by
//! constants) and `2` attained exactly on bipartite effective graphs;
//! signed spectra live in `[0, psi]` and can only reach `psi` when every
//! hyperedge has cardinality `psi`. Bipartiteness is established by graph
//! two-coloring ([`crate::graph::is_bipartite`]), never from the spectrum
//! itself, so the certificate is a real cross-check and not a tautology.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chemical::{boundary_apply, ChemicalKind, ChemicalLaplacian};
use crate::error::{Error, Result};
use crate::graph::is_bipartite;
use crate::hypergraph::OrientedHypergraph;
use crate::ratio::to_f64;
use crate::walk::{RwLaplacian, WalkFactorization};

/// Absolute tolerance used by the certification and verification routines.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// How far from symmetric a conjugated matrix may be (relative to its
/// largest entry) before the decomposition falls back to the complex route.
const SYMMETRY_TOL: f64 = 1e-8;

/// The outcome of [`eigen_decompose`].
#[derive(Debug, Clone)]
pub enum Spectrum {
    /// Real spectrum of a (weighted-)self-adjoint operator. Eigenvalues
    /// ascend; `eigenvectors` holds the matching eigenvectors as columns,
    /// orthonormal in the weighted inner product and sign-normalized so the
    /// entry of largest magnitude is positive.
    Real {
        eigenvalues: Vec<f64>,
        eigenvectors: DMatrix<f64>,
    },
    /// Complex spectrum of a non-symmetrizable operator, sorted by real
    /// part then imaginary part. Reported as-is; no interval certification
    /// applies.
    Complex { eigenvalues: Vec<(f64, f64)> },
}

impl Spectrum {
    /// Whether the decomposition produced a certified real spectrum.
    pub fn is_real(&self) -> bool {
        matches!(self, Spectrum::Real { .. })
    }

    /// Eigenvalues and eigenvectors of a real spectrum.
    pub fn real(&self) -> Option<(&[f64], &DMatrix<f64>)> {
        match self {
            Spectrum::Real {
                eigenvalues,
                eigenvectors,
            } => Some((eigenvalues, eigenvectors)),
            Spectrum::Complex { .. } => None,
        }
    }

    /// All eigenvalues as `(re, im)` pairs regardless of the route taken.
    pub fn eigenvalue_pairs(&self) -> Vec<(f64, f64)> {
        match self {
            Spectrum::Real { eigenvalues, .. } => {
                eigenvalues.iter().map(|&x| (x, 0.0)).collect()
            }
            Spectrum::Complex { eigenvalues } => eigenvalues.clone(),
        }
    }
}

/// Decompose `m`, using `weights` (when given, all positive) to symmetrize
/// it first: the eigenproblem of `W^{1/2} M W^{-1/2}` is solved and the
/// eigenvectors are pulled back. Falls back to complex eigenvalues when the
/// (conjugated) matrix is not symmetric.
pub fn eigen_decompose(m: &DMatrix<f64>, weights: Option<&[f64]>) -> Result<Spectrum> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: m.ncols(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "matrix",
            message: "cannot decompose an empty matrix".into(),
        });
    }
    let sqrt_w: Option<Vec<f64>> = match weights {
        Some(w) => {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: w.len(),
                });
            }
            if let Some(&bad) = w.iter().find(|&&x| !(x.is_finite() && x > 0.0)) {
                return Err(Error::InvalidParameter {
                    name: "weights",
                    message: format!("weights must be positive and finite, got {bad}"),
                });
            }
            Some(w.iter().map(|&x| x.sqrt()).collect())
        }
        None => None,
    };
    let conj = match &sqrt_w {
        Some(s) => DMatrix::from_fn(n, n, |i, j| s[i] * m[(i, j)] / s[j]),
        None => m.clone(),
    };

    let scale = conj.iter().fold(1.0_f64, |acc, &x| acc.max(x.abs()));
    let asymmetry = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| (conj[(i, j)] - conj[(j, i)]).abs())
        .fold(0.0_f64, f64::max);
    if asymmetry > SYMMETRY_TOL * scale {
        let ev = m.complex_eigenvalues();
        let mut pairs: Vec<(f64, f64)> = ev.iter().map(|c: &Complex<f64>| (c.re, c.im)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        return Ok(Spectrum::Complex { eigenvalues: pairs });
    }

    // kill the roundoff-level asymmetry before handing over
    let sym = DMatrix::from_fn(n, n, |i, j| 0.5 * (conj[(i, j)] + conj[(j, i)]));
    let se = SymmetricEigen::try_new(sym, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver("symmetric eigensolver did not converge".into()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut eigenvectors = DMatrix::from_fn(n, n, |i, j| {
        let u = se.eigenvectors[(i, order[j])];
        match &sqrt_w {
            Some(s) => u / s[i],
            None => u,
        }
    });
    for j in 0..n {
        let mut lead = 0;
        for i in 1..n {
            if eigenvectors[(i, j)].abs() > eigenvectors[(lead, j)].abs() {
                lead = i;
            }
        }
        if eigenvectors[(lead, j)] < 0.0 {
            for i in 0..n {
                eigenvectors[(i, j)] = -eigenvectors[(i, j)];
            }
        }
    }
    Ok(Spectrum::Real {
        eigenvalues,
        eigenvectors,
    })
}

/// A quadratic form evaluated structurally, without assembling a matrix.
pub enum QuadraticForm<'a> {
    /// The Dirichlet form of a reversible walk:
    /// `sum_{i<j} A_ij (f_i - f_j)^2 / sum_i D_ii f_i^2`.
    RandomWalk(&'a WalkFactorization),
    /// The signed form `sum_e (boundary f)(e)^2 / sum_v w_v f_v^2` with the
    /// weights selected by `kind`.
    Chemical {
        hypergraph: &'a OrientedHypergraph,
        kind: ChemicalKind,
    },
}

/// Evaluate a Rayleigh quotient through its structural form. Agrees with
/// [`weighted_quotient`] of the assembled operator; the two routes
/// cross-check each other.
pub fn rayleigh_quotient(form: &QuadraticForm<'_>, f: &[f64]) -> Result<f64> {
    match form {
        QuadraticForm::RandomWalk(fac) => {
            if !fac.is_symmetric() {
                return Err(Error::NonSymmetricAffinity);
            }
            let n = fac.vertex_count();
            if f.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: f.len(),
                });
            }
            let a = fac.affinity();
            let mut num = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    let w = to_f64(a[(i, j)]);
                    if w != 0.0 {
                        let diff = f[i] - f[j];
                        num += w * diff * diff;
                    }
                }
            }
            let den: f64 = fac
                .degrees()
                .iter()
                .zip(f)
                .map(|(&d, &x)| to_f64(d) * x * x)
                .sum();
            if den == 0.0 {
                return Err(Error::ZeroFunction);
            }
            Ok(num / den)
        }
        QuadraticForm::Chemical { hypergraph, kind } => {
            let g = boundary_apply(hypergraph, f)?;
            let num: f64 = g.iter().map(|x| x * x).sum();
            let den: f64 = (0..hypergraph.vertex_count())
                .map(|v| {
                    let w = match kind {
                        ChemicalKind::Normalized => hypergraph.degree_t(v),
                        ChemicalKind::DegreeNormalized => hypergraph.degree_d(v),
                    } as f64;
                    w * f[v] * f[v]
                })
                .sum();
            if den == 0.0 {
                return Err(Error::ZeroFunction);
            }
            Ok(num / den)
        }
    }
}

/// The matrix route to a Rayleigh quotient: `<Mf, f>_w / <f, f>_w`.
pub fn weighted_quotient(m: &DMatrix<f64>, weights: &[f64], f: &[f64]) -> Result<f64> {
    let n = m.nrows();
    if m.ncols() != n || weights.len() != n || f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: weights.len().min(f.len()).min(m.ncols()),
        });
    }
    let fv = DVector::from_column_slice(f);
    let mf = m * &fv;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        num += weights[i] * f[i] * mf[i];
        den += weights[i] * f[i] * f[i];
    }
    if den == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(num / den)
}

/// Outcome of [`verify_minmax`].
#[derive(Debug, Clone, Serialize)]
pub struct MinMaxReport {
    /// Random functions drawn for the bounds check.
    pub samples: usize,
    /// How many Rayleigh quotients escaped `[lambda_min, lambda_max]`.
    pub bounds_violations: usize,
    /// Largest `|R(v_k) - lambda_k|` over the eigenvectors.
    pub eigenvector_max_deviation: f64,
    /// Quotients in the orthogonal complement of the bottom `k`
    /// eigenvectors that dropped below `lambda_k`.
    pub complement_violations: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// All checks clean.
    pub ok: bool,
}

/// Exercise the variational characterization of a weighted-self-adjoint
/// operator: every Rayleigh quotient lies within the spectral interval,
/// eigenvectors reproduce their eigenvalues, and quotients restricted to
/// the complement of the bottom `k` eigenvectors stay at or above the
/// `k`-th eigenvalue. Draws are seeded and deterministic.
pub fn verify_minmax(
    m: &DMatrix<f64>,
    weights: &[f64],
    samples: usize,
    seed: u64,
) -> Result<MinMaxReport> {
    let spectrum = eigen_decompose(m, Some(weights))?;
    let (vals, vecs) = spectrum.real().ok_or(Error::NonSymmetricAffinity)?;
    let n = vals.len();
    let lambda_min = vals[0];
    let lambda_max = vals[n - 1];
    let scale = 1.0_f64.max(lambda_max.abs());
    let tol = SPECTRAL_TOL * scale;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> DVector<f64> {
        DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
    };

    let quotient = |f: &DVector<f64>| -> Option<f64> {
        let mf = m * f;
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            num += weights[i] * f[i] * mf[i];
            den += weights[i] * f[i] * f[i];
        }
        (den > 1e-12).then(|| num / den)
    };

    let mut bounds_violations = 0;
    for _ in 0..samples {
        let f = draw(&mut rng);
        if let Some(q) = quotient(&f) {
            if q < lambda_min - tol || q > lambda_max + tol {
                bounds_violations += 1;
            }
        }
    }

    let mut eigenvector_max_deviation = 0.0_f64;
    for k in 0..n {
        let v = DVector::from_fn(n, |i, _| vecs[(i, k)]);
        if let Some(q) = quotient(&v) {
            eigenvector_max_deviation = eigenvector_max_deviation.max((q - vals[k]).abs());
        }
    }

    // eigenvectors are w-orthonormal, so projection is a dot-product sum
    let wdot = |a: &DVector<f64>, b: &DVector<f64>| -> f64 {
        (0..n).map(|i| weights[i] * a[i] * b[i]).sum()
    };
    let per_level = samples.div_euclid(n).max(1);
    let mut complement_violations = 0;
    for (k, &val) in vals.iter().enumerate().skip(1) {
        for _ in 0..per_level {
            let mut f = draw(&mut rng);
            for j in 0..k {
                let v = DVector::from_fn(n, |i, _| vecs[(i, j)]);
                let c = wdot(&f, &v);
                f -= v * c;
            }
            if let Some(q) = quotient(&f) {
                if q < val - tol {
                    complement_violations += 1;
                }
            }
        }
    }

    let ok = bounds_violations == 0
        && complement_violations == 0
        && eigenvector_max_deviation <= tol;
    Ok(MinMaxReport {
        samples,
        bounds_violations,
        eigenvector_max_deviation,
        complement_violations,
        lambda_min,
        lambda_max,
        ok,
    })
}

/// Family-specific part of a [`Certificate`].
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Extremal {
    /// Walk spectra: the top of the interval is reached exactly on
    /// bipartite effective graphs, with an eigenfunction of constant sign
    /// per class.
    RandomWalk {
        lambda_max_is_two: bool,
        /// Two-colorability of the effective graph, decided combinatorially.
        bipartite: bool,
        /// `lambda_max_is_two == bipartite`.
        matches: bool,
        /// When the top is reached: the top eigenvector alternates sign
        /// across the two-coloring classes.
        sign_pattern_ok: Option<bool>,
    },
    /// Signed spectra: the interval is `[0, psi]`, and its top can only be
    /// reached when every hyperedge has cardinality `psi`.
    Chemical {
        lambda_max_is_psi: bool,
        psi: usize,
        /// Whether all hyperedges share the maximum cardinality.
        uniform: bool,
        /// `lambda_max_is_psi` implies `uniform`.
        consistent: bool,
    },
}

/// Spectral-interval certificate produced by [`certify_rw`] and
/// [`certify_chemical`].
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    /// Closed interval the spectrum must inhabit.
    pub interval: (f64, f64),
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// All eigenvalues inside the interval (within tolerance).
    pub in_range: bool,
    /// Zero is an eigenvalue (within tolerance).
    pub zero_eigenvalue: bool,
    /// Whether the constant function is annihilated by the operator. Walks
    /// always annihilate constants; signed operators usually do not.
    pub constant_kernel: Option<bool>,
    /// The family-specific extremal checks.
    pub extremal: Extremal,
    /// Everything this family guarantees actually held.
    pub ok: bool,
}

/// Certify the spectral interval facts for a reversible walk Laplacian:
/// spectrum in `[0, 2]`, zero attained with constant eigenfunction, and top
/// attained exactly when the effective graph is bipartite (decided by
/// two-coloring, not spectrally).
pub fn certify_rw(l: &RwLaplacian) -> Result<Certificate> {
    let fac = l.factorization();
    if !fac.is_symmetric() {
        return Err(Error::NonSymmetricAffinity);
    }
    let spectrum = eigen_decompose(&l.to_f64(), Some(&fac.degrees_f64()))?;
    let (vals, vecs) = spectrum
        .real()
        .ok_or_else(|| Error::Eigensolver("expected a real spectrum".into()))?;
    let n = vals.len();
    let lambda_min = vals[0];
    let lambda_max = vals[n - 1];
    let in_range = lambda_min >= -SPECTRAL_TOL && lambda_max <= 2.0 + SPECTRAL_TOL;
    let zero_eigenvalue = lambda_min.abs() <= SPECTRAL_TOL;

    // the bottom eigenvector must be constant on a connected input
    let bottom: Vec<f64> = (0..n).map(|i| vecs[(i, 0)]).collect();
    let bmax = bottom.iter().fold(f64::MIN, |a, &b| a.max(b));
    let bmin = bottom.iter().fold(f64::MAX, |a, &b| a.min(b));
    let bscale = bottom.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    let constant_kernel = Some(bscale > 0.0 && (bmax - bmin) <= 1e-7 * bscale);

    let coloring = is_bipartite(&fac.effective_graph())?;
    let lambda_max_is_two = lambda_max >= 2.0 - SPECTRAL_TOL;
    let matches = lambda_max_is_two == coloring.bipartite;
    let sign_pattern_ok = match (&coloring.classes, lambda_max_is_two) {
        (Some((class_a, class_b)), true) => {
            let top: Vec<f64> = (0..n).map(|i| vecs[(i, n - 1)]).collect();
            let tscale = top.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
            let thr = 1e-6 * tscale;
            let sign_of = |i: usize| -> Option<bool> {
                (top[i].abs() > thr).then(|| top[i] > 0.0)
            };
            let ok = match sign_of(class_a[0]) {
                Some(s) => {
                    class_a.iter().all(|&i| sign_of(i) == Some(s))
                        && class_b.iter().all(|&i| sign_of(i) == Some(!s))
                }
                None => false,
            };
            Some(ok)
        }
        _ => None,
    };

    let ok = in_range
        && zero_eigenvalue
        && constant_kernel == Some(true)
        && matches
        && sign_pattern_ok.unwrap_or(true);
    Ok(Certificate {
        interval: (0.0, 2.0),
        lambda_min,
        lambda_max,
        in_range,
        zero_eigenvalue,
        constant_kernel,
        extremal: Extremal::RandomWalk {
            lambda_max_is_two,
            bipartite: coloring.bipartite,
            matches,
            sign_pattern_ok,
        },
        ok,
    })
}

/// Certify the interval facts for a signed Laplace operator: spectrum in
/// `[0, psi]`, with the top reachable only for `psi`-uniform hypergraphs.
/// Zero need not be an eigenvalue here and constants need not be harmonic;
/// both are reported as observations.
pub fn certify_chemical(c: &ChemicalLaplacian) -> Result<Certificate> {
    let spectrum = eigen_decompose(&c.to_f64(), Some(&c.weights_f64()))?;
    let (vals, _) = spectrum
        .real()
        .ok_or_else(|| Error::Eigensolver("expected a real spectrum".into()))?;
    let n = vals.len();
    let (psi, uniform) = c.cardinality_bound();
    let lambda_min = vals[0];
    let lambda_max = vals[n - 1];
    let in_range = lambda_min >= -SPECTRAL_TOL && lambda_max <= psi as f64 + SPECTRAL_TOL;
    let zero_eigenvalue = lambda_min.abs() <= SPECTRAL_TOL;

    let m = c.to_f64();
    let residual = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)]).sum::<f64>().abs())
        .fold(0.0_f64, f64::max);
    let constant_kernel = Some(residual <= SPECTRAL_TOL);

    let lambda_max_is_psi = lambda_max >= psi as f64 - SPECTRAL_TOL;
    let consistent = !lambda_max_is_psi || uniform;
    let ok = in_range && consistent;
    Ok(Certificate {
        interval: (0.0, psi as f64),
        lambda_min,
        lambda_max,
        in_range,
        zero_eigenvalue,
        constant_kernel,
        extremal: Extremal::Chemical {
            lambda_max_is_psi,
            psi,
            uniform,
            consistent,
        },
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chemical::chemical;
    use crate::hypergraph::{parse, parse_oriented};
    use crate::walk::{factorize, WalkVariant};
    use approx::assert_abs_diff_eq;

    const RUNNING: &str = "\
hypergraph undirected
vertices v1 v2 v3 v4
edge e1 v1 v2 v4
edge e2 v1 v2
edge e3 v1 v3
";

    const REACTION: &str = "\
hypergraph oriented
vertices v1 v2 v3 v4
edge e1 in:v1,v4 out:v2
edge e2 in:v2 out:v1
edge e3 in:v1 out:v3
";

    fn cycle_text(n: usize) -> String {
        let mut s = String::from("hypergraph undirected\n");
        for i in 0..n {
            s.push_str(&format!("edge e{} v{} v{}\n", i, i, (i + 1) % n));
        }
        s
    }

    fn rw_eigs(text: &str, variant: WalkVariant) -> Vec<f64> {
        let h = parse(text).unwrap();
        let f = factorize(&h, variant).unwrap();
        let spec = eigen_decompose(&f.assemble().to_f64(), Some(&f.degrees_f64())).unwrap();
        spec.real().unwrap().0.to_vec()
    }

    #[test]
    fn running_example_walk_spectra() {
        let cases: [(WalkVariant, [f64; 4]); 3] = [
            (
                WalkVariant::TwoStep,
                [0.0, 0.8428633237007, 1.314789307068, 1.842347369231],
            ),
            (
                WalkVariant::Simple,
                [0.0, 0.8561164474287, 1.378211638752, 1.765671913820],
            ),
            (
                WalkVariant::EdgeSizeBiased,
                [0.0, 0.8863328900983, 1.427181638353, 1.686485471548],
            ),
        ];
        for (variant, expected) in cases {
            let got = rw_eigs(RUNNING, variant);
            for (g, e) in got.iter().zip(expected) {
                assert_abs_diff_eq!(g, &e, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn cycle_spectra() {
        let got = rw_eigs(&cycle_text(5), WalkVariant::TwoStep);
        let expected = [
            0.0,
            0.6909830056250525,
            0.6909830056250525,
            1.8090169943749475,
            1.8090169943749475,
        ];
        for (g, e) in got.iter().zip(expected) {
            assert_abs_diff_eq!(g, &e, epsilon = 1e-9);
        }

        let got = rw_eigs(&cycle_text(4), WalkVariant::TwoStep);
        for (g, e) in got.iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert_abs_diff_eq!(g, &e, epsilon = 1e-9);
        }
    }

    #[test]
    fn bipartite_certificate_on_even_cycle() {
        let h = parse(&cycle_text(4)).unwrap();
        let l = factorize(&h, WalkVariant::TwoStep).unwrap().assemble();
        let cert = certify_rw(&l).unwrap();
        assert!(cert.in_range);
        assert!(cert.zero_eigenvalue);
        assert_eq!(cert.constant_kernel, Some(true));
        match cert.extremal {
            Extremal::RandomWalk {
                lambda_max_is_two,
                bipartite,
                matches,
                sign_pattern_ok,
            } => {
                assert!(lambda_max_is_two);
                assert!(bipartite);
                assert!(matches);
                assert_eq!(sign_pattern_ok, Some(true));
            }
            _ => panic!("wrong family"),
        }
        assert!(cert.ok);
    }

    #[test]
    fn non_bipartite_certificate_on_odd_cycle() {
        let h = parse(&cycle_text(5)).unwrap();
        let l = factorize(&h, WalkVariant::TwoStep).unwrap().assemble();
        let cert = certify_rw(&l).unwrap();
        match cert.extremal {
            Extremal::RandomWalk {
                lambda_max_is_two,
                bipartite,
                matches,
                sign_pattern_ok,
            } => {
                assert!(!lambda_max_is_two);
                assert!(!bipartite);
                assert!(matches);
                assert_eq!(sign_pattern_ok, None);
            }
            _ => panic!("wrong family"),
        }
        assert!(cert.ok);
    }

    #[test]
    fn running_example_certificate() {
        // contains a triangle via e1, so not bipartite, and lambda_max < 2
        let h = parse(RUNNING).unwrap();
        let l = factorize(&h, WalkVariant::TwoStep).unwrap().assemble();
        let cert = certify_rw(&l).unwrap();
        assert!(cert.ok);
        assert_abs_diff_eq!(cert.lambda_max, 1.842347369231, epsilon = 1e-9);
    }

    #[test]
    fn chemical_certificates() {
        let single = parse_oriented("hypergraph oriented\nedge e in:v1,v2 out:v3\n").unwrap();
        let l = chemical(&single, ChemicalKind::Normalized).unwrap();
        let spec = eigen_decompose(&l.to_f64(), Some(&l.weights_f64())).unwrap();
        let vals = spec.real().unwrap().0.to_vec();
        for (g, e) in vals.iter().zip([0.0, 0.0, 3.0]) {
            assert_abs_diff_eq!(g, &e, epsilon = 1e-9);
        }
        let cert = certify_chemical(&l).unwrap();
        assert!(cert.in_range);
        assert!(cert.zero_eigenvalue);
        assert_eq!(cert.constant_kernel, Some(false));
        match cert.extremal {
            Extremal::Chemical {
                lambda_max_is_psi,
                psi,
                uniform,
                consistent,
            } => {
                assert!(lambda_max_is_psi);
                assert_eq!(psi, 3);
                assert!(uniform);
                assert!(consistent);
            }
            _ => panic!("wrong family"),
        }
        assert!(cert.ok);

        let h = parse_oriented(REACTION).unwrap();
        let l = chemical(&h, ChemicalKind::Normalized).unwrap();
        let spec = eigen_decompose(&l.to_f64(), Some(&l.weights_f64())).unwrap();
        let vals = spec.real().unwrap().0.to_vec();
        let expected = [
            0.0,
            0.34360644880434354,
            1.1709318463667977,
            2.4854617048288583,
        ];
        for (g, e) in vals.iter().zip(expected) {
            assert_abs_diff_eq!(g, &e, epsilon = 1e-9);
        }
        let cert = certify_chemical(&l).unwrap();
        match cert.extremal {
            Extremal::Chemical {
                lambda_max_is_psi,
                psi,
                uniform,
                consistent,
            } => {
                assert!(!lambda_max_is_psi);
                assert_eq!(psi, 3);
                assert!(!uniform);
                assert!(consistent);
            }
            _ => panic!("wrong family"),
        }
        assert!(cert.ok);
    }

    #[test]
    fn structural_and_matrix_quotients_agree() {
        let h = parse(RUNNING).unwrap();
        let fac = factorize(&h, WalkVariant::TwoStep).unwrap();
        let f = [1.0, -1.0, 2.0, 0.5];
        let structural = rayleigh_quotient(&QuadraticForm::RandomWalk(&fac), &f).unwrap();
        let matrix = weighted_quotient(
            &fac.assemble().to_f64(),
            &fac.degrees_f64(),
            &f,
        )
        .unwrap();
        assert_abs_diff_eq!(structural, matrix, epsilon = 1e-12);

        let oh = parse_oriented(REACTION).unwrap();
        for kind in [ChemicalKind::Normalized, ChemicalKind::DegreeNormalized] {
            let c = chemical(&oh, kind).unwrap();
            let structural = rayleigh_quotient(
                &QuadraticForm::Chemical {
                    hypergraph: &oh,
                    kind,
                },
                &f,
            )
            .unwrap();
            let matrix = weighted_quotient(&c.to_f64(), &c.weights_f64(), &f).unwrap();
            assert_abs_diff_eq!(structural, matrix, epsilon = 1e-12);
        }
    }

    #[test]
    fn minmax_verification_passes() {
        let h = parse(RUNNING).unwrap();
        let fac = factorize(&h, WalkVariant::TwoStep).unwrap();
        let report = verify_minmax(
            &fac.assemble().to_f64(),
            &fac.degrees_f64(),
            200,
            7,
        )
        .unwrap();
        assert!(report.ok, "{report:?}");
        assert_eq!(report.bounds_violations, 0);
        assert_eq!(report.complement_violations, 0);
        assert!(report.eigenvector_max_deviation <= 1e-9);
    }

    #[test]
    fn non_reversible_walk_goes_complex() {
        let text = "\
hypergraph oriented
edge e1 in:v1 out:v2,v3
edge e2 in:v2 out:v1
edge e3 in:v3 out:v1
";
        let h = parse(text).unwrap();
        let fac = factorize(&h, WalkVariant::OrientedWalk).unwrap();
        let spec = eigen_decompose(&fac.assemble().to_f64(), Some(&fac.degrees_f64())).unwrap();
        assert!(!spec.is_real());
        // this small example happens to have a real spectrum {0, 1, 2}
        let pairs = spec.eigenvalue_pairs();
        for ((re, im), expected) in pairs.iter().zip([0.0, 1.0, 2.0]) {
            assert_abs_diff_eq!(re, &expected, epsilon = 1e-9);
            assert_abs_diff_eq!(im, &0.0, epsilon = 1e-9);
        }
        // and certification refuses outright
        assert!(matches!(
            certify_rw(&fac.assemble()),
            Err(Error::NonSymmetricAffinity)
        ));
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let h = parse(RUNNING).unwrap();
        let fac = factorize(&h, WalkVariant::TwoStep).unwrap();
        assert!(matches!(
            rayleigh_quotient(&QuadraticForm::RandomWalk(&fac), &[0.0; 4]),
            Err(Error::ZeroFunction)
        ));
        assert!(matches!(
            rayleigh_quotient(&QuadraticForm::RandomWalk(&fac), &[1.0; 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            eigen_decompose(&fac.assemble().to_f64(), Some(&[1.0, 2.0, 3.0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            eigen_decompose(&fac.assemble().to_f64(), Some(&[1.0, 2.0, 3.0, -1.0])),
            Err(Error::InvalidParameter { .. })
        ));
    }
}
