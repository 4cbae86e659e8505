//! Numerical monodromy of the hypergeometric equation in the `zeta = lambda^k` plane and
//! in the `lambda` plane.
//!
//! A fundamental matrix `Y = (v, theta v, ..., theta^{k-1} v)` starting at the identity is
//! continued along a loop; the value at the end is the monodromy in the frame of the base
//! point. Continuing along `g0` and then `g1` gives `M(g1) M(g0)`.

mod cmatrix;
mod ode;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{scalar_to_f64, Matrix, Scalar};
use crate::levelt::{binomial_charpoly, check_rank, cp_h1_charpoly};

pub use cmatrix::NumericMatrix;
pub use num_complex::Complex64;
pub use ode::{dopri5, Integration};

const PI: f64 = core::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Plane {
    Zeta,
    Lambda,
}

impl Plane {
    pub fn name(self) -> &'static str {
        match self {
            Plane::Zeta => "zeta",
            Plane::Lambda => "lambda",
        }
    }
}

/// `x dY/dx = A(x) Y` with `A` the companion matrix of the order-`k` operator in `theta = x d/dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionSystem {
    pub k: usize,
    pub plane: Plane,
    /// Lower coefficients `e_0..e_{k-1}` of the theta polynomial, so that the last row of
    /// `A(x)` is `e_j / (x^d - 1)` with `d = 1` (zeta) or `d = k` (lambda).
    pub lower: Vec<f64>,
    /// Finite singular points; infinity is always singular.
    pub singular_points: Vec<Complex64>,
}

/// Coefficients of `prod_l (theta - r_l)` in ascending order, monic term dropped.
fn lower_coefficients(roots: &[f64]) -> Vec<f64> {
    let mut p = vec![1.0];
    for r in roots {
        let mut next = vec![0.0; p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        p = next;
    }
    p.pop();
    p
}

pub fn companion_system(k: usize, plane: Plane) -> Result<CompanionSystem> {
    check_rank(k)?;
    let (roots, singular_points): (Vec<f64>, Vec<Complex64>) = match plane {
        Plane::Zeta => (
            (1..=k).map(|l| l as f64 / k as f64).collect(),
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ),
        Plane::Lambda => {
            let mut pts = vec![Complex64::new(0.0, 0.0)];
            pts.extend((0..k).map(|i| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / k as f64)));
            ((1..=k).map(|l| l as f64).collect(), pts)
        }
    };
    Ok(CompanionSystem {
        k,
        plane,
        lower: lower_coefficients(&roots),
        singular_points,
    })
}

impl CompanionSystem {
    /// `B(x)` with `dY/dx = B(x) Y`, row-major. Infinite entries at singular points.
    pub fn coefficient_matrix(&self, x: Complex64) -> Vec<Complex64> {
        let mut b = vec![Complex64::zero(); self.k * self.k];
        self.fill_coefficients(x, &mut b);
        b
    }

    fn fill_coefficients(&self, x: Complex64, b: &mut [Complex64]) {
        let k = self.k;
        let inv_x = Complex64::new(1.0, 0.0) / x;
        let denom = match self.plane {
            Plane::Zeta => x - 1.0,
            Plane::Lambda => x.powu(k as u32) - 1.0,
        };
        let last = inv_x / denom;
        for v in b.iter_mut() {
            *v = Complex64::zero();
        }
        for j in 0..k - 1 {
            b[j * k + j + 1] = inv_x;
        }
        for (j, e) in self.lower.iter().enumerate() {
            b[(k - 1) * k + j] = last * e;
        }
    }

    fn is_singular(&self, x: Complex64) -> bool {
        self.singular_points.iter().any(|p| (p - x).norm() == 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Center {
    Point(Complex64),
    /// A circle about the origin traversed clockwise.
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopSpec {
    pub base_point: Complex64,
    pub center: Center,
    pub radius: f64,
    /// Lower bound on the number of integration steps per path piece.
    pub samples: usize,
    /// Waypoints between the base point and the circle.
    pub via: Vec<Complex64>,
}

impl LoopSpec {
    pub fn around(base_point: Complex64, center: Complex64, radius: f64) -> Self {
        LoopSpec {
            base_point,
            center: Center::Point(center),
            radius,
            samples: 16,
            via: Vec::new(),
        }
    }

    pub fn around_infinity(base_point: Complex64, radius: f64) -> Self {
        LoopSpec {
            base_point,
            center: Center::Infinity,
            radius,
            samples: 16,
            via: Vec::new(),
        }
    }

    pub fn via(mut self, w: Complex64) -> Self {
        self.via.push(w);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Piece {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    /// `c + r exp(i (a + s t))`, `t` in `[0, 1]`.
    Arc {
        c: Complex64,
        r: f64,
        a: f64,
        s: f64,
    },
}

impl Piece {
    fn point(&self, t: f64) -> (Complex64, Complex64) {
        match *self {
            Piece::Segment { from, to } => (from + (to - from) * t, to - from),
            Piece::Arc { c, r, a, s } => {
                let e = Complex64::from_polar(r, a + s * t);
                (c + e, Complex64::new(0.0, s) * e)
            }
        }
    }

    fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { from, to } => Piece::Segment { from: to, to: from },
            Piece::Arc { c, r, a, s } => Piece::Arc {
                c,
                r,
                a: a + s,
                s: -s,
            },
        }
    }
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

/// Checks the loop against the singular set and returns its path pieces.
fn loop_pieces(sys: &CompanionSystem, lp: &LoopSpec) -> Result<Vec<Piece>> {
    let bad = |msg: &str| Err(Error::InvalidLoop(msg.into()));
    if !(lp.radius.is_finite() && lp.radius > 0.0) {
        return bad("radius must be positive");
    }
    if lp.samples == 0 {
        return bad("samples must be positive");
    }
    let margin = lp.radius / 10.0;
    let (c, sign) = match lp.center {
        Center::Point(c) => (c, 1.0),
        Center::Infinity => (Complex64::zero(), -1.0),
    };
    for p in &sys.singular_points {
        let d = (p - c).norm();
        let enclosed = match lp.center {
            Center::Point(_) => d == 0.0,
            Center::Infinity => true,
        };
        if (d - lp.radius).abs() < margin {
            return bad(&format!(
                "circle passes within radius/10 of singular point {p}"
            ));
        }
        if enclosed != (d < lp.radius) {
            let what = if enclosed { "excludes" } else { "encloses" };
            return bad(&format!("circle {what} singular point {p}"));
        }
    }
    let toward = lp.via.last().copied().unwrap_or(lp.base_point);
    let dir = toward - c;
    if dir.norm() == 0.0 {
        return bad("waypoint coincides with the center");
    }
    let entry = c + dir / dir.norm() * lp.radius;
    let mut approach = Vec::new();
    let mut from = lp.base_point;
    for &to in lp.via.iter().chain([&entry]) {
        approach.push(Piece::Segment { from, to });
        from = to;
    }
    for piece in &approach {
        if let Piece::Segment { from, to } = piece {
            for p in &sys.singular_points {
                if segment_distance(*p, *from, *to) < margin {
                    return bad(&format!(
                        "path passes within radius/10 of singular point {p}"
                    ));
                }
            }
        }
    }
    if sys.is_singular(lp.base_point) {
        return bad("base point is singular");
    }
    let mut pieces = approach.clone();
    pieces.push(Piece::Arc {
        c,
        r: lp.radius,
        a: dir.arg(),
        s: sign * 2.0 * PI,
    });
    pieces.extend(approach.iter().rev().map(Piece::reversed));
    Ok(pieces)
}

/// Continues the identity fundamental matrix around the loop at local tolerance `tol`.
pub fn loop_monodromy(sys: &CompanionSystem, lp: &LoopSpec, tol: f64) -> Result<NumericMatrix> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidLoop(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let k = sys.k;
    let pieces = loop_pieces(sys, lp)?;
    let mut y = NumericMatrix::identity(k).entries;
    let mut error = 0.0;
    let mut b = vec![Complex64::zero(); k * k];
    for (n, piece) in pieces.iter().enumerate() {
        let rhs = |t: f64, y: &[Complex64], out: &mut [Complex64]| {
            let (x, dx) = piece.point(t);
            sys.fill_coefficients(x, &mut b);
            for i in 0..k {
                for j in 0..k {
                    let mut acc = Complex64::zero();
                    for l in 0..k {
                        acc += b[i * k + l] * y[l * k + j];
                    }
                    out[i * k + j] = acc * dx;
                }
            }
        };
        let run = dopri5(rhs, 0.0, 1.0, &y, tol, 1.0 / lp.samples as f64).map_err(|e| match e {
            Error::StepFailure { t } => Error::StepFailure { t: n as f64 + t },
            other => other,
        })?;
        y = run.y;
        error += run.error;
    }
    Ok(NumericMatrix {
        k,
        entries: y,
        estimated_error: error,
    })
}

/// Base point `-1`, circle of radius `1/2` about `0`.
pub fn zeta_loop_zero() -> LoopSpec {
    LoopSpec::around(Complex64::new(-1.0, 0.0), Complex64::zero(), 0.5)
}

/// Base point `-1`, circle of radius `1/2` about `1`, approached through the upper half plane.
pub fn zeta_loop_one() -> LoopSpec {
    LoopSpec::around(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), 0.5)
        .via(Complex64::new(0.5, 0.5))
}

/// Base point `-1`, clockwise circle of radius `2` about the origin.
pub fn zeta_loop_infinity() -> LoopSpec {
    LoopSpec::around_infinity(Complex64::new(-1.0, 0.0), 2.0)
}

/// A loop based at `-1` that encloses no singular point.
pub fn zeta_loop_trivial() -> LoopSpec {
    LoopSpec::around(Complex64::new(-1.0, 0.0), Complex64::new(-1.0, 1.0), 0.5)
}

/// Base point `exp(i pi / k) / 2`; a circle about `0` and one about each `omega^i`, reached
/// counterclockwise along `|lambda| = 1/2`.
pub fn lambda_loops(k: usize) -> Vec<LoopSpec> {
    let step = PI / k as f64;
    let base = Complex64::from_polar(0.5, step);
    let spacing = 2.0 * libm::sin(step);
    let mut out = vec![LoopSpec::around(base, Complex64::zero(), 0.25)];
    for i in 0..k {
        let w = Complex64::from_polar(1.0, 2.0 * step * i as f64);
        let mut lp = LoopSpec::around(base, w, 0.25 * spacing.min(1.0));
        lp.via = (1..=2 * i)
            .map(|j| Complex64::from_polar(0.5, step * (1 + j) as f64))
            .collect();
        out.push(lp);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub trace_deviation: f64,
    pub det_deviation: f64,
    pub charpoly_deviation: f64,
    pub max_deviation: f64,
    pub pass: bool,
}

fn charpoly_deviation(num: &NumericMatrix, exact: &[f64]) -> f64 {
    num.charpoly()
        .iter()
        .zip(exact)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Compares the conjugation invariants of a numerical monodromy with an exact matrix.
pub fn compare_invariants(num: &NumericMatrix, exact: &Matrix, tol: f64) -> Result<Comparison> {
    if !exact.is_square() || exact.rows() != num.k {
        return Err(Error::DimensionMismatch {
            op: "invariant comparison",
            left_rows: num.k,
            left_cols: num.k,
            right_rows: exact.rows(),
            right_cols: exact.cols(),
        });
    }
    let cp: Vec<f64> = exact.charpoly()?.iter().map(scalar_to_f64).collect();
    let trace_deviation = (num.trace() - scalar_to_f64(&exact.trace()?)).norm();
    let det_deviation = (num.det() - scalar_to_f64(&exact.det()?)).norm();
    let charpoly_deviation = charpoly_deviation(num, &cp);
    let max_deviation = trace_deviation.max(det_deviation).max(charpoly_deviation);
    Ok(Comparison {
        trace_deviation,
        det_deviation,
        charpoly_deviation,
        max_deviation,
        pass: max_deviation < tol,
    })
}

/// Max deviation of the characteristic polynomial from exact coefficients `[1, c1, ..., ck]`.
pub fn charpoly_deviation_from(num: &NumericMatrix, coeffs: &[Scalar]) -> f64 {
    let cp: Vec<f64> = coeffs.iter().map(scalar_to_f64).collect();
    charpoly_deviation(num, &cp)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaMonodromy {
    pub k: usize,
    pub tol: f64,
    pub around_zero: NumericMatrix,
    pub around_one: NumericMatrix,
    pub around_infinity: NumericMatrix,
    /// `M(inf) M(1) M(0)`.
    pub product: NumericMatrix,
    pub product_deviation: f64,
}

/// Monodromies of the three standard zeta-plane loops and their Riemann–Fuchs product.
pub fn zeta_monodromy(k: usize, tol: f64) -> Result<ZetaMonodromy> {
    let sys = companion_system(k, Plane::Zeta)?;
    let around_zero = loop_monodromy(&sys, &zeta_loop_zero(), tol)?;
    let around_one = loop_monodromy(&sys, &zeta_loop_one(), tol)?;
    let around_infinity = loop_monodromy(&sys, &zeta_loop_infinity(), tol)?;
    let product = around_infinity.mul(&around_one).mul(&around_zero);
    let product_deviation = product.max_abs_diff(&NumericMatrix::identity(k));
    Ok(ZetaMonodromy {
        k,
        tol,
        around_zero,
        around_one,
        around_infinity,
        product,
        product_deviation,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderPoint {
    pub tol: f64,
    /// Charpoly deviation of the loop about `0` from `t^k - 1`.
    pub zero_deviation: f64,
    /// Charpoly deviation of the loop about `1` from the charpoly of `h1`.
    pub one_deviation: f64,
}

impl LadderPoint {
    pub fn deviation(&self) -> f64 {
        self.zero_deviation.max(self.one_deviation)
    }
}

/// Runs the loops about `0` and `1` at each tolerance.
pub fn tolerance_ladder(k: usize, tols: &[f64]) -> Result<Vec<LadderPoint>> {
    let sys = companion_system(k, Plane::Zeta)?;
    let zero_cp = binomial_charpoly(k, -1);
    let one_cp = cp_h1_charpoly(k);
    tols.iter()
        .map(|&tol| {
            let m0 = loop_monodromy(&sys, &zeta_loop_zero(), tol)?;
            let m1 = loop_monodromy(&sys, &zeta_loop_one(), tol)?;
            Ok(LadderPoint {
                tol,
                zero_deviation: charpoly_deviation_from(&m0, &zero_cp),
                one_deviation: charpoly_deviation_from(&m1, &one_cp),
            })
        })
        .collect()
}

/// Deviations non-increasing along the ladder.
pub fn is_monotone(ladder: &[LadderPoint]) -> bool {
    ladder
        .windows(2)
        .all(|w| w[1].deviation() <= w[0].deviation())
}

/// Singular values of `id - M`, decreasing.
pub fn defect_singular_values(m: &NumericMatrix) -> Vec<f64> {
    NumericMatrix::identity(m.k).sub(m).singular_values()
}

/// Number of singular values of `id - M` above `threshold`.
pub fn numeric_rank_of_defect(m: &NumericMatrix, threshold: f64) -> usize {
    defect_singular_values(m)
        .iter()
        .filter(|s| **s > threshold)
        .count()
}
