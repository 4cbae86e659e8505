//! Acceptance suite: one line per criterion, tolerances pinned below.
//!
//! Run with `cargo test -p cpstokes --test acceptance -- --nocapture` to see the table.
//! AC4 cannot hold as stated; it is reported as FAIL here and asserted literally in the
//! ignored test `ac4_literal` (`-- --ignored` shows it red).

use std::time::{Duration, Instant};

use cpstokes_core::exact::{int, Matrix, Scalar};
use cpstokes_core::group::{cp_generators, is_pseudo_reflection, verify_riemann_fuchs, Variant};
use cpstokes_core::invariant::{group_invariant, invariant_of_h0_hinf};
use cpstokes_core::levelt::cp_levelt;
use cpstokes_core::mellin::{cayley_l, mellin_exponents, AffineForm};
use cpstokes_core::mutation::verify_chi_stokes;
use cpstokes_core::numeric::{
    charpoly_deviation_from, is_monotone, tolerance_ladder, zeta_monodromy,
};
use cpstokes_core::series::{apply_hg_operator, evaluate_i0, series_coefficients};
use cpstokes_core::stokes::{stokes_matrix, Parity, StokesCheck, StokesData};
use num_bigint::BigInt;

const AC1_BUDGET: Duration = Duration::from_secs(5);
const AC9_BUDGET: Duration = Duration::from_secs(60);
const AC9_TOL: f64 = 1e-10;
const AC9_DEVIATION: f64 = 1e-6;
const AC9_LADDER: [f64; 3] = [1e-6, 1e-8, 1e-10];
const SERIES_ORDER: usize = 50;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, extra: String) -> Outcome {
    let pass = failures.is_empty();
    let detail = if pass {
        extra
    } else {
        format!("{extra}; failing: {}", failures.join(", "))
    };
    Outcome { pass, detail }
}

fn binomial(n: i64, r: i64) -> i64 {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * i)
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=10usize {
        let s = stokes_matrix(k).unwrap().s;
        let want = Matrix::from_fn(k, k, |i, j| {
            if i < j {
                int(0)
            } else {
                let d = (i - j) as i64;
                int(if d % 2 == 0 { 1 } else { -1 } * binomial(k as i64, d))
            }
        });
        if s != want {
            failures.push(format!("k={k}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= AC1_BUDGET {
        failures.push(format!("runtime {elapsed:.2?}"));
    }
    outcome(failures, format!("k=2..10 in {elapsed:.2?}"))
}

fn ac2() -> Outcome {
    let mut failures = Vec::new();
    for k in 2..=10 {
        for variant in [Variant::Literal, Variant::Twisted] {
            let full = group_invariant(k, variant).unwrap();
            let pair = invariant_of_h0_hinf(k, variant).unwrap();
            if full.dimension() != 1 || !full.same_span(&pair) {
                failures.push(format!("k={k} {}", variant.name()));
            }
        }
    }
    outcome(
        failures,
        "dim 1 and H0 = H for k=2..10, both presentations".into(),
    )
}

fn ac3() -> Outcome {
    let mut failures = Vec::new();
    for k in 2..=10usize {
        let t = cp_levelt(k).unwrap();
        let id = Matrix::identity(k);
        let mut minus_one = vec![int(0); k + 1];
        minus_one[0] = int(1);
        minus_one[k] = int(-1);
        let unipotent: Vec<Scalar> = (0..=k)
            .map(|i| int(if i % 2 == 0 { 1 } else { -1 } * binomial(k as i64, i as i64)))
            .collect();
        let g = cp_generators(k).unwrap();
        let checks = [
            ("h0^k", t.h0.pow(k as i64).unwrap() == id),
            ("charpoly h0", t.h0.charpoly().unwrap() == minus_one),
            ("charpoly h_inf", t.hinf.charpoly().unwrap() == unipotent),
            ("rank(id - h1)", (&id - &t.h1).rank() == 1),
            (
                "pseudo-reflection",
                is_pseudo_reflection(&t.h1).unwrap().is_pseudo_reflection,
            ),
            (
                "riemann-fuchs",
                verify_riemann_fuchs(&g).unwrap().is_identity,
            ),
        ];
        failures.extend(
            checks
                .iter()
                .filter(|c| !c.1)
                .map(|c| format!("k={k} {}", c.0)),
        );
    }
    outcome(failures, "literal presentation, k=2..10".into())
}

fn kernel_alternating(d: &StokesData) -> bool {
    d.check(StokesCheck::SymmetrizedSingular) == Some(true)
        && d.check(StokesCheck::KernelAlternating) == Some(true)
}

/// Per rank: whether the literal statement holds.
fn ac4_by_rank() -> Vec<(usize, bool)> {
    (2..=10usize)
        .map(|k| {
            let r = stokes_matrix(k).unwrap();
            let ok = match Parity::of(k) {
                Parity::Odd => {
                    let g = &r.gram.g;
                    (0..k).all(|i| *g.get(i, i) == int(2))
                        && &r.s.transpose() + &r.s == g.scale(&int(2))
                }
                Parity::Even => {
                    kernel_alternating(&r.data) || r.r_one.as_ref().is_some_and(kernel_alternating)
                }
            };
            (k, ok)
        })
        .collect()
}

fn ac4() -> Outcome {
    let failures = ac4_by_rank()
        .into_iter()
        .filter(|r| !r.1)
        .map(|(k, _)| format!("k={k}"))
        .collect();
    outcome(
        failures,
        "S^T + S = 2G (odd), det = 0 with kernel (1,-1,...) (even)".into(),
    )
}

fn ac5() -> Outcome {
    let mut failures = Vec::new();
    for k in 2..=8usize {
        let r = stokes_matrix(k).unwrap();
        let g = &r.gram.g;
        let id = Matrix::identity(k);
        let v = Matrix::from_fn(
            k,
            k,
            |i, j| if i <= j { g.get(i, j).clone() } else { int(0) },
        );
        let u = Matrix::from_fn(
            k,
            k,
            |i, j| if i > j { g.get(i, j).clone() } else { int(0) },
        );
        let product = r
            .data
            .reflections
            .reflections
            .iter()
            .fold(id.clone(), |acc, rj| rj * &acc);
        let uv = &(&id - &v) * &(&id + &u).inverse().unwrap();
        let seifert = &r.s.transpose() * &r.s.inverse().unwrap();
        let seifert = if k % 2 == 1 { -&seifert } else { seifert };
        if product != uv {
            failures.push(format!("k={k} (id-V)(id+U)^-1"));
        }
        if product != seifert || r.coxeter != product {
            failures.push(format!("k={k} seifert"));
        }
    }
    outcome(failures, "k=2..8".into())
}

fn ac6() -> Outcome {
    let mut failures = Vec::new();
    for k in 2..=10usize {
        let s = stokes_matrix(k).unwrap();
        let rep = verify_chi_stokes(k, &s).unwrap();
        if !(&rep.chi * &s.s).is_identity() {
            failures.push(format!("k={k} chi S"));
        }
        if k <= 8 && !rep.frozen_holds {
            failures.push(format!("k={k} braid"));
        }
    }
    outcome(
        failures,
        "chi S = id k=2..10, braid identity k=2..8 (standard rule, left)".into(),
    )
}

fn ac7() -> Outcome {
    let mut failures = Vec::new();
    for k in 2..=6usize {
        let sc = series_coefficients(k, SERIES_ORDER).unwrap();
        for (m, c) in sc.coeffs.iter().enumerate() {
            if *c != factorial(k * m) / factorial(m).pow(k as u32) {
                failures.push(format!("k={k} m={m}"));
            }
        }
        let res = apply_hg_operator(&sc);
        if !res.is_zero() {
            failures.push(format!("k={k} residual at {:?}", res.first_nonzero()));
        }
    }
    outcome(failures, format!("m <= {SERIES_ORDER}, k=2..6"))
}

/// `z + i_l + 1 - v_2` for each `l`, then `-sum(i_l + 1) + v_1 + k(v_2 - z)`, `v_2 - z`, `z`.
fn expected_forms(k: usize) -> Vec<AffineForm> {
    let form = |constant: i64, i: Vec<i64>, z: i64, v1: i64, v2: i64| AffineForm {
        constant: int(constant),
        i: i.into_iter().map(int).collect(),
        z: int(z),
        v1: int(v1),
        v2: int(v2),
    };
    let kk = k as i64;
    let mut out: Vec<AffineForm> = (0..k)
        .map(|l| form(1, (0..k).map(|j| i64::from(j == l)).collect(), 1, 0, -1))
        .collect();
    out.push(form(-kk, vec![-1; k], -kk, 1, kk));
    out.push(form(0, vec![0; k], -1, 0, 1));
    out.push(form(0, vec![0; k], 1, 0, 0));
    out
}

fn ac8() -> Outcome {
    let mut failures = Vec::new();
    for k in 2..=10usize {
        let c = cayley_l(k).unwrap();
        let det = c.l.det().unwrap();
        if !(det == int(1) || det == int(-1)) || !(&c.l * &c.l_inv).is_identity() {
            failures.push(format!("k={k} L"));
        }
        match mellin_exponents(k) {
            Ok(forms) if forms.len() == k + 3 && forms == expected_forms(k) => {}
            _ => failures.push(format!("k={k} forms")),
        }
    }
    outcome(failures, "k=2..10".into())
}

fn ac9() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for k in 2..=5usize {
        let z = zeta_monodromy(k, AC9_TOL).unwrap();
        let t = cp_levelt(k).unwrap();
        let mut minus_one = vec![int(0); k + 1];
        minus_one[0] = int(1);
        minus_one[k] = int(-1);
        let d0 = charpoly_deviation_from(&z.around_zero, &minus_one);
        let d1 = charpoly_deviation_from(&z.around_one, &t.h1.charpoly().unwrap());
        worst = worst.max(d0).max(d1);
        if d0 >= AC9_DEVIATION || d1 >= AC9_DEVIATION {
            failures.push(format!("k={k} deviation {d0:.1e}/{d1:.1e}"));
        }
        let ladder = tolerance_ladder(k, &AC9_LADDER).unwrap();
        if !is_monotone(&ladder) {
            failures.push(format!("k={k} ladder"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= AC9_BUDGET {
        failures.push(format!("runtime {elapsed:.2?}"));
    }
    outcome(
        failures,
        format!("k=2..5, worst deviation {worst:.1e} < {AC9_DEVIATION:.0e}, {elapsed:.2?}"),
    )
}

fn ac10() -> Outcome {
    let e = evaluate_i0(2, &Scalar::new(1.into(), 8.into()), 40).unwrap();
    let err = (e.value - std::f64::consts::SQRT_2).abs();
    let pass = !e.radius_warning && err <= e.tail_bound;
    Outcome {
        pass,
        detail: format!(
            "|I0 - sqrt 2| = {err:.1e} <= tail bound {:.1e}",
            e.tail_bound
        ),
    }
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

/// Criteria that cannot hold as stated; see the README.
const KNOWN_RED: &[&str] = &["AC4"];

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("AC1", "Stokes closed form", ac1),
        ("AC2", "invariant dimension", ac2),
        ("AC3", "group relations", ac3),
        ("AC4", "Gram identities", ac4),
        ("AC5", "Coxeter consistency", ac5),
        ("AC6", "Euler form and braid", ac6),
        ("AC7", "series", ac7),
        ("AC8", "Mellin structure", ac8),
        ("AC9", "numeric monodromy", ac9),
        ("AC10", "evaluation oracle", ac10),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        let o = run();
        println!(
            "{id:<5} {}  {title}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if o.pass == KNOWN_RED.contains(&id) {
            unexpected.push(id);
        }
    }
    assert!(
        unexpected.is_empty(),
        "unexpected outcome for {unexpected:?}"
    );
}

#[test]
fn ac4_outcome_by_rank() {
    // k = 2 holds through the r = 1 matrix; every other rank fails.
    let want: Vec<(usize, bool)> = (2..=10).map(|k| (k, k == 2)).collect();
    assert_eq!(ac4_by_rank(), want);
}

#[test]
#[ignore = "AC4 contradicts AC1 as stated; kept red"]
fn ac4_literal() {
    let o = ac4();
    assert!(o.pass, "{}", o.detail);
}
