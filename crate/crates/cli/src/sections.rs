//! One builder per subcommand.

use cpstokes_core::exact::{int, Matrix, Scalar};
use cpstokes_core::group::{is_pseudo_reflection, verify_riemann_fuchs, Variant};
use cpstokes_core::invariant::{
    group_invariant, invariant_of_h0_hinf, structure_report, Symmetry, WrapSign,
};
use cpstokes_core::levelt::{binomial_charpoly, unipotent_charpoly};
use cpstokes_core::mellin::{cayley_l, mellin_exponents};
use cpstokes_core::mutation::{reversal, verify_chi_stokes, BraidWord, FROZEN_CONVENTION};
use cpstokes_core::numeric::{
    charpoly_deviation_from, defect_singular_values, is_monotone, numeric_rank_of_defect,
    tolerance_ladder, zeta_monodromy, NumericMatrix,
};
use cpstokes_core::series::{
    apply_hg_operator, closed_form_coefficient, evaluate_i0, evaluate_i0_f64, series_coefficients,
    zeta_substitution,
};
use cpstokes_core::stokes::{stokes_matrix, uv_decomposition, Parity, StokesCheck};
use cpstokes_core::{levelt, Error, Result};
use serde_json::{json, Value};

use crate::doc::Document;

/// Thresholds for the numerical checks.
pub const NUMERIC_DEVIATION: f64 = 1e-6;
pub const DEFECT_GAP: f64 = 1e-3;

fn strings(v: &[Scalar]) -> Value {
    json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn variant_suffix(v: Variant) -> &'static str {
    match v {
        Variant::Literal => "",
        Variant::Twisted => "_twisted",
    }
}

pub fn generators(k: usize, variant: Variant) -> Result<Document> {
    let t = variant.levelt(k)?;
    let g = variant.generators(k)?;
    let mut d = Document::new(k, "generators", "h_0", t.h0.clone());
    d.with_matrix("h_inf", t.hinf.clone());
    d.with_matrix("h_1", t.h1.clone());
    for (label, (_, m)) in g.labels().into_iter().zip(g.generators()) {
        d.with_matrix(label, m.clone());
    }
    d.with_matrix("M_0", g.m0.clone());

    let id = Matrix::identity(k);
    let (pow_name, pow_target, h0_cp) = match variant {
        Variant::Literal => ("h0_pow_k_identity", id.clone(), binomial_charpoly(k, -1)),
        Variant::Twisted => ("h0_pow_k_minus_identity", -&id, binomial_charpoly(k, 1)),
    };
    d.push(pow_name, t.h0.pow(k as i64)? == pow_target);
    d.push("charpoly_h0", t.h0.charpoly()? == h0_cp);
    d.push("charpoly_hinf", t.hinf.charpoly()? == unipotent_charpoly(k));
    d.push(
        "h1_pseudo_reflection",
        is_pseudo_reflection(&t.h1)?.is_pseudo_reflection,
    );
    let rf = verify_riemann_fuchs(&g)?;
    d.push("riemann_fuchs", rf.equals_m0_inverse);

    d.set("variant", json!(variant.name()));
    d.set("product_is_identity", json!(rf.is_identity));
    let reflections: Vec<Value> = g
        .generators()
        .iter()
        .map(|(s, m)| {
            let p = is_pseudo_reflection(m).unwrap_or(cpstokes_core::group::PseudoReflection {
                is_pseudo_reflection: false,
                is_reflection: false,
            });
            json!({"generator": format!("M_{s}"), "pseudo_reflection": p.is_pseudo_reflection, "reflection": p.is_reflection})
        })
        .collect();
    d.set("generator_types", Value::Array(reflections));
    d.notes.push(
        "generators listed in product order M_1, M_omega, ..., M_inf; M_inf ... M_1 = M_0^-1"
            .into(),
    );
    Ok(d)
}

fn symmetry_name(s: Symmetry) -> &'static str {
    match s {
        Symmetry::Symmetric => "symmetric",
        Symmetry::AntiSymmetric => "antisymmetric",
        Symmetry::Neither => "neither",
    }
}

fn wrap_name(w: WrapSign) -> &'static str {
    match w {
        WrapSign::Cyclic => "cyclic",
        WrapSign::NegaCyclic => "negacyclic",
        WrapSign::Neither => "neither",
    }
}

pub fn invariant(k: usize, variant: Variant) -> Result<Document> {
    let space = group_invariant(k, variant)?;
    let x = space.single()?.clone();
    let sfx = variant_suffix(variant);
    let gens = variant.generators(k)?;
    let mut d = Document::new(k, "invariant", "X", x.clone());
    d.push(
        format!("invariant_dimension_one{sfx}"),
        space.dimension() == 1,
    );
    d.push(
        format!("generators_preserve_invariant{sfx}"),
        gens.generator_matrices()
            .iter()
            .all(|g| &(g * &x) * &g.transpose() == x),
    );
    let coincide = match invariant_of_h0_hinf(k, variant) {
        Ok(_) => true,
        Err(Error::InvariantMismatch) => false,
        Err(e) => return Err(e),
    };
    d.push(format!("invariant_h0_hinf_coincide{sfx}"), coincide);
    let rep = structure_report(&x, k)?;
    if variant == Variant::Twisted {
        d.push("invariant_parity_twisted", rep.parity_as_expected);
    }
    d.set("variant", json!(variant.name()));
    d.set("dimension", json!(space.dimension()));
    d.set("symmetry", json!(symmetry_name(rep.symmetry)));
    d.set("zero_diagonal", json!(rep.zero_diagonal));
    if let Some(b) = &rep.bands {
        d.set("bands", strings(b));
    }
    if let Some(s) = &rep.band_scale {
        d.set("band_scale", json!(s.to_string()));
    }
    if let Some(b) = rep.binomial_bands {
        d.set("binomial_bands", json!(b));
    }
    if let Some(b) = rep.inverse_toeplitz {
        d.set("inverse_toeplitz", json!(b));
    }
    if let Some(w) = rep.inverse_wrap {
        d.set("inverse_wrap", json!(wrap_name(w)));
    }
    if let Some(b) = rep.v0_annihilated {
        d.set("v0_annihilated", json!(b));
    }
    if let Some(v) = rep.violation {
        d.set("violation", json!({"check": v.check, "band": v.band}));
    }
    Ok(d)
}

/// Checks that read the symmetrization identities literally; reported but not part of `verify`.
pub const LITERAL_FORMS: [StokesCheck; 2] = [
    StokesCheck::SymmetrizedEqualsTwiceGram,
    StokesCheck::KernelAlternating,
];

pub fn stokes(k: usize, transpose: bool) -> Result<Document> {
    let res = stokes_matrix(k)?;
    let main = if transpose {
        res.s.transpose()
    } else {
        res.s.clone()
    };
    let mut d = Document::new(k, "stokes", if transpose { "S^T" } else { "S" }, main);
    d.with_matrix("G", res.gram.g.clone());
    d.with_matrix("coxeter", res.coxeter.clone());
    let (u, v) = uv_decomposition(&res.gram.g);
    d.with_matrix("U", u);
    d.with_matrix("V", v);
    for (j, r) in res.data.reflections.reflections.iter().enumerate() {
        d.with_matrix(format!("R_{j}"), r.clone());
    }
    for (c, pass) in &res.data.checks {
        d.push(c.name(), *pass);
    }
    d.set("r", json!(res.gram.r.to_string()));
    d.set(
        "parity",
        json!(match res.gram.parity {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }),
    );
    d.set("transposed", json!(transpose));
    d.set(
        "literal_forms",
        json!(LITERAL_FORMS.iter().map(|c| c.name()).collect::<Vec<_>>()),
    );
    if let Some(alt) = &res.r_one {
        d.with_matrix("S_r1", alt.s.clone());
        let checks: serde_json::Map<String, Value> = alt
            .checks
            .iter()
            .map(|(c, p)| (c.name().to_string(), json!(p)))
            .collect();
        d.set("r1_checks", Value::Object(checks));
    }
    d.notes
        .extend(res.convention_notes.iter().map(|n| n.to_string()));
    Ok(d)
}

pub fn chi(k: usize) -> Result<Document> {
    let res = stokes_matrix(k)?;
    let rep = verify_chi_stokes(k, &res)?;
    let mut d = Document::new(k, "chi", "chi", rep.chi.clone());
    d.with_matrix("J_beta_chi_J", rep.braided.clone());
    d.with_matrix("S^T", res.s.transpose());
    d.with_matrix("J", reversal(k));
    d.push("chi_times_s_identity", rep.chi_s_identity);
    d.push("s_times_chi_identity", rep.s_chi_identity);
    d.push("braid_transpose_identity", rep.frozen_holds);
    let conv: Vec<Value> = rep
        .conventions
        .iter()
        .map(|(r, dir, ok)| json!({"rule": r.name(), "direction": dir.name(), "holds": ok}))
        .collect();
    d.set("conventions", Value::Array(conv));
    d.set(
        "frozen_convention",
        json!({"rule": FROZEN_CONVENTION.0.name(), "direction": FROZEN_CONVENTION.1.name()}),
    );
    let word: Vec<usize> = BraidWord::garside(k)
        .letters
        .iter()
        .map(|l| l.index)
        .collect();
    d.set("braid_word", json!(word));
    Ok(d)
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// `--s` as an exact rational, or a decimal when it does not parse as one.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesPoint {
    Exact(Scalar),
    Float(f64),
}

pub fn series(k: usize, terms: usize, s: Option<&SeriesPoint>) -> Result<Document> {
    let sc = series_coefficients(k, terms)?;
    let row = Matrix::from_fn(1, terms + 1, |_, m| {
        Scalar::from_integer(sc.coeffs[m].clone())
    });
    let mut d = Document::new(k, "series", "c", row);
    d.push(
        "series_closed_form",
        sc.coeffs
            .iter()
            .enumerate()
            .all(|(m, c)| *c == closed_form_coefficient(k, m)),
    );
    let res = apply_hg_operator(&sc);
    d.push("operator_annihilates_series", res.is_zero());
    let z = zeta_substitution(k)?;
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    d.push("zeta_substitution", z.factor.as_ref() == Some(&sign));
    d.set("terms", json!(terms));
    d.set("truncation_term", json!(res.truncation_term.to_string()));
    if let Some(f) = &z.factor {
        d.set("zeta_factor", json!(f.to_string()));
    }
    if let Some(p) = s {
        let (ev, label) = match p {
            SeriesPoint::Exact(x) => (evaluate_i0(k, x, terms)?, x.to_string()),
            SeriesPoint::Float(x) => (evaluate_i0_f64(k, *x, terms)?, x.to_string()),
        };
        let mut obj = json!({
            "s": label,
            "value": finite_or_null(ev.value),
            "tail_bound": finite_or_null(ev.tail_bound),
            "radius_warning": ev.radius_warning,
            "terms": ev.terms,
        });
        if let Some(ps) = &ev.partial_sum {
            obj["partial_sum"] = json!(ps.to_string());
        }
        d.set("i0", obj);
    }
    Ok(d)
}

pub fn mellin(k: usize) -> Result<Document> {
    let c = cayley_l(k)?;
    let mut d = Document::new(k, "mellin", "L", c.l.clone());
    d.with_matrix("L_inv", c.l_inv.clone());
    let det = c.l.det()?;
    d.push("cayley_unimodular", det == int(1) || det == int(-1));
    d.push("cayley_inverse", (&c.l * &c.l_inv).is_identity());
    let forms = mellin_exponents(k);
    d.push("exponent_forms", forms.is_ok());
    let forms = forms.unwrap_or_default();
    let unit: Vec<String> = forms
        .iter()
        .map(|f| f.specialize_unit().to_string())
        .collect();
    let mut want = vec!["z".to_string(); k];
    want.extend([format!("-{k}*z + 1"), "-z + 1".to_string(), "z".to_string()]);
    d.push("unit_specialization", !forms.is_empty() && unit == want);
    d.set("det", json!(det.to_string()));
    d.set(
        "forms",
        json!(forms.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    d.set("unit_forms", json!(unit));
    let mut order: Vec<String> = (0..k).map(|i| format!("x_{i}")).collect();
    order.extend(["s".into(), "y_1".into(), "y_2".into()]);
    d.set("coordinates", json!(order));
    Ok(d)
}

fn complex_rows(m: &NumericMatrix) -> Value {
    let k = m.k;
    Value::Array(
        (0..k)
            .map(|i| {
                Value::Array(
                    (0..k)
                        .map(|j| json!([m.get(i, j).re, m.get(i, j).im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn complex_list(v: &[cpstokes_core::numeric::Complex64]) -> Value {
    json!(v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>())
}

pub fn monodromy(k: usize, tol: f64) -> Result<Document> {
    let t = levelt::cp_levelt(k)?;
    let z = zeta_monodromy(k, tol)?;
    let zero_cp = binomial_charpoly(k, -1);
    let one_cp = levelt::cp_h1_charpoly(k);
    let dev0 = charpoly_deviation_from(&z.around_zero, &zero_cp);
    let dev1 = charpoly_deviation_from(&z.around_one, &one_cp);
    let sv = defect_singular_values(&z.around_one);
    let ladder_tols = [tol * 1e4, tol * 1e2, tol];
    let ladder = tolerance_ladder(k, &ladder_tols)?;

    let mut d = Document::new(k, "monodromy", "h_0", t.h0.clone());
    d.with_matrix("h_1", t.h1.clone());
    d.push("numeric_charpoly_zero", dev0 < NUMERIC_DEVIATION);
    d.push("numeric_charpoly_one", dev1 < NUMERIC_DEVIATION);
    d.push(
        "numeric_pseudo_reflection_rank",
        sv[0] > DEFECT_GAP && numeric_rank_of_defect(&z.around_one, NUMERIC_DEVIATION) == 1,
    );
    d.push(
        "numeric_riemann_fuchs",
        z.product_deviation < NUMERIC_DEVIATION,
    );
    d.push("tolerance_ladder_monotone", is_monotone(&ladder));

    let loop_value = |name: &str, m: &NumericMatrix, dev: Option<f64>| {
        let mut v = json!({
            "loop": name,
            "entries": complex_rows(m),
            "charpoly": complex_list(&m.charpoly()),
            "estimated_error": m.estimated_error,
        });
        if let Some(dev) = dev {
            v["charpoly_deviation"] = json!(dev);
        }
        v
    };
    d.set("tol", json!(tol));
    d.set("base_point", json!([-1.0, 0.0]));
    d.set(
        "loops",
        json!([
            loop_value("zeta=0", &z.around_zero, Some(dev0)),
            loop_value("zeta=1", &z.around_one, Some(dev1)),
            loop_value("zeta=inf", &z.around_infinity, None),
        ]),
    );
    d.set("defect_singular_values", json!(sv));
    d.set("riemann_fuchs_deviation", json!(z.product_deviation));
    d.set(
        "ladder",
        json!(ladder
            .iter()
            .map(|p| json!({"tol": p.tol, "zero_deviation": p.zero_deviation, "one_deviation": p.one_deviation}))
            .collect::<Vec<_>>()),
    );
    d.notes.push("numerical frame: fundamental matrix at the base point; only conjugation invariants are compared".into());
    d.notes.push("loop about 1 approached through 0.5+0.5i; loop about infinity is the clockwise circle |zeta| = 2".into());
    Ok(d)
}

/// The identity suite for one rank: every check that is expected to hold.
pub fn verify(k: usize) -> Result<Document> {
    let gens = generators(k, Variant::Literal)?;
    let inv = invariant(k, Variant::Literal)?;
    let inv_t = invariant(k, Variant::Twisted)?;
    let st = stokes(k, false)?;
    let ch = chi(k)?;
    let se = series(k, 50, None)?;
    let me = mellin(k)?;

    let mut d = Document::new(k, "verify", "S", st.matrix.clone());
    let literal: Vec<&str> = LITERAL_FORMS.iter().map(|c| c.name()).collect();
    let mut literal_outcomes = serde_json::Map::new();
    for doc in [&gens, &inv, &inv_t, &st, &ch, &se, &me] {
        for i in &doc.identities {
            if literal.contains(&i.name.as_str()) {
                literal_outcomes.insert(i.name.clone(), json!(i.pass));
            } else {
                d.identities.push(i.clone());
            }
        }
    }
    d.set("literal_forms", Value::Object(literal_outcomes));
    d.notes.push(
        "literal_forms: symmetrization identities read with the normalization G_ii = 2 and the alternating kernel; \
         listed for reference, not part of the suite"
            .into(),
    );
    Ok(d)
}
