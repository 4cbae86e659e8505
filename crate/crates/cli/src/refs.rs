//! Source tags cited next to each identity in reports.

pub const PAPER_REFS: &[(&str, &str)] = &[
    ("h0_pow_k_identity", "Eq. (1.8)"),
    ("h0_pow_k_minus_identity", "Eq. (1.8)"),
    ("charpoly_h0", "Eq. (1.8)"),
    ("charpoly_hinf", "Eq. (1.8)"),
    ("h1_pseudo_reflection", "Prop. 1.2"),
    ("riemann_fuchs", "Eq. (2.2)"),
    ("generators_preserve_invariant", "Eq. (2.3)"),
    ("invariant_dimension_one", "Lemma 2.2"),
    ("invariant_h0_hinf_coincide", "Lemma 2.2"),
    ("invariant_parity", "Eq. (2.6)"),
    ("stokes_closed_form", "Thm. 1.2"),
    ("stokes_unit_lower_triangular", "Cor. (2.13)"),
    ("gram_invariance", "Eq. (2.11)"),
    ("coxeter_uv_route", "Thm. 2.3, Eq. (2.8)"),
    ("coxeter_seifert_form", "Prop. 2.3(2)"),
    ("s_plus_st_equals_gram", "Thm. 1.1"),
    ("s_plus_st_equals_twice_gram", "Thm. 1.1"),
    ("det_s_plus_st_zero", "Thm. 1.1"),
    ("s_plus_st_kernel_all_ones", "Thm. 1.1"),
    ("s_plus_st_kernel_alternating", "Thm. 1.1"),
    ("chi_times_s_identity", "Sec. 1, chi = S^-1"),
    ("s_times_chi_identity", "Sec. 1, chi = S^-1"),
    ("braid_transpose_identity", "Sec. 1, tS = J beta chi beta J"),
    ("series_closed_form", "Eq. (3.4)"),
    ("operator_annihilates_series", "Eq. (3.3)"),
    ("zeta_substitution", "Eq. (1.4)"),
    ("cayley_unimodular", "Eq. (3.8)"),
    ("cayley_inverse", "Eq. (3.8)"),
    ("exponent_forms", "Eq. (3.9)"),
    ("unit_specialization", "Eq. (3.9)"),
    ("numeric_charpoly_zero", "Eq. (1.8)"),
    ("numeric_charpoly_one", "Prop. 1.2"),
    ("numeric_pseudo_reflection_rank", "Def. 1.1"),
    ("numeric_riemann_fuchs", "Eq. (2.2)"),
    ("tolerance_ladder_monotone", "invented"),
];

/// Tag for an identity name; a `_twisted` suffix cites the same source as the base name.
pub fn paper_ref(name: &str) -> &'static str {
    let base = name.strip_suffix("_twisted").unwrap_or(name);
    PAPER_REFS
        .iter()
        .find(|(n, _)| *n == base)
        .map_or("invented", |(_, r)| r)
}
