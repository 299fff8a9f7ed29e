//! Stanley–Reisner ideals and the commutative algebra built on them.

mod groebner;
mod poly;
mod quotient;

pub use groebner::{
    buchberger_degrevlex, change_coordinates, gin, hilbert_function, hilbert_function_monomial, is_strongly_stable,
    reduce, truncation_cm_check, GbOptions, GinOptions, GinResult, TruncationCmReport, TruncationVerdict,
    DEFAULT_MAX_SPAIRS,
};
pub use poly::{minimize_monomials, parse_polynomial, Ideal, IdealFile, Monomial, Polynomial};
pub use quotient::{
    artinian_reduction, wlp_check, wlp_on_quotient, GradedQuotient, WlpReport, WlpVerdict, COEFFICIENT_BOUND,
    RETRY_LIMIT,
};

use crate::complex::SimplicialComplex;

/// `I_Δ`, generated by `x_F` for the missing faces `F` (cardinality, then
/// lexicographic order).
pub fn sr_ideal(complex: &SimplicialComplex) -> Ideal {
    let n = complex.n();
    Ideal::from_monomials(n, complex.missing_faces(None).into_iter().map(|f| Monomial::squarefree(n, f.vertices())))
}

/// The ideal generated by the generators of degree `<= r`.
pub fn truncate_ideal(ideal: &Ideal, r: u32) -> Ideal {
    let gens = ideal.generators().iter().filter(|g| g.degree().is_some_and(|d| d <= r)).cloned().collect();
    Ideal::new(ideal.nvars(), gens).expect("same ring")
}
