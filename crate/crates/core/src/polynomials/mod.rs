//! Kauffman bracket, Jones polynomial, and the determinant by three routes.

mod bracket;
mod laurent;

use rug::{Integer, Rational};

use crate::diagram::Diagram;
use crate::error::Result;
use crate::graphs::{checkerboard_graph, spanning_tree_count, tait_graph};

pub use bracket::{kauffman_bracket, kauffman_bracket_capped, loop_value, BRACKET_CROSSING_CAP};
pub use laurent::{LaurentPolynomial, Variable};

#[cfg(test)]
pub(crate) use bracket::tests::brute_force_bracket;
pub(crate) use bracket::contraction_order;

/// Jones polynomial with its span and coefficient statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesSummary {
    /// V(t) with exponents in units of t^(1/2).
    pub polynomial: LaurentPolynomial,
    /// max degree − min degree, in units of t.
    pub span: u64,
    pub abs_coeff_sum: Integer,
    /// Σ|a_i| / (span + 1).
    pub mu: Rational,
    pub determinant: Integer,
}

/// V(t) = (−A³)^(−w) ⟨D⟩ at A = t^(−1/4).
pub fn jones_from_bracket(bracket: &LaurentPolynomial, writhe: i64) -> Result<LaurentPolynomial> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = bracket.scaled(sign, -3 * writhe);
    normalized.substituted(Variable::HalfT, -1, 2)
}

pub fn jones_polynomial(d: &Diagram) -> Result<JonesSummary> {
    let v = jones_from_bracket(&kauffman_bracket(d)?, d.writhe())?;
    Ok(summarize_jones(v))
}

pub fn summarize_jones(polynomial: LaurentPolynomial) -> JonesSummary {
    let span = match (polynomial.min_exp(), polynomial.max_exp()) {
        (Some(lo), Some(hi)) => ((hi - lo) / 2) as u64,
        _ => 0,
    };
    let abs_coeff_sum = polynomial.abs_coeff_sum();
    let mu = Rational::from((abs_coeff_sum.clone(), Integer::from(span + 1)));
    let (re, im) = polynomial.eval_at_i();
    let determinant = re.abs() + im.abs();
    JonesSummary { polynomial, span, abs_coeff_sum, mu, determinant }
}

/// |det| of the Goeritz matrix: the signed checkerboard Laplacian with one region deleted.
pub fn goeritz_determinant(d: &Diagram) -> Integer {
    let g = checkerboard_graph(d, true);
    crate::graphs::signed_laplacian_cofactor(&g).abs()
}

/// Spanning-tree count of the Tait graph; alternating diagrams only.
pub fn tait_determinant(d: &Diagram) -> Result<Integer> {
    spanning_tree_count(&tait_graph(d)?)
}

/// Determinant via the Goeritz matrix, which applies to every diagram.
pub fn determinant(d: &Diagram) -> Integer {
    goeritz_determinant(d)
}

/// (Σ|a_i|, τ(G), equality) for the Jones coefficients and the checkerboard graph.
pub fn coefficient_bound_check(d: &Diagram) -> Result<(Integer, Integer, bool)> {
    let j = jones_polynomial(d)?;
    let tau = spanning_tree_count(&checkerboard_graph(d, true))?;
    let equal = j.abs_coeff_sum == tau;
    Ok((j.abs_coeff_sum, tau, equal))
}
