//! The commutative side: `S(t⁻¹g[t⁻¹])` with its `g[t]`-action, principal
//! symbols, the projection to `ℂ[g*]`, and the translation derivation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pbw::{Factor, PbwMonomial, VaVector};
use crate::rational::{frac, int, Q};
use crate::rootsys::LieAlgebra;
use crate::syntax;

/// Commutative monomials share the sorted-multiset representation of PBW
/// monomials; only the product differs.
pub type PolyMonomial = PbwMonomial;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyElement {
    terms: BTreeMap<PolyMonomial, Q>,
}

impl PolyElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(PolyMonomial::vacuum(), Q::one())
    }

    pub fn monomial(m: PolyMonomial, coeff: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PolyMonomial, Q)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Reads the PBW expansion of a vector as a polynomial.
    pub fn from_vector(v: &VaVector) -> Self {
        Self::from_terms(v.terms().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn add_term(&mut self, m: PolyMonomial, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Q::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &PolyElement, scale: &Q) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &Q) -> PolyElement {
        let mut out = Self::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn add(&self, other: &PolyElement) -> PolyElement {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &PolyElement) -> PolyElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn mul(&self, other: &PolyElement) -> PolyElement {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut f = a.factors().to_vec();
                f.extend_from_slice(b.factors());
                out.add_term(PolyMonomial::from_factors(f), x * y);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PolyMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolyMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn min_depth(&self) -> Option<i64> {
        self.terms.keys().map(PbwMonomial::depth).min()
    }

    pub fn depths(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(PbwMonomial::depth).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// `x(m)` for `m ≥ 0` acting as a derivation: `y(−n) ↦ [x, y](m − n)` when
/// `n > m`, and `0` otherwise.
pub fn gt_act(alg: &LieAlgebra, x: usize, m: i64, p: &PolyElement) -> Result<PolyElement> {
    if m < 0 {
        return Err(Error::NegativeMode(m));
    }
    let mut out = PolyElement::zero();
    for (mono, c) in p.terms() {
        let factors = mono.factors();
        for (j, y) in factors.iter().enumerate() {
            let n = y.n as i64;
            if n - m <= 0 {
                continue;
            }
            let br = alg.bracket_basis(x, y.basis as usize);
            for (z, bc) in br.iter() {
                let mut f = factors.to_vec();
                f[j] = Factor::new(alg, z, (n - m) as u32);
                out.add_term(PolyMonomial::from_factors(f), c * bc);
            }
        }
    }
    Ok(out)
}

/// Multiplication by `x(−n)`, `n ≥ 1`.
pub fn multiply(alg: &LieAlgebra, x: usize, n: u32, p: &PolyElement) -> PolyElement {
    let mut out = PolyElement::zero();
    for (mono, c) in p.terms() {
        let mut f = mono.factors().to_vec();
        f.push(Factor::new(alg, x, n));
        out.add_term(PolyMonomial::from_factors(f), c.clone());
    }
    out
}

/// Terms of minimal depth.
pub fn symbol(v: &VaVector) -> Result<PolyElement> {
    let d = v.min_depth().ok_or(Error::ZeroVector("symbol"))?;
    Ok(PolyElement::from_terms(
        v.terms()
            .filter(|(m, _)| m.depth() == d)
            .map(|(m, c)| (m.clone(), c.clone())),
    ))
}

/// Projection onto the depth-0 part, i.e. onto `ℂ[g*]` via `x(−1) ↦ x`.
pub fn zhu_project(p: &PolyElement) -> PolyElement {
    PolyElement::from_terms(
        p.terms()
            .filter(|(m, _)| m.depth() == 0)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

pub fn zhu_project_vector(v: &VaVector) -> PolyElement {
    zhu_project(&PolyElement::from_vector(v))
}

/// The derivation `T` with `T(x(−n)) = n·x(−n−1)`.
pub fn translate(alg: &LieAlgebra, p: &PolyElement) -> PolyElement {
    let mut out = PolyElement::zero();
    for (mono, c) in p.terms() {
        let factors = mono.factors();
        for (j, y) in factors.iter().enumerate() {
            let mut f = factors.to_vec();
            f[j] = Factor::new(alg, y.basis as usize, y.n + 1);
            out.add_term(PolyMonomial::from_factors(f), c * int(y.n as i64));
        }
    }
    out
}

pub fn translate_pow(alg: &LieAlgebra, p: &PolyElement, j: usize) -> PolyElement {
    (0..j).fold(p.clone(), |acc, _| translate(alg, &acc))
}

/// `p₁ = ½ ∑ x_i(−1) x^i(−1)` over a basis and its dual basis.
pub fn quadratic_casimir(alg: &LieAlgebra) -> PolyElement {
    let mut out = PolyElement::zero();
    let half = frac(1, 2);
    for i in 0..alg.dim {
        for (j, c) in alg.dual(i).iter() {
            let m =
                PolyMonomial::from_factors(vec![Factor::new(alg, i, 1), Factor::new(alg, j, 1)]);
            out.add_term(m, c * &half);
        }
    }
    out
}

/// Annihilated by `e_α(0)` for all positive `α` and by `f_θ(1)`.
pub fn is_gt_singular(alg: &LieAlgebra, p: &PolyElement) -> bool {
    let raising = (0..alg.num_positive()).all(|r| {
        gt_act(alg, alg.e_index(r), 0, p)
            .map(|q| q.is_zero())
            .unwrap_or(false)
    });
    raising
        && gt_act(alg, alg.f_index(alg.theta_index), 1, p)
            .map(|q| q.is_zero())
            .unwrap_or(false)
}

/// `f(−1)² h(−3)` style, matching the vector syntax.
pub fn format_poly(alg: &LieAlgebra, p: &PolyElement) -> String {
    syntax::format_sum(p.terms().map(|(m, c)| (c, syntax::format_monomial(alg, m))))
}

/// Depth-0 polynomial printed as an element of `ℂ[g*]`, e.g. `e[1]^2`.
pub fn format_zhu(alg: &LieAlgebra, p: &PolyElement) -> String {
    syntax::format_sum(
        p.terms()
            .map(|(m, c)| (c, syntax::format_polynomial_monomial(alg, m))),
    )
}

pub fn parse_poly(alg: &LieAlgebra, text: &str) -> Result<PolyElement> {
    Ok(PolyElement::from_terms(syntax::parse_poly_terms(
        alg, text,
    )?))
}
