//! sl₂-triples through a nilpotent element, the centralizer `gᵉ`, the slice
//! `f + gᵉ` and its contracting action.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel_q, rank_q, solve_q, QRow};
use crate::rational::{int, Q};
use crate::rootsys::{Element, LieAlgebra};
use crate::syntax::parse_lie_element;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Element,
    pub h: Element,
    pub f: Element,
}

impl Sl2Triple {
    /// `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn relations_hold(&self, alg: &LieAlgebra) -> bool {
        alg.bracket(&self.h, &self.e) == self.e.scaled(&int(2))
            && alg.bracket(&self.h, &self.f) == self.f.scaled(&int(-2))
            && alg.bracket(&self.e, &self.f) == self.h
    }
}

/// Standard nilpotent representatives, or an explicit element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilpotentSpec {
    Regular,
    Minimal,
    Element(String),
}

impl NilpotentSpec {
    pub fn parse(text: &str) -> Self {
        match text.trim() {
            "regular" => NilpotentSpec::Regular,
            "minimal" => NilpotentSpec::Minimal,
            other => NilpotentSpec::Element(other.to_string()),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            NilpotentSpec::Regular => "regular",
            NilpotentSpec::Minimal => "minimal",
            NilpotentSpec::Element(s) => s,
        }
    }

    /// `Σ f_{α_i}` for regular, `f_θ` for minimal.
    pub fn element(&self, alg: &LieAlgebra) -> Result<Element> {
        match self {
            NilpotentSpec::Regular => Ok(Element::from_terms((0..alg.rank).map(|i| {
                let mut unit = vec![0; alg.rank];
                unit[i] = 1;
                let r = alg.root_index(&unit).expect("simple root");
                (alg.f_index(r), Q::one())
            }))),
            NilpotentSpec::Minimal => Ok(Element::basis(alg.f_index(alg.theta_index))),
            NilpotentSpec::Element(s) => parse_lie_element(alg, s),
        }
    }
}

fn columns_to_rows(cols: &[Element], dim: usize) -> Vec<QRow> {
    let mut rows: Vec<QRow> = vec![Vec::new(); dim];
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter() {
            rows[r].push((c, v.clone()));
        }
    }
    rows
}

fn is_nilpotent(alg: &LieAlgebra, x: &Element) -> bool {
    let mut images: Vec<Element> = (0..alg.dim).map(Element::basis).collect();
    for _ in 0..alg.dim {
        images = images.iter().map(|y| alg.bracket(x, y)).collect();
        if images.iter().all(Element::is_zero) {
            return true;
        }
    }
    false
}

/// Completes a nilpotent `f` to an sl₂-triple.
///
/// `h = [f, z]` for the particular solution of `ad(f)² z = 2f`, then `e`
/// solves `[e,f] = h`, `[h,e] = 2e` jointly.
pub fn complete_triple(alg: &LieAlgebra, f: &Element) -> Result<Sl2Triple> {
    if f.is_zero() {
        return Err(Error::ZeroNilpotent);
    }
    if !is_nilpotent(alg, f) {
        return Err(Error::NotNilpotent);
    }
    let dim = alg.dim;
    let ad_f = alg.ad(f);
    let ad_f2: Vec<Element> = ad_f.iter().map(|c| alg.bracket(f, c)).collect();
    let z = solve_q(
        &columns_to_rows(&ad_f2, dim),
        &f.scaled(&int(2)).to_dense(dim),
        dim,
    )
    .ok_or(Error::NoTriple)?;
    let h = alg.bracket(f, &Element::from_dense(&z));

    // [e,f] = −ad(f) e and [h,e] − 2e = (ad(h) − 2) e.
    let ad_h = alg.ad(&h);
    let mut cols: Vec<Element> = Vec::with_capacity(dim);
    for b in 0..dim {
        let mut col = Element::zero();
        for (r, v) in ad_f[b].iter() {
            col.add_term(r, -v.clone());
        }
        for (r, v) in ad_h[b].iter() {
            col.add_term(r + dim, v.clone());
        }
        col.add_term(b + dim, int(-2));
        cols.push(col);
    }
    let mut rhs = h.to_dense(dim);
    rhs.extend(std::iter::repeat_n(Q::zero(), dim));
    let e = solve_q(&columns_to_rows(&cols, 2 * dim), &rhs, dim).ok_or(Error::NoTriple)?;
    let triple = Sl2Triple {
        e: Element::from_dense(&e),
        h,
        f: f.clone(),
    };
    if !triple.relations_hold(alg) {
        return Err(Error::Inconsistent("triple relations fail".into()));
    }
    Ok(triple)
}

/// `ad(h)`-eigenbasis of `g`, grouped by eigenvalue.
#[derive(Debug, Clone)]
pub struct Grading {
    pub components: BTreeMap<i64, Vec<Element>>,
}

impl Grading {
    pub fn new(alg: &LieAlgebra, h: &Element) -> Result<Self> {
        let components = eigenspaces(alg, h, &[])?;
        let total: usize = components.values().map(Vec::len).sum();
        if total != alg.dim {
            return Err(Error::Inconsistent(
                "ad(h) is not diagonalizable over the integers".into(),
            ));
        }
        Ok(Grading { components })
    }

    /// Splits `x` into its `ad(h)`-homogeneous components.
    pub fn decompose(&self, x: &Element, dim: usize) -> Result<BTreeMap<i64, Element>> {
        let labelled: Vec<(i64, &Element)> = self
            .components
            .iter()
            .flat_map(|(j, v)| v.iter().map(move |b| (*j, b)))
            .collect();
        let cols: Vec<Element> = labelled.iter().map(|(_, b)| (*b).clone()).collect();
        let coeffs = solve_q(&columns_to_rows(&cols, dim), &x.to_dense(dim), cols.len())
            .ok_or_else(|| Error::Inconsistent("eigenbasis does not span".into()))?;
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for ((j, b), c) in labelled.iter().zip(coeffs) {
            if !c.is_zero() {
                out.entry(*j)
                    .or_insert_with(Element::zero)
                    .add_scaled(b, &c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

/// Eigenspaces of `ad(h)` on the common kernel of `ad(x)` for `x ∈ extra`.
fn eigenspaces(
    alg: &LieAlgebra,
    h: &Element,
    extra: &[&Element],
) -> Result<BTreeMap<i64, Vec<Element>>> {
    let dim = alg.dim;
    let ad_h = alg.ad(h);
    let ad_extra: Vec<Vec<Element>> = extra.iter().map(|x| alg.ad(x)).collect();
    let bound = 2 * dim as i64;
    let mut out = BTreeMap::new();
    for j in -bound..=bound {
        let mut cols: Vec<Element> = Vec::with_capacity(dim);
        for b in 0..dim {
            let mut col = ad_h[b].clone();
            col.add_term(b, int(-j));
            for (s, ad) in ad_extra.iter().enumerate() {
                for (r, v) in ad[b].iter() {
                    col.add_term(r + (s + 1) * dim, v.clone());
                }
            }
            cols.push(col);
        }
        let ker = kernel_q(&columns_to_rows(&cols, (extra.len() + 1) * dim), dim);
        if !ker.is_empty() {
            out.insert(j, ker.iter().map(|v| Element::from_dense(v)).collect());
        }
    }
    Ok(out)
}

/// The slice `f + gᵉ` with an `ad(h)`-homogeneous basis of `gᵉ`.
#[derive(Debug, Clone)]
pub struct SliceData {
    pub triple: Sl2Triple,
    /// `(eigenvalue, vector)` pairs, by increasing eigenvalue.
    pub centralizer_basis: Vec<(i64, Element)>,
    pub grading: Grading,
}

impl SliceData {
    pub fn centralizer_dim(&self) -> usize {
        self.centralizer_basis.len()
    }

    pub fn eigenvalues(&self) -> Vec<i64> {
        self.centralizer_basis.iter().map(|(j, _)| *j).collect()
    }

    /// `ρ̃(t)` on every basis vector of `gᵉ` scales by `t^{2+j}`.
    pub fn contraction_exponents(&self) -> Vec<i64> {
        self.eigenvalues().iter().map(|j| 2 + j).collect()
    }
}

pub fn slice(alg: &LieAlgebra, triple: &Sl2Triple) -> Result<SliceData> {
    let spaces = eigenspaces(alg, &triple.h, &[&triple.e])?;
    let centralizer_basis: Vec<(i64, Element)> = spaces
        .into_iter()
        .flat_map(|(j, v)| v.into_iter().map(move |x| (j, x)))
        .collect();
    let ad_rank = rank_q(&columns_to_rows(&alg.ad(&triple.e), alg.dim), alg.dim);
    if centralizer_basis.len() != alg.dim - ad_rank {
        return Err(Error::Inconsistent(
            "ad(h) does not preserve a basis of the centralizer".into(),
        ));
    }
    if centralizer_basis.iter().any(|(j, _)| *j < 0) {
        return Err(Error::Inconsistent(
            "negative ad(h)-eigenvalue on the centralizer".into(),
        ));
    }
    Ok(SliceData {
        triple: triple.clone(),
        centralizer_basis,
        grading: Grading::new(alg, &triple.h)?,
    })
}

fn power(t: &Q, n: i64) -> Q {
    let base = if n < 0 { t.recip() } else { t.clone() };
    (0..n.unsigned_abs()).fold(Q::one(), |acc, _| acc * &base)
}

/// `ρ̃(t)x = t²ρ(t)x`: the `ad(h)`-component of eigenvalue `j` scales by
/// `t^{2+j}`.
pub fn rho_tilde(alg: &LieAlgebra, data: &SliceData, t: &Q, x: &Element) -> Result<Element> {
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut out = Element::zero();
    for (j, comp) in data.grading.decompose(x, alg.dim)? {
        out.add_scaled(&comp, &power(t, 2 + j));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmersionCertificate {
    pub dim: usize,
    pub centralizer_dim: usize,
    pub image_rank: usize,
    pub rank: usize,
    pub pass: bool,
}

/// Rank of `[basis of gᵉ | columns of ad(f)]`; passes when it is `dim g`.
pub fn submersion_certificate(alg: &LieAlgebra, data: &SliceData) -> SubmersionCertificate {
    let dim = alg.dim;
    let ad_f = alg.ad(&data.triple.f);
    let mut cols: Vec<Element> = data
        .centralizer_basis
        .iter()
        .map(|(_, x)| x.clone())
        .collect();
    cols.extend(ad_f.iter().cloned());
    // Column rank equals the rank of the transpose, which is cheaper to build.
    let as_rows: Vec<QRow> = cols
        .iter()
        .map(|c| c.iter().map(|(i, v)| (i, v.clone())).collect())
        .collect();
    let rank = rank_q(&as_rows, dim);
    let image_rank = rank_q(&columns_to_rows(&ad_f, dim), dim);
    SubmersionCertificate {
        dim,
        centralizer_dim: data.centralizer_dim(),
        image_rank,
        rank,
        pass: rank == dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn alg(s: &str) -> LieAlgebra {
        LieAlgebra::from_str_spec(s).unwrap()
    }

    #[test]
    fn a1_triple_is_standard() {
        let g = alg("A1");
        let t = complete_triple(&g, &Element::basis(g.f_index(0))).unwrap();
        assert_eq!(t.e, Element::basis(g.e_index(0)));
        assert_eq!(t.h, g.theta_coroot());
    }

    #[test]
    fn errors() {
        let g = alg("A2");
        assert_eq!(
            complete_triple(&g, &Element::zero()),
            Err(Error::ZeroNilpotent)
        );
        assert_eq!(
            complete_triple(&g, &Element::basis(0)),
            Err(Error::NotNilpotent)
        );
        let t = complete_triple(&g, &Element::basis(g.f_index(0))).unwrap();
        let s = slice(&g, &t).unwrap();
        assert_eq!(
            rho_tilde(&g, &s, &Q::zero(), &t.f),
            Err(Error::ZeroParameter)
        );
    }

    #[test]
    fn power_handles_negative_exponents() {
        assert_eq!(power(&frac(2, 3), -2), frac(9, 4));
        assert_eq!(power(&int(5), 0), int(1));
    }
}
