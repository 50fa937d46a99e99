//! Graded weight spaces, singular vectors and level classification.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grpoisson::{self, PolyElement};
use crate::linalg::{echelon_q, QRow};
use crate::pbw::{Factor, PbwMonomial, VaVector, VacuumModule};
use crate::rational::{int, Q};
use crate::rootsys::{AlgebraSpec, LieAlgebra};
use crate::sugawara;

/// Canonical monomials of a fixed degree (and optionally weight), in
/// lexicographic order of their factor sequences.
#[derive(Debug, Clone)]
pub struct WeightSpaceBasis {
    pub delta: i64,
    pub weight: Option<Vec<i64>>,
    pub monomials: Vec<PbwMonomial>,
}

impl WeightSpaceBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn column(&self, m: &PbwMonomial) -> Option<usize> {
        self.monomials.binary_search(m).ok()
    }
}

/// All generators `x(−n)` with `1 ≤ n ≤ delta`, in canonical order.
fn generators(alg: &LieAlgebra, delta: i64) -> Vec<Factor> {
    let mut out: Vec<Factor> = (0..alg.dim)
        .flat_map(|b| (1..=delta.max(0) as u32).map(move |n| (b, n)))
        .map(|(b, n)| Factor::new(alg, b, n))
        .collect();
    out.sort();
    out
}

fn enumerate(
    gens: &[Factor],
    start: usize,
    remaining: i64,
    acc: &mut Vec<Factor>,
    out: &mut Vec<PbwMonomial>,
) {
    if remaining == 0 {
        out.push(PbwMonomial::from_factors(acc.clone()));
        return;
    }
    for i in start..gens.len() {
        let n = gens[i].n as i64;
        if n > remaining {
            continue;
        }
        acc.push(gens[i]);
        enumerate(gens, i, remaining - n, acc, out);
        acc.pop();
    }
}

pub fn weight_space_basis(
    alg: &LieAlgebra,
    delta: i64,
    weight: Option<&[i64]>,
) -> WeightSpaceBasis {
    let mut monomials = Vec::new();
    if delta >= 0 {
        enumerate(
            &generators(alg, delta),
            0,
            delta,
            &mut Vec::new(),
            &mut monomials,
        );
    }
    if let Some(w) = weight {
        monomials.retain(|m| m.stats(alg).weight == w);
    }
    monomials.sort();
    WeightSpaceBasis {
        delta,
        weight: weight.map(<[i64]>::to_vec),
        monomials,
    }
}

/// The degree-`delta` space split by weight.
pub fn weight_spaces(alg: &LieAlgebra, delta: i64) -> BTreeMap<Vec<i64>, WeightSpaceBasis> {
    let all = weight_space_basis(alg, delta, None);
    let mut split: BTreeMap<Vec<i64>, Vec<PbwMonomial>> = BTreeMap::new();
    for m in all.monomials {
        split.entry(m.stats(alg).weight).or_default().push(m);
    }
    split
        .into_iter()
        .map(|(w, monomials)| {
            let basis = WeightSpaceBasis {
                delta,
                weight: Some(w.clone()),
                monomials,
            };
            (w, basis)
        })
        .collect()
}

/// Annihilated by `e_α(0)` for every positive root and by `f_θ(1)`.
pub fn is_singular(module: &VacuumModule, v: &VaVector) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector("singularity test"));
    }
    let alg = module.algebra();
    let raising = (0..alg.num_positive()).all(|r| module.act(alg.e_index(r), 0, v).is_zero());
    Ok(raising && module.act(alg.f_index(alg.theta_index), 1, v).is_zero())
}

/// Operators whose joint kernel is the singular subspace: `e_{α_i}(0)` for
/// simple roots and `f_θ(1)`.
fn constraint_modes(alg: &LieAlgebra) -> Vec<(usize, i64)> {
    let mut ops: Vec<(usize, i64)> = (0..alg.rank).map(|i| (alg.e_index(i), 0)).collect();
    ops.push((alg.f_index(alg.theta_index), 1));
    ops
}

/// Basis of the singular vectors inside one weight space.
pub fn singular_kernel(module: &VacuumModule, space: &WeightSpaceBasis) -> Vec<VaVector> {
    let alg = module.algebra();
    let mut rows: BTreeMap<(usize, PbwMonomial), QRow> = BTreeMap::new();
    for (op, (x, m)) in constraint_modes(alg).into_iter().enumerate() {
        for (col, mono) in space.monomials.iter().enumerate() {
            for (target, c) in module.act_monomial(x, m, mono).iter() {
                rows.entry((op, target.clone()))
                    .or_default()
                    .push((col, c.clone()));
            }
        }
    }
    let rows: Vec<QRow> = rows.into_values().collect();
    echelon_q(&rows, space.len())
        .kernel()
        .into_iter()
        .map(|dense| {
            VaVector::from_terms(
                module.level().clone(),
                dense
                    .into_iter()
                    .zip(&space.monomials)
                    .map(|(c, m)| (m.clone(), c)),
            )
            .normalized()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularVector {
    pub vector: VaVector,
    pub min_depth: i64,
    pub zhu_image: PolyElement,
    pub zhu_nonzero: bool,
}

impl SingularVector {
    fn new(vector: VaVector) -> Self {
        let min_depth = vector.min_depth().unwrap_or(0);
        let zhu_image = grpoisson::zhu_project_vector(&vector);
        let zhu_nonzero = !zhu_image.is_zero();
        SingularVector {
            vector,
            min_depth,
            zhu_image,
            zhu_nonzero,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularReport {
    pub algebra: AlgebraSpec,
    pub level: Q,
    pub delta: i64,
    pub kernel_dim: usize,
    pub vectors: Vec<SingularVector>,
}

/// Singular vectors in degrees `1..=delta_max`, one report per degree.
///
/// Each kernel vector is re-tested against all positive roots; a failure is
/// reported as an internal inconsistency.
pub fn find_singular(module: &VacuumModule, delta_max: i64) -> Result<Vec<SingularReport>> {
    let alg = module.algebra();
    let reports: Vec<Result<SingularReport>> = (1..=delta_max)
        .into_par_iter()
        .map(|delta| {
            let spaces = weight_spaces(alg, delta);
            let mut vectors = Vec::new();
            for space in spaces.values() {
                for v in singular_kernel(module, space) {
                    if !is_singular(module, &v)? {
                        return Err(Error::Inconsistent(format!(
                            "kernel vector at degree {delta} fails the full positive-root test"
                        )));
                    }
                    vectors.push(SingularVector::new(v));
                }
            }
            Ok(SingularReport {
                algebra: alg.spec,
                level: module.level().clone(),
                delta,
                kernel_dim: vectors.len(),
                vectors,
            })
        })
        .collect();
    reports.into_iter().collect()
}

/// `r∨(k + h∨) ∈ ℚ≥0 ∖ {1/m : m ≥ 1}`.
pub fn gorelik_kac_not_simple(alg: &LieAlgebra, level: &Q) -> bool {
    let v = int(alg.lacing) * (level + int(alg.dual_coxeter));
    if v.is_negative() {
        return false;
    }
    !(v.is_positive() && v.numer().is_one())
}

/// `k + h∨ = p/q` in lowest terms, `p, q ≥ 1`, and `p ≥ h∨` when
/// `gcd(r∨, q) = 1`, `p ≥ h` otherwise.
pub fn is_admissible(alg: &LieAlgebra, level: &Q) -> bool {
    let shifted = level + int(alg.dual_coxeter);
    if !shifted.is_positive() {
        return false;
    }
    let p = shifted.numer().clone();
    let q = shifted.denom().clone();
    let bound = if q.gcd(&alg.lacing.into()).is_one() {
        alg.dual_coxeter
    } else {
        alg.coxeter
    };
    p >= bound.into()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonvanishingVerdict {
    pub reports: Vec<SingularReport>,
    pub pass: bool,
    /// First singular vector with vanishing image, by degree.
    pub counterexample: Option<(i64, VaVector)>,
}

/// Checks that every singular vector up to `delta_max` has minimal depth 0,
/// i.e. a nonzero image in `ℂ[g*]`. Refused at the critical level.
pub fn verify_nonvanishing(module: &VacuumModule, delta_max: i64) -> Result<NonvanishingVerdict> {
    if module.is_critical() {
        return Err(Error::CriticalRefused);
    }
    let reports = find_singular(module, delta_max)?;
    let counterexample = reports.iter().find_map(|r| {
        r.vectors
            .iter()
            .find(|v| v.min_depth != 0 || !v.zhu_nonzero)
            .map(|v| (r.delta, v.vector.clone()))
    });
    Ok(NonvanishingVerdict {
        pass: counterexample.is_none(),
        reports,
        counterexample,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub vector: VaVector,
    pub singular: bool,
    pub min_depth: i64,
    pub zhu_image: PolyElement,
}

impl Witness {
    fn new(module: &VacuumModule, vector: VaVector) -> Result<Self> {
        Ok(Witness {
            singular: is_singular(module, &vector)?,
            min_depth: vector.min_depth().ok_or(Error::ZeroVector("depth"))?,
            zhu_image: grpoisson::zhu_project_vector(&vector),
            vector,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedWitness {
    pub j: usize,
    pub polynomial: PolyElement,
    pub depth: i64,
    pub singular: bool,
    pub zhu_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalReport {
    pub sugawara: Witness,
    pub translated: Witness,
    pub graded: Vec<GradedWitness>,
    pub pass: bool,
}

/// At `k = −h∨`: the Sugawara vector `S` is singular of depth 0, while `T·S`
/// is singular of positive depth with zero image; on the graded side `Tʲp₁`
/// is singular of depth `j` for `j ≤ graded_max`.
pub fn critical_counterexample(module: &VacuumModule, graded_max: usize) -> Result<CriticalReport> {
    if !module.is_critical() {
        return Err(Error::NotCritical(crate::rational::fmt_q(module.level())));
    }
    let alg = module.algebra();
    let s = sugawara::sugawara_vector(module);
    let ts = module.translate(&s);
    let sugawara = Witness::new(module, s)?;
    let translated = Witness::new(module, ts)?;
    let p1 = grpoisson::quadratic_casimir(alg);
    let mut graded = Vec::new();
    let mut p = p1;
    for j in 0..=graded_max {
        let depths = p.depths();
        graded.push(GradedWitness {
            j,
            depth: if depths.len() == 1 { depths[0] } else { -1 },
            singular: grpoisson::is_gt_singular(alg, &p),
            zhu_zero: grpoisson::zhu_project(&p).is_zero(),
            polynomial: p.clone(),
        });
        p = grpoisson::translate(alg, &p);
    }
    let pass = sugawara.singular
        && sugawara.min_depth == 0
        && !sugawara.zhu_image.is_zero()
        && translated.singular
        && translated.min_depth >= 1
        && translated.zhu_image.is_zero()
        && graded
            .iter()
            .all(|g| g.singular && g.depth == g.j as i64 && g.zhu_zero == (g.j > 0));
    Ok(CriticalReport {
        sugawara,
        translated,
        graded,
        pass,
    })
}

/// Default search bound by rank.
pub fn default_delta_max(alg: &LieAlgebra) -> i64 {
    match alg.rank {
        1 => 6,
        2 => 4,
        _ => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use std::sync::Arc;

    fn a1() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::from_str_spec("A1").unwrap())
    }

    #[test]
    fn a1_counts() {
        let g = a1();
        let sizes: Vec<usize> = (0..=6)
            .map(|d| weight_space_basis(&g, d, None).len())
            .collect();
        assert_eq!(sizes, vec![1, 3, 9, 22, 51, 108, 221]);
        let w = weight_space_basis(&g, 2, Some(&[0]));
        assert!(w.monomials.iter().all(|m| m.stats(&g).weight == vec![0]));
    }

    #[test]
    fn gorelik_kac_examples() {
        let g = a1();
        assert!(gorelik_kac_not_simple(&g, &frac(-1, 2)));
        assert!(!gorelik_kac_not_simple(&g, &frac(-3, 2)));
        assert!(gorelik_kac_not_simple(&g, &int(-2)));
        assert!(!gorelik_kac_not_simple(&g, &int(-3)));
    }

    #[test]
    fn admissibility_examples() {
        let g = a1();
        assert!(is_admissible(&g, &frac(-1, 2)));
        assert!(is_admissible(&g, &frac(-5, 4)));
        assert!(!is_admissible(&g, &int(-2)));
        assert!(!is_admissible(&g, &frac(-3, 2)));
    }

    #[test]
    fn level_one_singular_vector() {
        let m = VacuumModule::new(a1(), int(1));
        let reports = find_singular(&m, 3).unwrap();
        let dims: Vec<usize> = reports.iter().map(|r| r.kernel_dim).collect();
        assert_eq!(dims, vec![0, 1, 0]);
        let e = m.algebra().e_index(0);
        assert_eq!(
            reports[1].vectors[0].vector,
            m.monomial_vector(m.monomial(&[(e, 1), (e, 1)]))
        );
    }

    #[test]
    fn critical_refusal() {
        let m = VacuumModule::new(a1(), int(-2));
        assert_eq!(verify_nonvanishing(&m, 2), Err(Error::CriticalRefused));
        let m = VacuumModule::new(a1(), int(1));
        assert!(matches!(
            critical_counterexample(&m, 2),
            Err(Error::NotCritical(_))
        ));
    }
}
