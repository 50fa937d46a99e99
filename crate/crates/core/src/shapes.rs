//! Shape checks on monomials of singular vectors and on `L̃₋₁` images.
//!
//! Here the degree of a block means its number of factors. Every check
//! returns `Err` with a description of the first offending monomial.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::grpoisson;
use crate::pbw::{PbwMonomial, VaVector};
use crate::rational::{int, Q};
use crate::rootsys::LieAlgebra;
use crate::sugawara::SugawaraContext;
use crate::syntax::format_monomial;

pub type CheckResult = std::result::Result<(), String>;

/// Block data of a monomial: the three blocks plus `deg0m1`.
#[derive(Debug, Clone)]
pub struct Blocks {
    pub plus: PbwMonomial,
    pub minus: PbwMonomial,
    pub zero: PbwMonomial,
    pub deg0m1: usize,
}

impl Blocks {
    pub fn of(alg: &LieAlgebra, m: &PbwMonomial) -> Self {
        let (plus, minus, zero) = m.decompose(alg);
        Blocks {
            deg0m1: m.deg0m1(alg),
            plus,
            minus,
            zero,
        }
    }
}

fn fail(alg: &LieAlgebra, what: &str, z: &PbwMonomial, x: &PbwMonomial) -> String {
    format!(
        "{what}: input {} produced {}",
        format_monomial(alg, z),
        format_monomial(alg, x)
    )
}

/// Conditions (a)–(d) on every monomial `x` of `L̃₋₁ z`.
pub fn check_ltilde_shape(ctx: &SugawaraContext, z: &PbwMonomial) -> CheckResult {
    let alg = ctx.algebra();
    let out = ctx.ltilde_minus1(&ctx.module().monomial_vector(z.clone()));
    let zb = Blocks::of(alg, z);
    for (x, _) in out.terms() {
        let xb = Blocks::of(alg, x);
        if xb.plus.len() > zb.plus.len() + 1 || xb.zero.len() > zb.zero.len() + 1 {
            return Err(fail(alg, "(a) block growth", z, x));
        }
        if !zb.minus.is_vacuum() && xb.minus.is_vacuum() {
            return Err(fail(alg, "(b) minus block vanished", z, x));
        }
        if xb.minus == zb.minus && !(xb.zero.len() == zb.zero.len() + 1 || xb.zero == zb.zero) {
            return Err(fail(alg, "(c) Cartan block changed", z, x));
        }
        if xb.zero.len() == zb.zero.len() + 1
            && !(xb.minus == zb.minus && xb.plus.len() <= zb.plus.len())
        {
            return Err(fail(alg, "(d) Cartan growth without fixed blocks", z, x));
        }
    }
    Ok(())
}

/// Whether `z` has trivial minus block and a depth-0 plus block.
pub fn is_plus_shallow(alg: &LieAlgebra, z: &PbwMonomial) -> bool {
    let b = Blocks::of(alg, z);
    b.minus.is_vacuum() && b.plus.depth() == 0
}

/// For `z` with trivial minus block and depth-0 plus block, every monomial
/// `y` of `L̃₋₁ z` falls in one of four cases.
pub fn check_ltilde_cases(ctx: &SugawaraContext, z: &PbwMonomial) -> CheckResult {
    let alg = ctx.algebra();
    if !is_plus_shallow(alg, z) {
        return Err(format!(
            "precondition fails for {}",
            format_monomial(alg, z)
        ));
    }
    let out = ctx.ltilde_minus1(&ctx.module().monomial_vector(z.clone()));
    let zb = Blocks::of(alg, z);
    for (y, _) in out.terms() {
        let yb = Blocks::of(alg, y);
        let minus_trivial = yb.minus.is_vacuum();
        let case1 = minus_trivial
            && yb.plus.depth() >= 1
            && yb.plus.len() <= zb.plus.len()
            && yb.zero == zb.zero;
        let case2 = minus_trivial
            && yb.plus.depth() == 0
            && yb.plus.len() < zb.plus.len()
            && yb.zero.len() > zb.zero.len()
            && yb.deg0m1 == zb.deg0m1;
        let case3 = minus_trivial
            && yb.plus.depth() >= 1
            && yb.plus.len() < zb.plus.len()
            && yb.deg0m1 == zb.deg0m1 + 1;
        let case4 = !minus_trivial;
        if !(case1 || case2 || case3 || case4) {
            return Err(fail(alg, "no case applies", z, y));
        }
    }
    Ok(())
}

/// For `z` with trivial minus block, the part of `L̃₋₁ z` with one more
/// Cartan factor at mode −1 and no fewer raising factors equals
/// `(k+h∨)⁻¹ z⁽⁺⁾ H(−1) z⁽⁰⁾𝟏`, where `H` is the sum of the roots of the
/// raising factors at modes ≤ −2. No term gains two such Cartan factors.
pub fn check_ltilde_leading_term(ctx: &SugawaraContext, z: &PbwMonomial) -> CheckResult {
    let alg = ctx.algebra();
    let module = ctx.module();
    let zb = Blocks::of(alg, z);
    if !zb.minus.is_vacuum() {
        return Err(format!(
            "precondition fails for {}",
            format_monomial(alg, z)
        ));
    }
    let out = ctx.ltilde_minus1(&module.monomial_vector(z.clone()));
    for (y, _) in out.terms() {
        if y.deg0m1(alg) > zb.deg0m1 + 1 {
            return Err(fail(alg, "two Cartan factors gained", z, y));
        }
    }
    let leading = out.filter(|y| {
        let yb = Blocks::of(alg, y);
        yb.deg0m1 == zb.deg0m1 + 1 && yb.plus.len() >= zb.plus.len()
    });
    let mut root = vec![0i64; alg.rank];
    for f in zb.plus.factors().iter().filter(|f| f.n >= 2) {
        for (r, c) in root.iter_mut().zip(alg.weight(f.basis as usize)) {
            *r += c;
        }
    }
    let h = alg.root_to_cartan(&root);
    let mut expected = module.zero();
    for (a, c) in h.iter() {
        let mut factors = z.factors().to_vec();
        factors.push(module.factor(a, 1));
        expected.add_term(PbwMonomial::from_factors(factors), c.clone());
    }
    let c = Q::one() / (ctx.level() + int(alg.dual_coxeter));
    if leading != expected.scaled(&c) {
        return Err(format!(
            "leading term mismatch for {}",
            format_monomial(alg, z)
        ));
    }
    Ok(())
}

/// Among the minimal-depth monomials of `w` maximizing `deg0m1`, the minus
/// block is trivial.
pub fn check_minus_block_triviality(alg: &LieAlgebra, w: &VaVector) -> CheckResult {
    let sym = grpoisson::symbol(w).map_err(|e: Error| e.to_string())?;
    let best = sym.terms().map(|(m, _)| m.deg0m1(alg)).max().unwrap_or(0);
    for (m, _) in sym.terms().filter(|(m, _)| m.deg0m1(alg) == best) {
        if !Blocks::of(alg, m).minus.is_vacuum() {
            return Err(format!(
                "maximal monomial {} has a lowering factor",
                format_monomial(alg, m)
            ));
        }
    }
    Ok(())
}

/// Monomials of `w` with trivial minus block, maximal `deg0m1` among those,
/// then maximal number of raising factors.
pub fn extremal_monomials(alg: &LieAlgebra, w: &VaVector) -> Vec<PbwMonomial> {
    let j1: Vec<(&PbwMonomial, Blocks)> = w
        .terms()
        .map(|(m, _)| (m, Blocks::of(alg, m)))
        .filter(|(_, b)| b.minus.is_vacuum())
        .collect();
    let d0 = j1.iter().map(|(_, b)| b.deg0m1).max().unwrap_or(0);
    let j0: Vec<_> = j1.into_iter().filter(|(_, b)| b.deg0m1 == d0).collect();
    let dplus = j0.iter().map(|(_, b)| b.plus.len()).max().unwrap_or(0);
    j0.into_iter()
        .filter(|(_, b)| b.plus.len() == dplus)
        .map(|(m, _)| m.clone())
        .collect()
}

/// The extremal monomials exist, and each has depth 0 in its raising block
/// and overall.
pub fn check_extremal_depth(alg: &LieAlgebra, w: &VaVector) -> CheckResult {
    let ext = extremal_monomials(alg, w);
    if ext.is_empty() {
        return Err("no monomial with trivial minus block".into());
    }
    for m in &ext {
        let b = Blocks::of(alg, m);
        if b.plus.depth() != 0 {
            return Err(format!(
                "raising block of {} has positive depth",
                format_monomial(alg, m)
            ));
        }
        if m.depth() != 0 {
            return Err(format!("{} has positive depth", format_monomial(alg, m)));
        }
    }
    Ok(())
}

/// `L₋₁ w = L̃₋₁ w`.
pub fn check_ltilde_agrees(ctx: &SugawaraContext, w: &VaVector) -> CheckResult {
    let diff = ctx.l(-1, w).sub(&ctx.ltilde_minus1(w));
    if diff.is_zero() {
        Ok(())
    } else {
        Err(format!(
            "L(-1) and truncated L(-1) differ in {} terms",
            diff.len()
        ))
    }
}

/// Runs every check that applies to a singular vector.
pub fn check_singular_vector(ctx: &SugawaraContext, w: &VaVector) -> CheckResult {
    let alg = ctx.algebra();
    check_ltilde_agrees(ctx, w)?;
    check_minus_block_triviality(alg, w)?;
    check_extremal_depth(alg, w)?;
    for (z, c) in w.terms() {
        debug_assert!(!c.is_zero());
        check_ltilde_shape(ctx, z)?;
    }
    Ok(())
}
