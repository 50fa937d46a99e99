//! Sugawara operators on `V^k(g)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pbw::{VaVector, VacuumModule};
use crate::rational::{frac, int, Q};
use crate::rootsys::{BasisKind, Element, LieAlgebra};

/// A vacuum module at non-critical level together with the dual pairs
/// `(x_i, x^i)` of the normalized form.
pub struct SugawaraContext {
    module: Arc<VacuumModule>,
    dual_pairs: Vec<(usize, Element)>,
    /// `1 / (k + h∨)`.
    inv_shifted: Q,
}

impl SugawaraContext {
    pub fn new(module: Arc<VacuumModule>) -> Result<Self> {
        let shifted = module.level() + int(module.algebra().dual_coxeter);
        if shifted.is_zero() {
            return Err(Error::CriticalLevel);
        }
        let dual_pairs = dual_pairs(module.algebra());
        Ok(SugawaraContext {
            module,
            dual_pairs,
            inv_shifted: Q::one() / shifted,
        })
    }

    pub fn module(&self) -> &VacuumModule {
        &self.module
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.module.algebra()
    }

    pub fn level(&self) -> &Q {
        self.module.level()
    }

    pub fn dual_pairs(&self) -> &[(usize, Element)] {
        &self.dual_pairs
    }

    /// `L_n v = 1/(2(k+h∨)) ∑_i ( ∑_{m≥1} x_i(−m) x^i(m+n) + ∑_{m≥0} x^i(n−m) x_i(m) ) v`.
    ///
    /// Annihilation modes beyond the top degree of `v` act by zero, which
    /// bounds both sums.
    pub fn l(&self, n: i64, v: &VaVector) -> VaVector {
        let module = &*self.module;
        let mut out = module.zero();
        let top = max_degree(v);
        if top < 0 {
            return out;
        }
        for (x, dual) in &self.dual_pairs {
            // x_i(−m) x^i(m+n), m ≥ 1, needs m + n ≤ top
            for m in 1..=(top - n).max(0) {
                let inner = module.act_element(dual, m + n, v);
                if !inner.is_zero() {
                    out.add_scaled(&module.act(*x, -m, &inner), &Q::one());
                }
            }
            // x^i(n−m) x_i(m), 0 ≤ m ≤ top
            for m in 0..=top {
                let inner = module.act(*x, m, v);
                if !inner.is_zero() {
                    out.add_scaled(&module.act_element(dual, n - m, &inner), &Q::one());
                }
            }
        }
        out.scaled(&(&self.inv_shifted * frac(1, 2)))
    }

    /// `1/(k+h∨) ( ∑_a h_a(−1) h^a(0) + ∑_{α>0} e_α(−1) f_α(0) ) v`.
    pub fn ltilde_minus1(&self, v: &VaVector) -> VaVector {
        let module = &*self.module;
        let alg = module.algebra();
        let mut out = module.zero();
        for (x, dual) in &self.dual_pairs {
            if let BasisKind::Cartan(_) = alg.kind(*x) {
                let inner = module.act_element(dual, 0, v);
                out.add_scaled(&module.act(*x, -1, &inner), &Q::one());
            }
        }
        for r in 0..alg.num_positive() {
            let inner = module.act(alg.f_index(r), 0, v);
            if !inner.is_zero() {
                out.add_scaled(&module.act(alg.e_index(r), -1, &inner), &Q::one());
            }
        }
        out.scaled(&self.inv_shifted)
    }

    /// `k·dim g / (k + h∨)`.
    pub fn central_charge(&self) -> Q {
        self.level() * int(self.algebra().dim as i64) * &self.inv_shifted
    }
}

/// `c(k) = k·dim g / (k + h∨)`; errors at the critical level.
pub fn central_charge(alg: &LieAlgebra, level: &Q) -> Result<Q> {
    let shifted = level + int(alg.dual_coxeter);
    if shifted.is_zero() {
        return Err(Error::CriticalLevel);
    }
    Ok(level * int(alg.dim as i64) / shifted)
}

/// `(x_i, x^i)` with `(x_i | x^j) = δ_ij`.
pub fn dual_pairs(alg: &LieAlgebra) -> Vec<(usize, Element)> {
    (0..alg.dim).map(|i| (i, alg.dual(i))).collect()
}

/// `S = ½ ∑ x_i(−1) x^i(−1) 𝟏`, defined at every level.
pub fn sugawara_vector(module: &VacuumModule) -> VaVector {
    let mut out = module.zero();
    let vac = module.vacuum();
    for (x, dual) in dual_pairs(module.algebra()) {
        let inner = module.act_element(&dual, -1, &vac);
        out.add_scaled(&module.act(x, -1, &inner), &frac(1, 2));
    }
    out
}

fn max_degree(v: &VaVector) -> i64 {
    v.terms().map(|(m, _)| m.degree()).max().unwrap_or(-1)
}
