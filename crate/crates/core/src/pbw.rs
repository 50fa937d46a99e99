//! PBW monomials and vectors of `V^k(g)`, with the exact `ĝ`-action.
//!
//! A PBW monomial is a multiset of generators `x(−n)`, `n ≥ 1`, kept sorted
//! in the block order `z⁽⁺⁾ z⁽⁻⁾ z⁽⁰⁾ 𝟏`: raising root vectors first, then
//! lowering, then Cartan; inside a block by generator index, then by `n`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::rational::{int, Q};
use crate::rootsys::{BasisKind, Element, LieAlgebra};

/// The generator `x(n) = x ⊗ tⁿ` for a basis vector `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    pub basis: usize,
    pub n: i64,
}

impl Mode {
    pub fn new(basis: usize, n: i64) -> Self {
        Mode { basis, n }
    }
}

/// A creation operator `x(−n)` inside a monomial. Ordered by PBW rank, then `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub rank: u32,
    pub basis: u32,
    /// The mode is `−n`; always `n ≥ 1`.
    pub n: u32,
}

impl Factor {
    pub fn new(alg: &LieAlgebra, basis: usize, n: u32) -> Self {
        debug_assert!(n >= 1);
        Factor {
            rank: alg.pbw_rank(basis) as u32,
            basis: basis as u32,
            n,
        }
    }

    pub fn mode(&self) -> Mode {
        Mode::new(self.basis as usize, -(self.n as i64))
    }
}

/// Statistics of a PBW monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialStats {
    /// Conformal degree `Δ = ∑ n_i`.
    pub degree: i64,
    /// `∑ (n_i − 1)`.
    pub depth: i64,
    /// Number of Cartan factors at mode −1.
    pub deg0m1: usize,
    /// Weight in simple-root coordinates.
    pub weight: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial {
    factors: Vec<Factor>,
}

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial {
            factors: Vec::new(),
        }
    }

    /// Builds a monomial from an unordered multiset of factors.
    pub fn from_factors(mut factors: Vec<Factor>) -> Self {
        factors.sort();
        PbwMonomial { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_vacuum(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of factors (the PBW filtration degree).
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|f| f.n as i64).sum()
    }

    pub fn depth(&self) -> i64 {
        self.factors.iter().map(|f| f.n as i64 - 1).sum()
    }

    pub fn is_canonical(&self) -> bool {
        self.factors.windows(2).all(|w| w[0] <= w[1]) && self.factors.iter().all(|f| f.n >= 1)
    }

    pub fn stats(&self, alg: &LieAlgebra) -> MonomialStats {
        let mut weight = vec![0i64; alg.rank];
        let mut deg0m1 = 0;
        for f in &self.factors {
            for (w, c) in weight.iter_mut().zip(alg.weight(f.basis as usize)) {
                *w += c;
            }
            if f.n == 1 && matches!(alg.kind(f.basis as usize), BasisKind::Cartan(_)) {
                deg0m1 += 1;
            }
        }
        MonomialStats {
            degree: self.degree(),
            depth: self.depth(),
            deg0m1,
            weight,
        }
    }

    pub fn deg0m1(&self, alg: &LieAlgebra) -> usize {
        self.factors
            .iter()
            .filter(|f| f.n == 1 && (f.basis as usize) < alg.rank)
            .count()
    }

    /// Splits into the raising, lowering and Cartan blocks.
    pub fn decompose(&self, alg: &LieAlgebra) -> (PbwMonomial, PbwMonomial, PbwMonomial) {
        let mut blocks = (Vec::new(), Vec::new(), Vec::new());
        for f in &self.factors {
            match alg.kind(f.basis as usize) {
                BasisKind::Raising(_) => blocks.0.push(*f),
                BasisKind::Lowering(_) => blocks.1.push(*f),
                BasisKind::Cartan(_) => blocks.2.push(*f),
            }
        }
        (
            PbwMonomial { factors: blocks.0 },
            PbwMonomial { factors: blocks.1 },
            PbwMonomial { factors: blocks.2 },
        )
    }

    fn split_first(&self) -> Option<(Factor, PbwMonomial)> {
        let (first, rest) = self.factors.split_first()?;
        Some((
            *first,
            PbwMonomial {
                factors: rest.to_vec(),
            },
        ))
    }

    fn prepend(&self, f: Factor) -> PbwMonomial {
        let mut factors = Vec::with_capacity(self.factors.len() + 1);
        factors.push(f);
        factors.extend_from_slice(&self.factors);
        PbwMonomial { factors }
    }
}

/// Finite linear combination of PBW monomials at a fixed level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VaVector {
    level: Q,
    terms: BTreeMap<PbwMonomial, Q>,
}

impl VaVector {
    pub fn zero(level: Q) -> Self {
        VaVector {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(level: Q) -> Self {
        Self::monomial(level, PbwMonomial::vacuum(), Q::one())
    }

    pub fn monomial(level: Q, m: PbwMonomial, coeff: Q) -> Self {
        let mut v = Self::zero(level);
        v.add_term(m, coeff);
        v
    }

    pub fn from_terms(level: Q, terms: impl IntoIterator<Item = (PbwMonomial, Q)>) -> Self {
        let mut v = Self::zero(level);
        for (m, c) in terms {
            v.add_term(m, c);
        }
        v
    }

    pub fn level(&self) -> &Q {
        &self.level
    }

    pub fn add_term(&mut self, m: PbwMonomial, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &VaVector, scale: &Q) {
        assert_eq!(self.level, other.level, "level mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &Q) -> VaVector {
        let mut out = VaVector::zero(self.level.clone());
        out.add_scaled(self, scale);
        out
    }

    pub fn add(&self, other: &VaVector) -> VaVector {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &VaVector) -> VaVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
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

    pub fn coeff(&self, m: &PbwMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn min_depth(&self) -> Option<i64> {
        self.terms.keys().map(PbwMonomial::depth).min()
    }

    /// Part of the vector made of monomials satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&PbwMonomial) -> bool) -> VaVector {
        VaVector {
            level: self.level.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Whether every term has conformal degree `delta`.
    pub fn is_homogeneous(&self, delta: i64) -> bool {
        self.terms.keys().all(|m| m.degree() == delta)
    }

    /// Rescales so that the first (canonical order) coefficient is 1.
    pub fn normalized(&self) -> VaVector {
        match self.terms.values().next() {
            Some(c) => self.scaled(&(Q::one() / c)),
            None => self.clone(),
        }
    }
}

type Terms = Vec<(PbwMonomial, Q)>;

/// `V^k(g)` for a fixed algebra and level: the straightening engine.
///
/// The memo table maps `(x, m, monomial)` to `x(m)·monomial`; it is a pure
/// cache shared behind a lock.
pub struct VacuumModule {
    alg: Arc<LieAlgebra>,
    level: Q,
    cache: RwLock<HashMap<(u32, i64, PbwMonomial), Arc<Terms>>>,
}

impl VacuumModule {
    pub fn new(alg: Arc<LieAlgebra>, level: Q) -> Self {
        VacuumModule {
            alg,
            level,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<LieAlgebra> {
        Arc::clone(&self.alg)
    }

    pub fn level(&self) -> &Q {
        &self.level
    }

    pub fn is_critical(&self) -> bool {
        self.level == int(-self.alg.dual_coxeter)
    }

    pub fn vacuum(&self) -> VaVector {
        VaVector::vacuum(self.level.clone())
    }

    pub fn zero(&self) -> VaVector {
        VaVector::zero(self.level.clone())
    }

    pub fn factor(&self, basis: usize, n: u32) -> Factor {
        Factor::new(&self.alg, basis, n)
    }

    /// Monomial from creation modes given in any order (commutative read-off).
    pub fn monomial(&self, modes: &[(usize, u32)]) -> PbwMonomial {
        PbwMonomial::from_factors(modes.iter().map(|(b, n)| self.factor(*b, *n)).collect())
    }

    pub fn monomial_vector(&self, m: PbwMonomial) -> VaVector {
        VaVector::monomial(self.level.clone(), m, Q::one())
    }

    /// Left action of `x(m)` on `v`, re-expressed in the PBW basis.
    pub fn act(&self, x: usize, m: i64, v: &VaVector) -> VaVector {
        assert_eq!(
            v.level, self.level,
            "vector level differs from module level"
        );
        let mut out = self.zero();
        for (mono, c) in &v.terms {
            for (res, d) in self.act_monomial(x, m, mono).iter() {
                out.add_term(res.clone(), c * d);
            }
        }
        out
    }

    /// Action of `x(m)` for an arbitrary element `x` of `g`.
    pub fn act_element(&self, x: &Element, m: i64, v: &VaVector) -> VaVector {
        let mut out = self.zero();
        for (b, c) in x.iter() {
            out.add_scaled(&self.act(b, m, v), c);
        }
        out
    }

    /// `word[0] ∘ word[1] ∘ … ∘ word[r−1]` applied to the vacuum.
    pub fn normal_order(&self, word: &[Mode]) -> VaVector {
        let mut v = self.vacuum();
        for mode in word.iter().rev() {
            v = self.act(mode.basis, mode.n, &v);
        }
        v
    }

    /// Applies a word of modes to `v` (rightmost acts first).
    pub fn apply_word(&self, word: &[Mode], v: &VaVector) -> VaVector {
        let mut v = v.clone();
        for mode in word.iter().rev() {
            v = self.act(mode.basis, mode.n, &v);
        }
        v
    }

    pub fn act_monomial(&self, x: usize, m: i64, mono: &PbwMonomial) -> Arc<Terms> {
        let key = (x as u32, m, mono.clone());
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Arc::clone(hit);
        }
        let mut acc: BTreeMap<PbwMonomial, Q> = BTreeMap::new();
        self.act_uncached(x, m, mono, &mut acc);
        let terms: Arc<Terms> = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, Arc::clone(&terms));
        terms
    }

    fn accumulate(acc: &mut BTreeMap<PbwMonomial, Q>, terms: &Terms, scale: &Q) {
        for (m, c) in terms {
            let v = c * scale;
            match acc.get_mut(m) {
                Some(existing) => *existing += v,
                None => {
                    acc.insert(m.clone(), v);
                }
            }
        }
    }

    fn act_uncached(
        &self,
        x: usize,
        m: i64,
        mono: &PbwMonomial,
        acc: &mut BTreeMap<PbwMonomial, Q>,
    ) {
        let alg = &*self.alg;
        if m < 0 {
            let f = Factor::new(alg, x, (-m) as u32);
            let Some((first, rest)) = mono.split_first() else {
                acc.insert(mono.prepend(f), Q::one());
                return;
            };
            if f <= first {
                acc.insert(mono.prepend(f), Q::one());
                return;
            }
            // x(m) y rest = y (x(m) rest) + [x, y](m − n) rest
            let inner = self.act_monomial(x, m, &rest);
            for (mid, c) in inner.iter() {
                let outer = self.act_monomial(first.basis as usize, -(first.n as i64), mid);
                Self::accumulate(acc, &outer, c);
            }
            let br = alg.bracket_basis(x, first.basis as usize);
            for (z, c) in br.iter() {
                let t = self.act_monomial(z, m - first.n as i64, &rest);
                Self::accumulate(acc, &t, c);
            }
            return;
        }
        let Some((first, rest)) = mono.split_first() else {
            return;
        };
        let y = first.basis as usize;
        let n = first.n as i64;
        // [x(m), y(−n)] = [x, y](m − n) + m (x|y) δ_{m,n} k
        let br = alg.bracket_basis(x, y);
        for (z, c) in br.iter() {
            let t = self.act_monomial(z, m - n, &rest);
            Self::accumulate(acc, &t, c);
        }
        if m == n {
            let central = int(m) * alg.form_basis(x, y) * &self.level;
            if !central.is_zero() {
                Self::accumulate(acc, &vec![(rest.clone(), Q::one())], &central);
            }
        }
        // y(−n) (x(m) rest)
        let inner = self.act_monomial(x, m, &rest);
        for (mid, c) in inner.iter() {
            let outer = self.act_monomial(y, -n, mid);
            Self::accumulate(acc, &outer, c);
        }
    }

    /// The translation operator `T`: `T𝟏 = 0`, `[T, x(−n)] = n x(−n−1)`.
    /// Defined at every level, including the critical one.
    pub fn translate(&self, v: &VaVector) -> VaVector {
        let mut out = self.zero();
        for (mono, c) in &v.terms {
            out.add_scaled(&self.translate_monomial(mono), c);
        }
        out
    }

    fn translate_monomial(&self, mono: &PbwMonomial) -> VaVector {
        let Some((first, rest)) = mono.split_first() else {
            return self.zero();
        };
        let y = first.basis as usize;
        let n = first.n as i64;
        let rest_v = self.monomial_vector(rest);
        let mut out = self.act(y, -n - 1, &rest_v).scaled(&int(n));
        let t_rest = self.translate_monomial(&PbwMonomial {
            factors: mono.factors[1..].to_vec(),
        });
        out.add_scaled(&self.act(y, -n, &t_rest), &Q::one());
        out
    }

    /// Number of memoized entries.
    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}
