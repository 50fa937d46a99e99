//! Finite simple Lie algebras with exact rational structure constants.
//!
//! The basis is `h_1..h_l` (simple coroots), `e_{β_1}..e_{β_q}`,
//! `f_{β_1}..f_{β_q}` in that index order. Positive roots are sorted by
//! height, ties broken by decreasing simple-root coordinates so that
//! `β_i = α_i` for `i <= l`.
//!
//! Root vectors are defined by `e_β = [e_{α_i}, e_{β−α_i}]` where `α_i` is the
//! first simple root with `β − α_i` a root (the extraspecial pair of `β`),
//! and `f_β` is then rescaled so that `(e_β|f_β) = 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan type such as `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    pub rank: usize,
}

impl AlgebraSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        let spec = AlgebraSpec { family, rank };
        if ok {
            Ok(spec)
        } else {
            Err(Error::InvalidAlgebra(
                spec.to_string(),
                "rank not allowed for this family".into(),
            ))
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = |why: &str| Error::InvalidAlgebra(s.to_string(), why.to_string());
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad("expected a family letter A-G")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad("expected a positive rank after the family letter"))?;
        AlgebraSpec::new(family, rank)
    }
}

/// Cartan matrix with `A[i][j] = <α_i^∨, α_j>` in Bourbaki numbering.
pub fn cartan_matrix(spec: AlgebraSpec) -> Vec<Vec<i64>> {
    let n = spec.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match spec.family {
        Family::A | Family::B | Family::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::G => link(0, 1),
    }
    match spec.family {
        Family::B => a[n - 1][n - 2] = -2,
        Family::C => a[n - 2][n - 1] = -2,
        Family::F => a[2][1] = -2,
        Family::G => a[0][1] = -3,
        _ => {}
    }
    a
}

/// Sparse element of `g` in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Element(BTreeMap<usize, Q>);

impl Element {
    pub fn zero() -> Self {
        Element(BTreeMap::new())
    }

    pub fn basis(index: usize) -> Self {
        Self::term(index, Q::one())
    }

    pub fn term(index: usize, coeff: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(index, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, index: usize, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(index) {
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

    pub fn add_scaled(&mut self, other: &Element, scale: &Q) {
        for (i, c) in &other.0 {
            self.add_term(*i, c * scale);
        }
    }

    pub fn scaled(&self, scale: &Q) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Q {
        self.0.get(&index).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        for (i, c) in &self.0 {
            v[*i] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[Q]) -> Self {
        Self::from_terms(v.iter().enumerate().map(|(i, c)| (i, c.clone())))
    }
}

/// Which part of the triangular decomposition a basis vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKind {
    /// Simple coroot `h_a`.
    Cartan(usize),
    /// `e_{β_i}`.
    Raising(usize),
    /// `f_{β_i}`.
    Lowering(usize),
}

/// Immutable description of a simple Lie algebra.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub spec: AlgebraSpec,
    pub dim: usize,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
    pub theta_index: usize,
    /// `(α_a|α_a)/2`; long roots have value 1.
    pub half_lengths: Vec<Q>,
    /// `(h_a|h_b)` for simple coroots.
    pub gram: Vec<Vec<Q>>,
    pub gram_inverse: Vec<Vec<Q>>,
    pub coxeter: i64,
    pub dual_coxeter: i64,
    pub lacing: i64,
    root_lookup: HashMap<Vec<i64>, usize>,
    /// `table[a * dim + b] = [x_a, x_b]`.
    table: Vec<Element>,
}

impl LieAlgebra {
    pub fn build(spec: AlgebraSpec) -> Self {
        let spec = AlgebraSpec::new(spec.family, spec.rank).expect("validated spec");
        let cartan = cartan_matrix(spec);
        let rank = spec.rank;
        let half_lengths = symmetrizer(&cartan);
        let positive_roots = enumerate_roots(&cartan);
        let q = positive_roots.len();
        let dim = rank + 2 * q;
        let heights: Vec<i64> = positive_roots.iter().map(|r| r.iter().sum()).collect();
        let root_lookup: HashMap<Vec<i64>, usize> = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let theta_index = q - 1;

        let gram: Vec<Vec<Q>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| int(cartan[i][j]) / &half_lengths[j])
                    .collect()
            })
            .collect();
        let gram_inverse = invert(&gram);

        let theta = &positive_roots[theta_index];
        let coxeter = heights[theta_index] + 1;
        let dual_height: Q = theta
            .iter()
            .zip(&half_lengths)
            .map(|(c, d)| int(*c) * d)
            .sum();
        assert!(dual_height.is_integer());
        let dual_coxeter = 1 + dual_height.to_integer().try_into().unwrap_or(0i64);
        let shortest = half_lengths.iter().min().cloned().unwrap();
        let lacing = (Q::one() / shortest)
            .to_integer()
            .try_into()
            .unwrap_or(1i64);

        let mut alg = LieAlgebra {
            spec,
            dim,
            rank,
            cartan,
            positive_roots,
            heights,
            theta_index,
            half_lengths,
            gram,
            gram_inverse,
            coxeter,
            dual_coxeter,
            lacing,
            root_lookup,
            table: Vec::new(),
        };
        alg.table = alg.structure_table();
        alg
    }

    pub fn from_str_spec(text: &str) -> Result<Self> {
        Ok(Self::build(text.parse()?))
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn cartan_index(&self, a: usize) -> usize {
        a
    }

    pub fn e_index(&self, root: usize) -> usize {
        self.rank + root
    }

    pub fn f_index(&self, root: usize) -> usize {
        self.rank + self.num_positive() + root
    }

    pub fn kind(&self, index: usize) -> BasisKind {
        let q = self.num_positive();
        if index < self.rank {
            BasisKind::Cartan(index)
        } else if index < self.rank + q {
            BasisKind::Raising(index - self.rank)
        } else {
            BasisKind::Lowering(index - self.rank - q)
        }
    }

    /// Position in the PBW order `e_{β_1}.. e_{β_q}, f_{β_1}.. f_{β_q}, h_1.. h_l`.
    pub fn pbw_rank(&self, index: usize) -> usize {
        let q = self.num_positive();
        match self.kind(index) {
            BasisKind::Raising(i) => i,
            BasisKind::Lowering(i) => q + i,
            BasisKind::Cartan(a) => 2 * q + a,
        }
    }

    pub fn index_of_pbw_rank(&self, rank: usize) -> usize {
        let q = self.num_positive();
        if rank < q {
            self.e_index(rank)
        } else if rank < 2 * q {
            self.f_index(rank - q)
        } else {
            rank - 2 * q
        }
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_lookup.get(coords).copied()
    }

    /// Root-lattice weight of a basis vector in simple-root coordinates.
    pub fn weight(&self, index: usize) -> Vec<i64> {
        match self.kind(index) {
            BasisKind::Cartan(_) => vec![0; self.rank],
            BasisKind::Raising(i) => self.positive_roots[i].clone(),
            BasisKind::Lowering(i) => self.positive_roots[i].iter().map(|c| -c).collect(),
        }
    }

    /// `λ(h_a)` for `λ` in simple-root coordinates.
    pub fn pair_coroot(&self, a: usize, weight: &[i64]) -> i64 {
        weight.iter().zip(&self.cartan[a]).map(|(c, x)| c * x).sum()
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &Element {
        &self.table[a * self.dim + b]
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(self.bracket_basis(a, b), &(ca * cb));
            }
        }
        out
    }

    /// Normalized invariant form on basis vectors.
    pub fn form_basis(&self, a: usize, b: usize) -> Q {
        match (self.kind(a), self.kind(b)) {
            (BasisKind::Cartan(i), BasisKind::Cartan(j)) => self.gram[i][j].clone(),
            (BasisKind::Raising(i), BasisKind::Lowering(j))
            | (BasisKind::Lowering(i), BasisKind::Raising(j))
                if i == j =>
            {
                Q::one()
            }
            _ => Q::zero(),
        }
    }

    pub fn form(&self, x: &Element, y: &Element) -> Q {
        let mut acc = Q::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let f = self.form_basis(a, b);
                if !f.is_zero() {
                    acc += ca * cb * f;
                }
            }
        }
        acc
    }

    /// The form-dual of basis vector `index`: `(x_i | dual(x_j)) = δ_ij`.
    pub fn dual(&self, index: usize) -> Element {
        match self.kind(index) {
            BasisKind::Cartan(a) => {
                Element::from_terms((0..self.rank).map(|b| (b, self.gram_inverse[a][b].clone())))
            }
            BasisKind::Raising(i) => Element::basis(self.f_index(i)),
            BasisKind::Lowering(i) => Element::basis(self.e_index(i)),
        }
    }

    /// Element of the Cartan subalgebra identified with the root `coords`
    /// through the normalized form.
    pub fn root_to_cartan(&self, coords: &[i64]) -> Element {
        // α_j ↔ d_j h_j where d_j = (α_j|α_j)/2.
        Element::from_terms(
            coords
                .iter()
                .enumerate()
                .map(|(j, c)| (j, int(*c) * &self.half_lengths[j])),
        )
    }

    /// Coroot `θ^∨` of the highest root.
    pub fn theta_coroot(&self) -> Element {
        self.root_to_cartan(&self.positive_roots[self.theta_index])
    }

    /// Matrix of `ad(x)` as columns: `column[b] = [x, x_b]`.
    pub fn ad(&self, x: &Element) -> Vec<Element> {
        (0..self.dim)
            .map(|b| self.bracket(x, &Element::basis(b)))
            .collect()
    }

    fn structure_table(&self) -> Vec<Element> {
        let raw = RawStructure::new(self);
        let q = self.num_positive();
        // f_β is rescaled by 1/c_β so that (e_β|f_β) = 1.
        let mut scale = vec![Q::one(); self.dim];
        for i in 0..q {
            let h = raw.columns[self.e_index(i)][self.f_index(i)].clone();
            let root = &self.positive_roots[i];
            let a = (0..self.rank)
                .find(|a| self.pair_coroot(*a, root) != 0)
                .expect("root pairs nontrivially with some coroot");
            let hk = Element::basis(a);
            let c = self.form(&hk, &h) / int(self.pair_coroot(a, root));
            scale[self.f_index(i)] = Q::one() / c;
        }
        let mut table = Vec::with_capacity(self.dim * self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                let raw_bracket = &raw.columns[a][b];
                let factor = &scale[a] * &scale[b];
                let mut out = Element::zero();
                for (c, v) in raw_bracket.iter() {
                    out.add_term(c, v * &factor / &scale[c]);
                }
                table.push(out);
            }
        }
        table
    }
}

/// `(α_a|α_a)/2` from a symmetrization of the Cartan matrix, long roots at 1.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<Q> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * int(cartan[i][j]) / int(cartan[j][i]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Q> = d
        .into_iter()
        .map(|x| x.expect("connected diagram"))
        .collect();
    let longest = d.iter().max().cloned().unwrap();
    d.into_iter().map(|x| x / &longest).collect()
}

fn enumerate_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    let mut known: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut cursor = 0;
    while cursor < roots.len() {
        let beta = roots[cursor].clone();
        cursor += 1;
        for i in 0..n {
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if known.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|r| !a[*r][col].is_zero())
            .expect("invertible");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Brackets in the unnormalized basis where `f_β = [f_{α_i}, f_{β−α_i}]`.
struct RawStructure {
    /// `columns[a][b] = [x_a, x_b]`.
    columns: Vec<Vec<Element>>,
}

impl RawStructure {
    fn new(alg: &LieAlgebra) -> Self {
        let n = alg.rank;
        let q = alg.num_positive();
        let roots = &alg.positive_roots;
        let shift = |r: &[i64], i: usize, by: i64| -> Vec<i64> {
            let mut s = r.to_vec();
            s[i] += by;
            s
        };
        // Defining simple root of each non-simple positive root.
        let defining: Vec<Option<usize>> = roots
            .iter()
            .map(|r| {
                if r.iter().sum::<i64>() == 1 {
                    None
                } else {
                    (0..n).find(|i| alg.root_index(&shift(r, *i, -1)).is_some())
                }
            })
            .collect();

        // raise[(j, δ)]: [e_j, e_δ] = raise · e_{δ+α_j}
        // lower[(j, δ)]: [f_j, e_δ] = lower · e_{δ−α_j}   (δ ≠ α_j)
        let mut raise: HashMap<(usize, usize), Q> = HashMap::new();
        let mut lower: HashMap<(usize, usize), Q> = HashMap::new();
        let max_height = *alg.heights.iter().max().unwrap();

        let lower_coeff = |lower: &HashMap<(usize, usize), Q>,
                           raise: &HashMap<(usize, usize), Q>,
                           j: usize,
                           delta: usize|
         -> Q {
            let i = defining[delta].expect("non-simple");
            let dprime = alg.root_index(&shift(&roots[delta], i, -1)).unwrap();
            let simple_j = roots[dprime] == shift(&vec![0; n], j, 1);
            if i == j {
                let mut c = -int(alg.pair_coroot(i, &roots[dprime]));
                if simple_j {
                    c += int(2);
                } else if let Some(below) = alg.root_index(&shift(&roots[dprime], j, -1)) {
                    c += &lower[&(j, dprime)] * &raise[&(j, below)];
                }
                c
            } else if simple_j {
                int(alg.cartan[j][i])
            } else if let Some(below) = alg.root_index(&shift(&roots[dprime], j, -1)) {
                &lower[&(j, dprime)] * &raise[&(i, below)]
            } else {
                Q::zero()
            }
        };

        for height in 2..=max_height {
            for eta in (0..q).filter(|r| alg.heights[*r] == height) {
                for j in 0..n {
                    if alg.root_index(&shift(&roots[eta], j, -1)).is_some() {
                        let c = lower_coeff(&lower, &raise, j, eta);
                        lower.insert((j, eta), c);
                    }
                }
            }
            for delta in (0..q).filter(|r| alg.heights[*r] == height - 1) {
                for j in 0..n {
                    let Some(eta) = alg.root_index(&shift(&roots[delta], j, 1)) else {
                        continue;
                    };
                    let i = defining[eta].unwrap();
                    let value = if i == j {
                        Q::one()
                    } else {
                        let simple_i = roots[delta] == shift(&vec![0; n], i, 1);
                        let numer = if simple_i {
                            int(alg.cartan[i][j])
                        } else if let Some(below) = alg.root_index(&shift(&roots[delta], i, -1)) {
                            &lower[&(i, delta)] * &raise[&(j, below)]
                        } else {
                            Q::zero()
                        };
                        numer / &lower[&(i, eta)]
                    };
                    raise.insert((j, delta), value);
                }
            }
        }

        let dim = alg.dim;
        let simple_of = |r: usize| -> Option<usize> {
            if alg.heights[r] == 1 {
                roots[r].iter().position(|c| *c == 1)
            } else {
                None
            }
        };
        // ad matrices of the Chevalley generators.
        let ad_e = |j: usize| -> Vec<Element> {
            (0..dim)
                .map(|b| match alg.kind(b) {
                    BasisKind::Cartan(a) => Element::term(alg.e_index(j), -int(alg.cartan[a][j])),
                    BasisKind::Raising(d) => match alg.root_index(&shift(&roots[d], j, 1)) {
                        Some(up) => Element::term(alg.e_index(up), raise[&(j, d)].clone()),
                        None => Element::zero(),
                    },
                    BasisKind::Lowering(d) => {
                        if simple_of(d) == Some(j) {
                            Element::basis(alg.cartan_index(j))
                        } else {
                            match alg.root_index(&shift(&roots[d], j, -1)) {
                                Some(down) => {
                                    Element::term(alg.f_index(down), lower[&(j, d)].clone())
                                }
                                None => Element::zero(),
                            }
                        }
                    }
                })
                .collect()
        };
        let ad_f = |j: usize| -> Vec<Element> {
            (0..dim)
                .map(|b| match alg.kind(b) {
                    BasisKind::Cartan(a) => Element::term(alg.f_index(j), int(alg.cartan[a][j])),
                    BasisKind::Raising(d) => {
                        if simple_of(d) == Some(j) {
                            Element::term(alg.cartan_index(j), -Q::one())
                        } else {
                            match alg.root_index(&shift(&roots[d], j, -1)) {
                                Some(down) => {
                                    Element::term(alg.e_index(down), lower[&(j, d)].clone())
                                }
                                None => Element::zero(),
                            }
                        }
                    }
                    BasisKind::Lowering(d) => match alg.root_index(&shift(&roots[d], j, 1)) {
                        Some(up) => Element::term(alg.f_index(up), raise[&(j, d)].clone()),
                        None => Element::zero(),
                    },
                })
                .collect()
        };
        let ad_h = |a: usize| -> Vec<Element> {
            (0..dim)
                .map(|b| match alg.kind(b) {
                    BasisKind::Cartan(_) => Element::zero(),
                    BasisKind::Raising(d) => Element::term(b, int(alg.pair_coroot(a, &roots[d]))),
                    BasisKind::Lowering(d) => Element::term(b, -int(alg.pair_coroot(a, &roots[d]))),
                })
                .collect()
        };

        let mut columns: Vec<Vec<Element>> = vec![Vec::new(); dim];
        for a in 0..n {
            columns[alg.cartan_index(a)] = ad_h(a);
        }
        for r in 0..q {
            if let Some(j) = simple_of(r) {
                columns[alg.e_index(r)] = ad_e(j);
                columns[alg.f_index(r)] = ad_f(j);
            }
        }
        for r in (0..q).filter(|r| alg.heights[*r] >= 2) {
            let i = defining[r].unwrap();
            let prev = alg.root_index(&shift(&roots[r], i, -1)).unwrap();
            let e = commutator(&columns[alg.e_index(i)], &columns[alg.e_index(prev)]);
            let f = commutator(&columns[alg.f_index(i)], &columns[alg.f_index(prev)]);
            columns[alg.e_index(r)] = e;
            columns[alg.f_index(r)] = f;
        }
        RawStructure { columns }
    }
}

fn apply(matrix: &[Element], v: &Element) -> Element {
    let mut out = Element::zero();
    for (b, c) in v.iter() {
        out.add_scaled(&matrix[b], c);
    }
    out
}

fn commutator(x: &[Element], y: &[Element]) -> Vec<Element> {
    x.iter()
        .zip(y)
        .map(|(xb, yb)| apply(x, yb).sub(&apply(y, xb)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> LieAlgebra {
        LieAlgebra::from_str_spec(s).unwrap()
    }

    #[test]
    fn spec_parsing_and_validation() {
        assert_eq!("G2".parse::<AlgebraSpec>().unwrap().rank, 2);
        assert!("D2".parse::<AlgebraSpec>().is_err());
        assert!("E5".parse::<AlgebraSpec>().is_err());
        assert!("F3".parse::<AlgebraSpec>().is_err());
        assert!("G3".parse::<AlgebraSpec>().is_err());
        assert!("X1".parse::<AlgebraSpec>().is_err());
        assert!("A0".parse::<AlgebraSpec>().is_err());
        assert!("A".parse::<AlgebraSpec>().is_err());
        assert_eq!("c3".parse::<AlgebraSpec>().unwrap().to_string(), "C3");
    }

    #[test]
    fn dimensions_and_numerology() {
        // (dim, h, h∨, r∨)
        let table = [
            ("A1", 3, 2, 2, 1),
            ("A2", 8, 3, 3, 1),
            ("B2", 10, 4, 3, 2),
            ("C2", 10, 4, 3, 2),
            ("B3", 21, 6, 5, 2),
            ("C3", 21, 6, 4, 2),
            ("D4", 28, 6, 6, 1),
            ("G2", 14, 6, 4, 3),
            ("F4", 52, 12, 9, 2),
            ("E6", 78, 12, 12, 1),
        ];
        for (s, d, h, hv, rv) in table {
            let g = alg(s);
            assert_eq!(g.dim, d, "{s}");
            assert_eq!(g.coxeter, h, "{s}");
            assert_eq!(g.dual_coxeter, hv, "{s}");
            assert_eq!(g.lacing, rv, "{s}");
            assert_eq!(g.num_positive(), (d - g.rank) / 2);
        }
    }

    #[test]
    fn e_f_pair_to_cartan() {
        for s in ["A1", "A2", "B2", "G2"] {
            let g = alg(s);
            for i in 0..g.num_positive() {
                let h = g.bracket_basis(g.e_index(i), g.f_index(i));
                assert!(h.iter().all(|(b, _)| b < g.rank), "{s}: {h:?}");
                assert_eq!(g.form_basis(g.e_index(i), g.f_index(i)), Q::one());
            }
        }
    }

    #[test]
    fn sl2_chevalley_relations() {
        let g = alg("A1");
        let (h, e, f) = (0, g.e_index(0), g.f_index(0));
        assert_eq!(g.bracket_basis(e, f), &Element::basis(h));
        assert_eq!(g.bracket_basis(h, e), &Element::term(e, int(2)));
        assert_eq!(g.bracket_basis(h, f), &Element::term(f, int(-2)));
        assert_eq!(g.form_basis(h, h), int(2));
    }

    #[test]
    fn roots_sorted_by_height_with_simple_first() {
        let g = alg("B3");
        assert!(g.heights.windows(2).all(|w| w[0] <= w[1]));
        for i in 0..g.rank {
            assert_eq!(g.positive_roots[i][i], 1);
        }
        assert_eq!(g.positive_roots[g.theta_index], vec![1, 2, 2]);
    }

    #[test]
    fn e8_root_count() {
        let roots = enumerate_roots(&cartan_matrix(AlgebraSpec::new(Family::E, 8).unwrap()));
        assert_eq!(roots.len(), 120);
        assert_eq!(roots.last().unwrap(), &vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn dual_basis_is_dual() {
        let g = alg("G2");
        for i in 0..g.dim {
            for j in 0..g.dim {
                let v = g.form(&Element::basis(i), &g.dual(j));
                assert_eq!(v, if i == j { Q::one() } else { Q::zero() });
            }
        }
    }
}
