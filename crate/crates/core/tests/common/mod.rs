#![allow(dead_code)]
//! Independent oracles shared by the integration tests.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::Rng;
use vacuum_core::pbw::{Factor, PbwMonomial, VaVector, VacuumModule};
use vacuum_core::rational::{int, Q};
use vacuum_core::rootsys::LieAlgebra;

pub type Word = Vec<(usize, i64)>;

/// Straightens words in `U(ĝ)𝟏` by single adjacent swaps, no memo.
///
/// A word is normal when all modes are negative and the factors are sorted by
/// (PBW rank, |mode|); a word ending in a nonnegative mode is zero.
pub fn straighten(alg: &LieAlgebra, level: &Q, word: &Word) -> BTreeMap<Word, Q> {
    let key = |(b, n): (usize, i64)| -> (u8, usize, i64) {
        if n >= 0 {
            (1, 0, 0)
        } else {
            (0, alg.pbw_rank(b), -n)
        }
    };
    let mut pending: Vec<(Word, Q)> = vec![(word.clone(), Q::one())];
    let mut done: BTreeMap<Word, Q> = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        if c.is_zero() {
            continue;
        }
        if let Some(&(_, n)) = w.last() {
            if n >= 0 {
                continue;
            }
        }
        let swap = (0..w.len().saturating_sub(1)).find(|&i| {
            let (a, b) = (w[i], w[i + 1]);
            if a.1 >= 0 && b.1 >= 0 {
                return false;
            }
            key(a) > key(b)
        });
        let Some(i) = swap else {
            *done.entry(w).or_insert_with(Q::zero) += c;
            continue;
        };
        let (a, b) = (w[i], w[i + 1]);
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        pending.push((swapped, c.clone()));
        for (z, bc) in alg.bracket_basis(a.0, b.0).iter() {
            let mut nw = w[..i].to_vec();
            nw.push((z, a.1 + b.1));
            nw.extend_from_slice(&w[i + 2..]);
            pending.push((nw, &c * bc));
        }
        if a.1 + b.1 == 0 {
            let central = int(a.1) * alg.form_basis(a.0, b.0) * level;
            if !central.is_zero() {
                let mut nw = w[..i].to_vec();
                nw.extend_from_slice(&w[i + 2..]);
                pending.push((nw, &c * central));
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

pub fn word_of(m: &PbwMonomial) -> Word {
    m.factors()
        .iter()
        .map(|f| (f.basis as usize, -(f.n as i64)))
        .collect()
}

pub fn oracle_vector(alg: &LieAlgebra, level: &Q, word: &Word) -> VaVector {
    VaVector::from_terms(
        level.clone(),
        straighten(alg, level, word).into_iter().map(|(w, c)| {
            let f = w
                .iter()
                .map(|&(b, n)| Factor::new(alg, b, (-n) as u32))
                .collect();
            (PbwMonomial::from_factors(f), c)
        }),
    )
}

/// Applies `x(m)` to every term of `v` through the word oracle.
pub fn oracle_act(alg: &LieAlgebra, x: usize, m: i64, v: &VaVector) -> VaVector {
    let mut out = VaVector::zero(v.level().clone());
    for (mono, c) in v.terms() {
        let mut w = vec![(x, m)];
        w.extend(word_of(mono));
        out.add_scaled(&oracle_vector(alg, v.level(), &w), c);
    }
    out
}

/// Monomials of degree `delta` by choosing exponents generator by generator.
pub fn oracle_monomials(alg: &LieAlgebra, delta: i64) -> BTreeSet<PbwMonomial> {
    let gens: Vec<(usize, u32)> = (0..alg.dim)
        .flat_map(|b| (1..=delta.max(0) as u32).map(move |n| (b, n)))
        .collect();
    let mut out = BTreeSet::new();
    fn go(
        alg: &LieAlgebra,
        gens: &[(usize, u32)],
        remaining: i64,
        acc: &mut Vec<Factor>,
        out: &mut BTreeSet<PbwMonomial>,
    ) {
        if remaining == 0 {
            out.insert(PbwMonomial::from_factors(acc.clone()));
            return;
        }
        let Some((&(b, n), rest)) = gens.split_first() else {
            return;
        };
        let max = remaining / n as i64;
        for used in 0..=max {
            go(alg, rest, remaining - used * n as i64, acc, out);
            if used < max {
                acc.push(Factor::new(alg, b, n));
            }
        }
        for _ in 0..max {
            acc.pop();
        }
    }
    go(alg, &gens, delta, &mut Vec::new(), &mut out);
    out
}

/// Reduced row echelon form over `ℚ`, dense, textbook pivoting.
pub fn dense_null_space(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Singular subspace of the whole degree-`delta` space, through the word
/// oracle and dense elimination, using every positive root.
pub fn oracle_singular_space(
    alg: &LieAlgebra,
    level: &Q,
    delta: i64,
) -> (Vec<PbwMonomial>, Vec<Vec<Q>>) {
    let basis: Vec<PbwMonomial> = oracle_monomials(alg, delta).into_iter().collect();
    let mut ops: Vec<(usize, i64)> = (0..alg.num_positive())
        .map(|r| (alg.e_index(r), 0))
        .collect();
    ops.push((alg.f_index(alg.theta_index), 1));
    let mut row_index: BTreeMap<(usize, PbwMonomial), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (col, mono) in basis.iter().enumerate() {
        for (oi, &(x, m)) in ops.iter().enumerate() {
            let v = oracle_act(
                alg,
                x,
                m,
                &VaVector::monomial(level.clone(), mono.clone(), Q::one()),
            );
            for (t, c) in v.terms() {
                let r = *row_index.entry((oi, t.clone())).or_insert_with(|| {
                    rows.push(vec![Q::zero(); basis.len()]);
                    rows.len() - 1
                });
                rows[r][col] += c;
            }
        }
    }
    let ns = dense_null_space(&rows, basis.len());
    (basis, ns)
}

/// Rank of a set of vectors given as term maps.
pub fn span_rank(vectors: &[VaVector]) -> usize {
    let mut cols: BTreeMap<PbwMonomial, usize> = BTreeMap::new();
    for v in vectors {
        for (m, _) in v.terms() {
            let n = cols.len();
            cols.entry(m.clone()).or_insert(n);
        }
    }
    let dense: Vec<Vec<Q>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![Q::zero(); cols.len()];
            for (m, c) in v.terms() {
                row[cols[m]] = c.clone();
            }
            row
        })
        .collect();
    cols.len() - dense_null_space(&dense, cols.len()).len()
}

/// Random canonical monomial of degree at most `max_delta`.
pub fn random_monomial<R: Rng>(rng: &mut R, module: &VacuumModule, max_delta: i64) -> PbwMonomial {
    let alg = module.algebra();
    let target = rng.gen_range(0..=max_delta);
    let mut left = target;
    let mut factors = Vec::new();
    while left > 0 {
        let n = rng.gen_range(1..=left);
        let b = rng.gen_range(0..alg.dim);
        factors.push(Factor::new(alg, b, n as u32));
        left -= n;
    }
    PbwMonomial::from_factors(factors)
}

/// Random vector with up to three monomial terms and small coefficients.
pub fn random_vector<R: Rng>(rng: &mut R, module: &VacuumModule, max_delta: i64) -> VaVector {
    let mut v = module.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let m = random_monomial(rng, module, max_delta);
        let c = Q::new(
            rng.gen_range(-3i64..=3).into(),
            rng.gen_range(1i64..=3).into(),
        );
        v.add_term(m, c);
    }
    if v.is_zero() {
        v = module.vacuum();
    }
    v
}

/// Random monomial with trivial minus block; `shallow` forces raising factors to mode −1.
pub fn random_minus_free<R: Rng>(
    rng: &mut R,
    module: &VacuumModule,
    max_delta: i64,
    shallow: bool,
) -> PbwMonomial {
    let alg = module.algebra();
    let q = alg.num_positive();
    let target = rng.gen_range(0..=max_delta);
    let mut left = target;
    let mut factors = Vec::new();
    while left > 0 {
        let raising = rng.gen_bool(0.6);
        let n = if raising && shallow {
            1
        } else {
            rng.gen_range(1..=left)
        };
        let b = if raising {
            alg.e_index(rng.gen_range(0..q))
        } else {
            alg.cartan_index(rng.gen_range(0..alg.rank))
        };
        factors.push(Factor::new(alg, b, n as u32));
        left -= n;
    }
    PbwMonomial::from_factors(factors)
}
