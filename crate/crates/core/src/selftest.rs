//! Seeded property suites bundled into the binary.
//!
//! Every random choice is drawn from one `ChaCha8Rng` per suite, seeded from
//! the run seed and the suite index, so the report depends only on the seed.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::pbw::{Factor, PbwMonomial, VaVector, VacuumModule};
use crate::rational::{frac, int, Q};
use crate::rootsys::{Element, LieAlgebra};
use crate::shapes;
use crate::singular::{
    critical_counterexample, find_singular, gorelik_kac_not_simple, verify_nonvanishing,
};
use crate::slodowy::{complete_triple, rho_tilde, slice, submersion_certificate, NilpotentSpec};
use crate::sugawara::SugawaraContext;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub pass: bool,
    /// First failure, if any.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub pass: bool,
}

struct Tally {
    name: &'static str,
    cases: usize,
    detail: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            detail: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.detail.is_none() {
            self.detail = Some(what());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            cases: self.cases,
            pass: self.detail.is_none() && self.cases > 0,
            detail: self.detail,
        }
    }
}

fn algebra(spec: &str) -> Arc<LieAlgebra> {
    Arc::new(LieAlgebra::from_str_spec(spec).expect("built-in spec"))
}

fn random_monomial(rng: &mut ChaCha8Rng, alg: &LieAlgebra, max_delta: i64) -> PbwMonomial {
    let mut left = rng.gen_range(0..=max_delta);
    let mut factors = Vec::new();
    while left > 0 {
        let n = rng.gen_range(1..=left);
        factors.push(Factor::new(alg, rng.gen_range(0..alg.dim), n as u32));
        left -= n;
    }
    PbwMonomial::from_factors(factors)
}

fn random_vector(rng: &mut ChaCha8Rng, module: &VacuumModule, max_delta: i64) -> VaVector {
    let mut v = module.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = Q::new(
            rng.gen_range(-3i64..=3).into(),
            rng.gen_range(1i64..=3).into(),
        );
        v.add_term(random_monomial(rng, module.algebra(), max_delta), c);
    }
    if v.is_zero() {
        module.vacuum()
    } else {
        v
    }
}

fn lie_soundness() -> SuiteResult {
    let mut t = Tally::new("lie-algebra soundness");
    for spec in ["A1", "A2", "B2", "C2", "G2"] {
        let g = algebra(spec);
        for x in 0..g.dim {
            for y in 0..g.dim {
                for z in 0..g.dim {
                    let (bx, by, bz) = (Element::basis(x), Element::basis(y), Element::basis(z));
                    let jac = g
                        .bracket(&bx, g.bracket_basis(y, z))
                        .add(&g.bracket(&by, g.bracket_basis(z, x)))
                        .add(&g.bracket(&bz, g.bracket_basis(x, y)));
                    t.check(jac.is_zero(), || format!("{spec}: Jacobi on ({x},{y},{z})"));
                    let inv =
                        g.form(g.bracket_basis(x, y), &bz) + g.form(&by, g.bracket_basis(x, z));
                    t.check(inv.is_zero(), || {
                        format!("{spec}: invariance on ({x},{y},{z})")
                    });
                }
            }
        }
        let q = g.num_positive();
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<i64> = g.positive_roots[a]
                    .iter()
                    .zip(&g.positive_roots[b])
                    .map(|(x, y)| x + y)
                    .collect();
                let Some(s) = g.root_index(&sum) else {
                    continue;
                };
                let lhs = g
                    .bracket_basis(g.f_index(a), g.e_index(s))
                    .coeff(g.e_index(b));
                let rhs = g
                    .bracket_basis(g.f_index(b), g.e_index(s))
                    .coeff(g.e_index(a));
                t.check(!lhs.is_zero() && lhs == -rhs, || {
                    format!("{spec}: structure constants at ({a},{b})")
                });
            }
        }
        let th = g.theta_coroot();
        t.check(g.form(&th, &th) == int(2), || format!("{spec}: (θ|θ) ≠ 2"));
    }
    t.finish()
}

fn commutators(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new("affine commutation relations");
    for spec in ["A1", "A2"] {
        let g = algebra(spec);
        for k in [int(1), frac(1, 3), frac(-1, 2)] {
            let m = VacuumModule::new(g.clone(), k.clone());
            for _ in 0..40 {
                let v = random_vector(rng, &m, 4);
                let (x, y) = (rng.gen_range(0..g.dim), rng.gen_range(0..g.dim));
                let (a, b) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
                let lhs = m
                    .act(x, a, &m.act(y, b, &v))
                    .sub(&m.act(y, b, &m.act(x, a, &v)));
                let mut rhs = m.act_element(g.bracket_basis(x, y), a + b, &v);
                if a + b == 0 {
                    rhs = rhs.add(&v.scaled(&(int(a) * g.form_basis(x, y) * &k)));
                }
                t.check(lhs == rhs, || {
                    format!("{spec} k={k}: [x{x}({a}), x{y}({b})]")
                });
            }
        }
    }
    t.finish()
}

fn sugawara_identities(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new("sugawara identities");
    for (spec, k) in [("A1", int(1)), ("A2", frac(1, 3))] {
        let g = algebra(spec);
        let ctx = SugawaraContext::new(Arc::new(VacuumModule::new(g.clone(), k.clone())))
            .expect("non-critical");
        let m = ctx.module();
        for n in -1..=3 {
            t.check(ctx.l(n, &m.vacuum()).is_zero(), || {
                format!("{spec}: L_{n} 1 ≠ 0")
            });
        }
        for _ in 0..25 {
            let v = random_vector(rng, m, 3);
            let (x, n, a) = (
                rng.gen_range(0..g.dim),
                rng.gen_range(-2i64..=2),
                rng.gen_range(-2i64..=2),
            );
            let lhs = ctx.l(n, &m.act(x, a, &v)).sub(&m.act(x, a, &ctx.l(n, &v)));
            t.check(lhs == m.act(x, a + n, &v).scaled(&int(-a)), || {
                format!("{spec}: [L_{n}, x{x}({a})]")
            });
            let mono = random_monomial(rng, &g, 4);
            let w = m.monomial_vector(mono.clone());
            t.check(ctx.l(0, &w) == w.scaled(&int(mono.degree())), || {
                format!("{spec}: L_0 eigenvalue")
            });
            let tw = ctx.l(-1, &w);
            t.check(tw.terms().all(|(y, _)| y.depth() > mono.depth()), || {
                format!("{spec}: T depth")
            });
            let vir = ctx.l(1, &ctx.l(-1, &v)).sub(&ctx.l(-1, &ctx.l(1, &v)));
            t.check(vir == ctx.l(0, &v).scaled(&int(2)), || {
                format!("{spec}: [L_1, L_-1]")
            });
        }
    }
    t.finish()
}

fn nonvanishing() -> SuiteResult {
    let mut t = Tally::new("singular vectors have nonzero image");
    let g = algebra("A1");
    for k in [int(0), int(1), int(2), frac(-1, 2), frac(-4, 3)] {
        let m = VacuumModule::new(g.clone(), k.clone());
        match verify_nonvanishing(&m, 4) {
            Ok(v) => {
                let found: usize = v.reports.iter().map(|r| r.kernel_dim).sum();
                t.check(v.pass && found > 0, || {
                    format!("A1 k={k}: found {found}, pass {}", v.pass)
                });
            }
            Err(e) => t.check(false, || format!("A1 k={k}: {e}")),
        }
    }
    for k in [frac(-3, 2), frac(-5, 3)] {
        let simple = !gorelik_kac_not_simple(&g, &k);
        let m = VacuumModule::new(g.clone(), k.clone());
        let found: usize = find_singular(&m, 4)
            .map(|r| r.iter().map(|x| x.kernel_dim).sum())
            .unwrap_or(usize::MAX);
        t.check(simple && found == 0, || {
            format!("A1 k={k}: simple {simple}, found {found}")
        });
    }
    t.finish()
}

fn critical() -> SuiteResult {
    let mut t = Tally::new("critical-level counterexample");
    let m = VacuumModule::new(algebra("A1"), int(-2));
    match critical_counterexample(&m, 4) {
        Ok(r) => t.check(r.pass, || "A1 k=-2: witness checks fail".into()),
        Err(e) => t.check(false, || e.to_string()),
    }
    t.finish()
}

fn ltilde_shapes(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new("truncated translation term shapes");
    for (spec, k) in [("A1", frac(1, 3)), ("A2", frac(-1, 2))] {
        let g = algebra(spec);
        let ctx =
            SugawaraContext::new(Arc::new(VacuumModule::new(g.clone(), k))).expect("non-critical");
        let q = g.num_positive();
        for _ in 0..40 {
            let z = random_monomial(rng, &g, 4);
            let r = shapes::check_ltilde_shape(&ctx, &z);
            t.check(r.is_ok(), || r.unwrap_err());
            let mut left = rng.gen_range(0..=4i64);
            let mut factors = Vec::new();
            while left > 0 {
                if rng.gen_bool(0.6) {
                    factors.push(Factor::new(&g, g.e_index(rng.gen_range(0..q)), 1));
                    left -= 1;
                } else {
                    let n = rng.gen_range(1..=left);
                    factors.push(Factor::new(
                        &g,
                        g.cartan_index(rng.gen_range(0..g.rank)),
                        n as u32,
                    ));
                    left -= n;
                }
            }
            let z = PbwMonomial::from_factors(factors);
            let r = shapes::check_ltilde_cases(&ctx, &z)
                .and_then(|_| shapes::check_ltilde_leading_term(&ctx, &z));
            t.check(r.is_ok(), || r.unwrap_err());
        }
    }
    let g = algebra("A1");
    for (k, delta) in [(int(0), 1), (int(1), 2), (int(2), 3)] {
        let ctx = SugawaraContext::new(Arc::new(VacuumModule::new(g.clone(), k.clone())))
            .expect("non-critical");
        for r in find_singular(ctx.module(), delta).unwrap_or_default() {
            for v in &r.vectors {
                let res = shapes::check_singular_vector(&ctx, &v.vector);
                t.check(res.is_ok(), || format!("A1 k={k}: {}", res.unwrap_err()));
            }
        }
    }
    t.finish()
}

fn slodowy_suite() -> SuiteResult {
    let mut t = Tally::new("slodowy slices");
    for spec in ["A1", "A2", "C2"] {
        let g = algebra(spec);
        for nil in [NilpotentSpec::Regular, NilpotentSpec::Minimal] {
            let label = nil.label().to_string();
            let result = nil
                .element(&g)
                .and_then(|f| complete_triple(&g, &f))
                .and_then(|tr| slice(&g, &tr));
            let data = match result {
                Ok(d) => d,
                Err(e) => {
                    t.check(false, || format!("{spec} {label}: {e}"));
                    continue;
                }
            };
            t.check(data.triple.relations_hold(&g), || {
                format!("{spec} {label}: triple")
            });
            let cert = submersion_certificate(&g, &data);
            t.check(cert.pass && cert.rank == g.dim, || {
                format!("{spec} {label}: certificate rank {}", cert.rank)
            });
            let fixed = rho_tilde(&g, &data, &int(3), &data.triple.f).map(|x| x == data.triple.f);
            t.check(fixed == Ok(true), || format!("{spec} {label}: ρ̃(t)f ≠ f"));
            t.check(data.contraction_exponents().iter().all(|e| *e > 0), || {
                format!("{spec} {label}: nonpositive exponent")
            });
        }
    }
    t.finish()
}

/// Runs every suite. Suites are independent; each gets its own generator.
pub fn run(seed: u64) -> SelftestReport {
    let rng = |i: u64| {
        ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i))
    };
    let suites = vec![
        lie_soundness(),
        commutators(&mut rng(1)),
        sugawara_identities(&mut rng(2)),
        nonvanishing(),
        critical(),
        ltilde_shapes(&mut rng(3)),
        slodowy_suite(),
    ];
    let pass = suites.iter().all(|s| s.pass);
    SelftestReport { seed, suites, pass }
}
