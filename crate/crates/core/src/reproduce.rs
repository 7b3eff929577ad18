//! Desk-scale reproduction of the language's tabulated properties.
//!
//! Each row checks one claim exactly, either on a fixed instance or over a
//! seeded random sample, against brute force over the cube.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{bnn_lower_bound, components, min_bnn};
use crate::bits::BoolVec;
use crate::compile::{bdd_size_bound, bnn_to_bdd, mods_to_bnn};
use crate::error::Result;
use crate::families::{
    count_half_is, gen_exact_half, gen_hsis_from_3sat, gen_hsis_pair, gen_majority, gen_parity,
    gen_threshold, gen_xor_match, Cnf3, Graph,
};
use crate::queries::{self, Clause, Equivalence, Literal, Term};
use crate::rep::{BnnRep, FunctionTable, Limits};
use crate::sample;
use crate::transforms::{condition, forget};

/// One line of the reproduction table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const ROWS: [(&str, Check); 13] = [
    ("parity needs 2^n prototypes", parity_size),
    ("majority has constant-size representations", majority_size),
    ("implicant check agrees with sub-cube scan", implicant_check),
    (
        "clausal entailment agrees with model scan",
        clausal_entailment,
    ),
    ("model enumeration is output-polynomial", model_enumeration),
    (
        "(M, δ(M)) round trip within m + nm prototypes",
        mods_round_trip,
    ),
    (
        "BNN to BDD within k(k-1)/2 ((n+1)^2 - 1) nodes",
        bdd_compile,
    ),
    ("model count of the reduction's majority", majority_count),
    (
        "equivalence and counting track half-size independent sets",
        hsis_identity,
    ),
    (
        "conditioning equals forgetting on thresholds",
        threshold_cd_fo,
    ),
    ("isolated-model witness families", isolated_witnesses),
    ("negation swaps P and N", negation),
    ("3-SAT to half-size independent set", three_sat_chain),
];

/// Runs every row in order.
pub fn run_all() -> Vec<Row> {
    (1..=ROWS.len()).map(run).collect()
}

/// Runs row `id` (1-based).
///
/// # Panics
///
/// Panics if `id` is not a row number.
pub fn run(id: usize) -> Row {
    let (title, check) = ROWS[id - 1];
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Row {
        id,
        title,
        passed,
        detail,
    }
}

fn rng(row: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + row)
}

fn cube(n: usize) -> impl Iterator<Item = BoolVec> {
    (0..1u64 << n).map(move |i| BoolVec::from_index(n, i))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn parity_size() -> Result<(bool, String)> {
    let limits = Limits::default();
    let mut ok = true;
    for n in 1..=3 {
        let table = gen_parity(n, &limits)?.to_truth_table(&limits)?;
        ok &= min_bnn(&table)?.0 == 1 << n;
    }
    for n in 1..=8 {
        let table = FunctionTable::from_fn(n, &limits, |i| i.count_ones() % 2 == 1)?;
        ok &= bnn_lower_bound(&table) == 1 << n;
    }
    Ok((ok, "min size n<=3, lower bound n<=8".into()))
}

fn majority_size() -> Result<(bool, String)> {
    let limits = Limits::default();
    let maj3 = gen_threshold(3, 2, &limits)?;
    let mut ok = min_bnn(&maj3)?.0 == 2;
    for n in 1..=10 {
        let rep = gen_majority(n)?;
        let want = if n % 2 == 1 { 2 } else { n / 2 + 2 };
        ok &= rep.size() == want;
        ok &= cube(n).all(|x| rep.evaluate(&x).ok() == Some(2 * x.weight() >= n));
    }
    Ok((ok, "n<=10".into()))
}

fn scan_implicant(rep: &BnnRep, t: &Term) -> bool {
    cube(rep.n())
        .filter(|x| t.satisfied_by(x))
        .all(|x| rep.evaluate(&x).unwrap_or(false))
}

fn scan_entailment(rep: &BnnRep, c: &Clause) -> bool {
    cube(rep.n())
        .filter(|x| rep.evaluate(x).unwrap_or(true))
        .all(|x| c.satisfied_by(&x))
}

fn all_terms(n: usize) -> impl Iterator<Item = Vec<Literal>> {
    (0..3usize.pow(n as u32)).map(move |code| {
        let mut c = code;
        let mut lits = Vec::new();
        for var in 1..=n {
            match c % 3 {
                1 => lits.push(Literal::pos(var)),
                2 => lits.push(Literal::neg(var)),
                _ => {}
            }
            c /= 3;
        }
        lits
    })
}

fn implicant_check() -> Result<(bool, String)> {
    let mut rng = rng(3);
    let mut ok = true;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let rep = sample::random_rep_mixed(&mut rng, n, 12);
        let t = sample::random_term(&mut rng, n);
        let (ans, stats) = queries::im_with_stats(&rep, &t)?;
        ok &= ans == scan_implicant(&rep, &t);
        ok &= stats.distance_evals <= n * rep.positives().len() * rep.negatives().len();
    }
    for n in 1..=4 {
        for _ in 0..10 {
            let rep = sample::random_rep_mixed(&mut rng, n, 8);
            for lits in all_terms(n) {
                let t = Term::new(lits)?;
                ok &= queries::im(&rep, &t)? == scan_implicant(&rep, &t);
            }
        }
    }
    Ok((ok, "1000 random pairs, all terms at n<=4".into()))
}

fn clausal_entailment() -> Result<(bool, String)> {
    let mut rng = rng(4);
    let mut ok = true;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let rep = sample::random_rep_mixed(&mut rng, n, 12);
        let c = sample::random_clause(&mut rng, n);
        let ans = queries::ce(&rep, &c)?;
        ok &= ans == scan_entailment(&rep, &c);
        ok &= ans == queries::im(&rep.negate(), &c.negate())?;
    }
    for n in 1..=4 {
        for _ in 0..10 {
            let rep = sample::random_rep_mixed(&mut rng, n, 8);
            for lits in all_terms(n) {
                let c = Clause::new(lits)?;
                ok &= queries::ce(&rep, &c)? == scan_entailment(&rep, &c);
            }
        }
    }
    Ok((ok, "1000 random pairs, all clauses at n<=4".into()))
}

fn model_enumeration() -> Result<(bool, String)> {
    let limits = Limits::default();
    let mut rng = rng(5);
    let mut ok = true;
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let rep = sample::random_rep_mixed(&mut rng, n, 12);
        let (models, stats) = queries::me_with_stats(&rep, None);
        let expected: Vec<BoolVec> = rep.to_truth_table(&limits)?.models().collect();
        let bound = 4 * (n + 1) * (models.len() + 1);
        ok &= models == expected && stats.im_calls <= bound;
        worst = worst.max(stats.im_calls as f64 / bound as f64);
    }
    Ok((ok, format!("500 reps, max calls/bound = {worst:.3}")))
}

fn mods_round_trip() -> Result<(bool, String)> {
    let limits = Limits::default();
    let mut rng = rng(6);
    let mut ok = true;
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.0..1.0);
        let table = sample::random_table(&mut rng, n, density);
        let rep = mods_to_bnn(&table);
        ok &= rep.size() <= table.len().max(1) * (n + 1);
        ok &= rep.validate_semantic(&limits)?.is_valid();
        ok &= rep.to_truth_table(&limits)? == table;
    }
    Ok((ok, "500 random model sets, n<=8".into()))
}

fn bdd_compile() -> Result<(bool, String)> {
    let mut rng = rng(7);
    let mut ok = true;
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let rep = sample::random_valid_rep(&mut rng, n, 8);
        let bdd = bnn_to_bdd(&rep);
        ok &= bdd.node_count() <= bdd_size_bound(n, rep.size());
        for x in cube(n) {
            ok &= bdd.eval(&x)? == rep.evaluate(&x)?;
        }
    }
    Ok((ok, "200 random reps, n<=8, k<=8".into()))
}

fn majority_count() -> Result<(bool, String)> {
    let mut ok = queries::ct_enumerate(&gen_majority(4)?) == 11;
    let mut seen = Vec::new();
    for nv in [6u64, 8] {
        let k = nv / 2;
        let (f, _) = gen_hsis_pair(&Graph::empty(nv as usize)?)?;
        let ct = queries::ct_enumerate(&f);
        ok &= ct == (1 << (nv - 1)) + binomial(nv, k) / 2;
        seen.push(ct);
    }
    Ok((ok, format!("CT(F) = {seen:?} at 2k = 6, 8")))
}

/// The eight six-vertex fixture graphs.
pub fn fixture_graphs() -> Result<Vec<(&'static str, Graph)>> {
    Ok(vec![
        ("cycle", Graph::cycle(6)?),
        ("path", Graph::path(6)?),
        ("complete", Graph::complete(6)?),
        ("empty", Graph::empty(6)?),
        ("star", Graph::new(6, (2..=6).map(|v| (1, v)))?),
        ("matching", Graph::new(6, [(1, 2), (3, 4), (5, 6)])?),
        (
            "two-triangles",
            Graph::new(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])?,
        ),
        // Hub vertex 6 keeps no edges; the rim is a 5-cycle.
        (
            "wheel-minus-hub",
            Graph::new(6, (1..=5).map(|i| (i, i % 5 + 1)))?,
        ),
    ])
}

fn hsis_identity() -> Result<(bool, String)> {
    let limits = Limits::default();
    let mut ok = true;
    let mut counts = Vec::new();
    for (_, g) in fixture_graphs()? {
        let (f, h) = gen_hsis_pair(&g)?;
        let count = count_half_is(&g)?;
        let equivalent = queries::eq(&f, &h, &limits)? == Equivalence::Equivalent;
        ok &= equivalent == (count == 0);
        ok &= queries::ct_enumerate(&f) - queries::ct_enumerate(&h) == count;
        counts.push(count);
    }
    Ok((ok, format!("half-size IS counts {counts:?}")))
}

fn threshold_cd_fo() -> Result<(bool, String)> {
    let limits = Limits::default();
    let mut ok = true;
    let mut cases = 0;
    for n in 2..=8 {
        for m in 1..=n {
            let rep = mods_to_bnn(&gen_threshold(n, m, &limits)?);
            for i in 1..=n {
                let cd = condition(&rep, &Term::new([Literal::pos(i)])?, &limits)?;
                let fo = forget(&rep, &[i].into(), &limits)?;
                ok &= queries::eq(&cd.rep, &fo.rep, &limits)? == Equivalence::Equivalent;
                cases += 1;
            }
        }
    }
    Ok((ok, format!("{cases} (n, m, i) cases")))
}

fn isolated_witnesses() -> Result<(bool, String)> {
    let limits = Limits::default();
    let mut ok = true;
    for n in 1..=4u64 {
        let half = components(&gen_exact_half(n as usize, &limits)?);
        ok &= half.positive.isolated.len() as u64 == binomial(2 * n, n);
        let xor = components(&gen_xor_match(n as usize, &limits)?);
        ok &= xor.positive.isolated.len() == 1 << n;
    }
    Ok((ok, "n<=4".into()))
}

fn negation() -> Result<(bool, String)> {
    let mut rng = rng(12);
    let mut ok = true;
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let rep = sample::random_rep_mixed(&mut rng, n, 12);
        let neg = rep.negate();
        ok &= neg.negate() == rep;
        for x in cube(n) {
            ok &= neg.evaluate(&x)? != rep.evaluate(&x)?;
        }
    }
    Ok((ok, "500 random reps, n<=10".into()))
}

/// Every non-empty consistent clause over `x_1..x_3`.
pub fn small_clauses() -> Vec<Vec<Literal>> {
    all_terms(3).filter(|c| !c.is_empty()).collect()
}

fn three_sat_chain() -> Result<(bool, String)> {
    let clauses = small_clauses();
    let mut formulas: Vec<Vec<Vec<Literal>>> = clauses.iter().map(|c| vec![c.clone()]).collect();
    formulas.extend(
        clauses
            .iter()
            .combinations_with_replacement(2)
            .map(|p| vec![p[0].clone(), p[1].clone()]),
    );
    let mut ok = true;
    for clauses in &formulas {
        let phi = Cnf3::new(3, clauses.clone())?;
        let sat = (0..8).any(|a| phi.satisfied_by(a));
        let g = gen_hsis_from_3sat(&phi)?;
        ok &= g.vertices() == 4 * clauses.len();
        ok &= sat == (count_half_is(&g)? > 0);
    }
    Ok((ok, format!("{} formulas", formulas.len())))
}
