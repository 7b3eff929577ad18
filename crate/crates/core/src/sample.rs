//! Random instances for property checks and the reproduction table.

use rand::seq::index;
use rand::Rng;

use crate::bits::BoolVec;
use crate::compile::mods_to_bnn;
use crate::queries::{Clause, Literal, Term};
use crate::rep::{BnnRep, FunctionTable, Limits};

/// A semantically valid representation on `n <= 24` variables with at most
/// `max_protos` prototypes, by rejection sampling over random labelled
/// prototype sets.
pub fn random_valid_rep<R: Rng + ?Sized>(rng: &mut R, n: usize, max_protos: usize) -> BnnRep {
    let limits = Limits::default();
    let cube = 1usize << n;
    loop {
        let k = rng.gen_range(1..=max_protos.min(cube));
        let picks = index::sample(rng, cube, k);
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for i in picks.iter() {
            let v = BoolVec::from_index(n, i as u64);
            if rng.gen_bool(0.5) {
                pos.push(v);
            } else {
                neg.push(v);
            }
        }
        let rep = BnnRep::new(n, pos, neg).expect("distinct prototypes");
        if rep
            .validate_semantic(&limits)
            .expect("n bounded")
            .is_valid()
        {
            return rep;
        }
    }
}

/// A random model set where each vector is a model with probability
/// `density`.
pub fn random_table<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> FunctionTable {
    let models: Vec<BoolVec> = (0..1u64 << n)
        .filter(|_| rng.gen_bool(density))
        .map(|i| BoolVec::from_index(n, i))
        .collect();
    FunctionTable::new(n, models, &Limits::default()).expect("n bounded")
}

/// Either a random labelled pair or the `(M, δ(M))` compilation of a random
/// table, so both sparse and dense prototype sets are covered.
pub fn random_rep_mixed<R: Rng + ?Sized>(rng: &mut R, n: usize, max_protos: usize) -> BnnRep {
    if rng.gen_bool(0.5) {
        random_valid_rep(rng, n, max_protos)
    } else {
        let density = rng.gen_range(0.02..0.5);
        mods_to_bnn(&random_table(rng, n, density))
    }
}

fn random_literals<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Literal> {
    let k = rng.gen_range(0..=n);
    index::sample(rng, n, k)
        .iter()
        .map(|v| Literal {
            var: v + 1,
            positive: rng.gen_bool(0.5),
        })
        .collect()
}

pub fn random_term<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Term {
    Term::new(random_literals(rng, n)).expect("distinct variables")
}

pub fn random_clause<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Clause {
    Clause::new(random_literals(rng, n)).expect("distinct variables")
}
