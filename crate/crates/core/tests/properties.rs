mod common;

use std::collections::BTreeSet;

use bnnkc_core::analysis::{bnn_lower_bound, components, min_bnn};
use bnnkc_core::bits::{hamming, neighborhood};
use bnnkc_core::compile::{
    bdd_size_bound, bnn_to_bdd, comparison_gadget, gadget_size, mods_to_bnn,
};
use bnnkc_core::families::{count_half_is, gen_hsis_pair};
use bnnkc_core::formats::{self, Document};
use bnnkc_core::queries::{self, Entailment, Equivalence};
use bnnkc_core::sample;
use bnnkc_core::transforms::{condition, forget};
use bnnkc_core::{BnnRep, BoolVec, Clause, Cnf3, FunctionTable, Graph, Limits, Literal, Term};
use common::{count_independent, cube, to_bits, to_vec, Oracle};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn limits() -> Limits {
    Limits::default()
}

fn rep_from(seed: u64, n: usize) -> BnnRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample::random_rep_mixed(&mut rng, n, 10)
}

fn bits(n: usize) -> impl Strategy<Value = BoolVec> {
    prop::collection::vec(any::<bool>(), n).prop_map(|b| BoolVec::from_bits(&b).unwrap())
}

fn literal_sets(n: usize) -> impl Strategy<Value = Vec<Literal>> {
    prop::collection::vec(0u8..3, n).prop_map(|codes| {
        codes
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| Literal {
                var: i + 1,
                positive: c == 1,
            })
            .collect()
    })
}

fn table(n: usize, codes: &[bool]) -> FunctionTable {
    let models = cube(n)
        .iter()
        .zip(codes)
        .filter(|(_, &m)| m)
        .map(|(x, _)| to_vec(x))
        .collect::<Vec<_>>();
    FunctionTable::new(n, models, &limits()).unwrap()
}

fn small_table() -> impl Strategy<Value = FunctionTable> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 1 << n).prop_map(move |codes| table(n, &codes))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hamming_is_a_metric((x, y, z) in (1usize..130).prop_flat_map(|n| (bits(n), bits(n), bits(n)))) {
        let d = |a: &BoolVec, b: &BoolVec| hamming(a, b).unwrap();
        prop_assert_eq!(d(&x, &x), 0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        prop_assert_eq!(d(&x, &y), common::dist(&to_bits(&x), &to_bits(&y)));
    }

    #[test]
    fn index_round_trip(n in 1usize..=64, i in any::<u64>()) {
        let i = if n == 64 { i } else { i & ((1 << n) - 1) };
        let x = BoolVec::from_index(n, i);
        prop_assert_eq!(x.to_index(), Some(i));
        prop_assert_eq!(x.to_string().parse::<BoolVec>().unwrap(), x);
    }

    #[test]
    fn neighborhood_is_disjoint_and_adjacent(seed in any::<u64>(), n in 1usize..=8) {
        let rep = rep_from(seed, n);
        let s: BTreeSet<BoolVec> = rep.positives().clone();
        let nb = neighborhood(&s, n).unwrap();
        for y in &nb {
            prop_assert!(!s.contains(y));
            prop_assert!(s.iter().any(|x| x.distance(y) == 1));
        }
        for x in &s {
            for y in x.neighbors() {
                prop_assert!(s.contains(&y) || nb.contains(&y));
            }
        }
    }

    #[test]
    fn evaluation_matches_oracle(seed in any::<u64>(), n in 1usize..=9) {
        let rep = rep_from(seed, n);
        let o = Oracle::of(&rep);
        prop_assert!(o.is_valid());
        for x in cube(n) {
            prop_assert_eq!(rep.evaluate(&to_vec(&x)).ok(), o.classify(&x));
        }
    }

    #[test]
    fn prototypes_classify_to_their_own_class(seed in any::<u64>(), n in 1usize..=10) {
        let rep = rep_from(seed, n);
        for (p, label) in rep.prototypes() {
            prop_assert_eq!(rep.evaluate(p).unwrap(), label);
        }
    }

    #[test]
    fn negation_is_an_involutive_complement(seed in any::<u64>(), n in 1usize..=9) {
        let rep = rep_from(seed, n);
        let neg = rep.negate();
        prop_assert_eq!(&neg.negate(), &rep);
        prop_assert_eq!(neg.positives(), rep.negatives());
        for x in cube(n) {
            let x = to_vec(&x);
            prop_assert_eq!(neg.evaluate(&x).unwrap(), !rep.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn implicant_matches_scan((seed, n, lits) in (any::<u64>(), 1usize..=8).prop_flat_map(|(s, n)| (Just(s), Just(n), literal_sets(n)))) {
        let rep = rep_from(seed, n);
        let o = Oracle::of(&rep);
        let t = Term::new(lits.clone()).unwrap();
        let pairs: Vec<_> = lits.iter().map(|l| (l.var, l.positive)).collect();
        let want = cube(n).iter().filter(|x| common::term_holds(&pairs, x)).all(|x| o.classify(x) == Some(true));
        let (got, stats) = queries::im_with_stats(&rep, &t).unwrap();
        prop_assert_eq!(got, want);
        prop_assert!(stats.distance_evals <= n * o.pos.len() * o.neg.len());
    }

    #[test]
    fn entailment_matches_scan((seed, n, lits) in (any::<u64>(), 1usize..=8).prop_flat_map(|(s, n)| (Just(s), Just(n), literal_sets(n)))) {
        let rep = rep_from(seed, n);
        let o = Oracle::of(&rep);
        let c = Clause::new(lits.clone()).unwrap();
        let pairs: Vec<_> = lits.iter().map(|l| (l.var, l.positive)).collect();
        let want = o.models().iter().all(|x| common::clause_holds(&pairs, x));
        prop_assert_eq!(queries::ce(&rep, &c).unwrap(), want);
        prop_assert_eq!(queries::im(&rep.negate(), &c.negate()).unwrap(), want);
    }

    #[test]
    fn empty_term_and_clause(seed in any::<u64>(), n in 1usize..=10) {
        let rep = rep_from(seed, n);
        prop_assert_eq!(queries::im(&rep, &Term::default()).unwrap(), queries::va(&rep));
        prop_assert_eq!(queries::ce(&rep, &Clause::default()).unwrap(), !queries::co(&rep));
    }

    #[test]
    fn enumeration_matches_table(seed in any::<u64>(), n in 1usize..=9, limit in 0usize..20) {
        let rep = rep_from(seed, n);
        let want = Oracle::of(&rep).models();
        let (models, stats) = queries::me_with_stats(&rep, None);
        prop_assert_eq!(models.iter().map(to_bits).collect::<Vec<_>>(), want.clone());
        prop_assert!(stats.im_calls <= 4 * (n + 1) * (want.len() + 1));
        prop_assert_eq!(queries::ct_enumerate(&rep), want.len() as u64);
        let prefix = queries::me(&rep, Some(limit));
        prop_assert_eq!(prefix, models.into_iter().take(limit).collect::<Vec<_>>());
    }

    #[test]
    fn equivalence_is_mutual_entailment(a in any::<u64>(), b in any::<u64>(), n in 1usize..=5) {
        let (ra, rb) = (rep_from(a, n), rep_from(b, n));
        let eq = queries::eq(&ra, &rb, &limits()).unwrap() == Equivalence::Equivalent;
        let ab = queries::se(&ra, &rb, &limits()).unwrap() == Entailment::Entails;
        let ba = queries::se(&rb, &ra, &limits()).unwrap() == Entailment::Entails;
        prop_assert_eq!(eq, ab && ba);
        prop_assert_eq!(eq, Oracle::of(&ra).table() == Oracle::of(&rb).table());
        prop_assert_eq!(queries::eq(&ra, &ra, &limits()).unwrap(), Equivalence::Equivalent);
        if let Entailment::Counterexample(x) = queries::se(&ra, &rb, &limits()).unwrap() {
            prop_assert!(ra.evaluate(&x).unwrap() && !rb.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn model_set_round_trip(f in small_table()) {
        let rep = mods_to_bnn(&f);
        prop_assert!(rep.validate_semantic(&limits()).unwrap().is_valid());
        prop_assert_eq!(&rep.to_truth_table(&limits()).unwrap(), &f);
        prop_assert!(rep.size() <= f.len().max(1) * (f.n() + 1));
    }

    #[test]
    fn bdd_matches_rep(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = sample::random_valid_rep(&mut rng, n, 7);
        let bdd = bnn_to_bdd(&rep);
        prop_assert!(bdd.node_count() <= bdd_size_bound(n, rep.size()));
        for x in cube(n) {
            let x = to_vec(&x);
            prop_assert_eq!(bdd.eval(&x).unwrap(), rep.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn gadget_contract((pi, pj) in (1usize..=7).prop_flat_map(|n| (bits(n), bits(n)))) {
        let n = pi.len();
        let g = comparison_gadget(&pi, &pj).unwrap();
        prop_assert!(g.node_count() <= gadget_size(n));
        prop_assert!(gadget_size(n) < (n + 1) * (n + 1));
        for x in cube(n) {
            let x = to_vec(&x);
            prop_assert_eq!(g.eval(&x).unwrap(), x.distance(&pi) <= x.distance(&pj));
        }
    }

    #[test]
    fn component_sizes_cover_each_side(f in small_table()) {
        let r = components(&f);
        let total = 1usize << f.n();
        prop_assert_eq!(r.positive.sizes.iter().sum::<usize>(), f.len());
        prop_assert_eq!(r.negative.sizes.iter().sum::<usize>(), total - f.len());
        let want: Vec<bool> = cube(f.n()).iter().map(|x| f.contains(&to_vec(x))).collect();
        prop_assert_eq!((r.positive.count(), r.positive.isolated.len()), common::side_components(f.n(), &want, true));
        prop_assert_eq!((r.negative.count(), r.negative.isolated.len()), common::side_components(f.n(), &want, false));
        prop_assert_eq!(bnn_lower_bound(&f), r.lower_bound());
    }

    #[test]
    fn isolated_vectors_are_prototypes_of_every_witness(f in small_table()) {
        prop_assume!(f.n() <= 4);
        let (size, witness) = min_bnn(&f).unwrap();
        let r = components(&f);
        prop_assert_eq!(witness.size(), size);
        prop_assert!(r.lower_bound() <= size);
        prop_assert_eq!(&witness.to_truth_table(&limits()).unwrap(), &f);
        for x in &r.positive.isolated {
            prop_assert!(witness.positives().contains(x));
        }
        for x in &r.negative.isolated {
            prop_assert!(witness.negatives().contains(x));
        }
    }

    #[test]
    fn conditioning_fixes_literals((seed, n, lits) in (any::<u64>(), 2usize..=7).prop_flat_map(|(s, n)| (Just(s), Just(n), literal_sets(n)))) {
        prop_assume!(lits.len() < n);
        let rep = rep_from(seed, n);
        let t = Term::new(lits.clone()).unwrap();
        let r = condition(&rep, &t, &limits()).unwrap();
        prop_assert_eq!(r.rep.n(), n - lits.len());
        let o = Oracle::of(&rep);
        for y in cube(r.rep.n()) {
            let mut x = vec![false; n];
            for l in &lits {
                x[l.var - 1] = l.positive;
            }
            for &(old, new) in &r.var_map {
                x[old - 1] = y[new - 1];
            }
            prop_assert_eq!(r.rep.evaluate(&to_vec(&y)).ok(), o.classify(&x));
        }
    }

    #[test]
    fn forgetting_is_existential((seed, n, mask) in (any::<u64>(), 2usize..=7).prop_flat_map(|(s, n)| (Just(s), Just(n), prop::collection::vec(any::<bool>(), n)))) {
        let vars: BTreeSet<usize> = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect();
        prop_assume!(vars.len() < n);
        let rep = rep_from(seed, n);
        let r = forget(&rep, &vars, &limits()).unwrap();
        let o = Oracle::of(&rep);
        let models = o.models();
        for y in cube(r.rep.n()) {
            let want = models.iter().any(|x| r.var_map.iter().all(|&(old, new)| x[old - 1] == y[new - 1]));
            prop_assert_eq!(r.rep.evaluate(&to_vec(&y)).unwrap(), want);
        }
        // Forgetting only adds models.
        for x in &models {
            let y: Vec<bool> = r.var_map.iter().map(|&(old, _)| x[old - 1]).collect();
            prop_assert!(r.rep.evaluate(&to_vec(&y)).unwrap());
        }
    }

    #[test]
    fn forgetting_order_does_not_matter(seed in any::<u64>(), n in 3usize..=6, a in 1usize..=6, b in 1usize..=6) {
        prop_assume!(a <= n && b <= n && a != b);
        let rep = rep_from(seed, n);
        let both = forget(&rep, &BTreeSet::from([a, b]), &limits()).unwrap();
        let renum = |v: usize, gone: usize| if v > gone { v - 1 } else { v };
        let ab = forget(&forget(&rep, &BTreeSet::from([a]), &limits()).unwrap().rep, &BTreeSet::from([renum(b, a)]), &limits()).unwrap();
        let ba = forget(&forget(&rep, &BTreeSet::from([b]), &limits()).unwrap().rep, &BTreeSet::from([renum(a, b)]), &limits()).unwrap();
        prop_assert_eq!(queries::eq(&both.rep, &ab.rep, &limits()).unwrap(), Equivalence::Equivalent);
        prop_assert_eq!(queries::eq(&both.rep, &ba.rep, &limits()).unwrap(), Equivalence::Equivalent);
        let again = forget(&both.rep, &BTreeSet::new(), &limits()).unwrap();
        prop_assert_eq!(queries::eq(&both.rep, &again.rep, &limits()).unwrap(), Equivalence::Equivalent);
    }

    #[test]
    fn half_size_independent_set_identities(edges in prop::collection::btree_set((1usize..=6, 1usize..=6), 0..12)) {
        let edges: Vec<_> = edges.into_iter().filter(|(u, v)| u != v).collect();
        let g = Graph::new(6, edges).unwrap();
        let plain: Vec<_> = g.edges().iter().copied().collect();
        let count = count_half_is(&g).unwrap();
        prop_assert_eq!(count, count_independent(6, &plain, 3));
        let (f, h) = gen_hsis_pair(&g).unwrap();
        prop_assert!(h.validate_semantic(&limits()).unwrap().is_valid());
        prop_assert_eq!(queries::se(&h, &f, &limits()).unwrap(), Entailment::Entails);
        prop_assert_eq!(queries::ct_enumerate(&f) - queries::ct_enumerate(&h), count);
        let equal = queries::eq(&f, &h, &limits()).unwrap() == Equivalence::Equivalent;
        prop_assert_eq!(equal, count == 0);
        if let Equivalence::Counterexample(x) = queries::eq(&f, &h, &limits()).unwrap() {
            prop_assert_eq!(x.weight(), 3);
        }
    }

    #[test]
    fn formats_round_trip(seed in any::<u64>(), n in 1usize..=6, codes in prop::collection::vec(any::<bool>(), 64), edges in prop::collection::btree_set((1usize..=5, 1usize..=5), 0..8)) {
        let rep = rep_from(seed, n);
        let f = table(n, &codes[..1 << n]);
        let g = Graph::new(5, edges.into_iter().filter(|(u, v)| u != v)).unwrap();
        let term = Term::new([Literal::pos(1), Literal::neg(n + 2)]).unwrap();
        let cnf = Cnf3::new(3, vec![vec![Literal::pos(1), Literal::neg(3)], vec![Literal::pos(2)]]).unwrap();
        let docs = [
            Document::Bnn(rep.clone()),
            Document::Mods(f),
            Document::Bdd(bnn_to_bdd(&rep)),
            Document::Graph(g),
            Document::Cnf(cnf),
            Document::Clause(term.negate()),
            Document::Term(term),
        ];
        for doc in docs {
            let text = formats::serialize(&doc);
            prop_assert!(text.ends_with('\n') && !text.contains(" \n") && !text.contains('\r'));
            let back = formats::parse(doc.kind(), &text, &limits()).unwrap();
            prop_assert_eq!(formats::serialize(&back), text);
            prop_assert_eq!(back, doc);
        }
    }

    #[test]
    fn serialization_ignores_construction_order(seed in any::<u64>(), n in 1usize..=8) {
        let rep = rep_from(seed, n);
        let pos: Vec<_> = rep.positives().iter().rev().cloned().collect();
        let neg: Vec<_> = rep.negatives().iter().rev().cloned().collect();
        let rebuilt = BnnRep::new(n, pos, neg).unwrap();
        prop_assert_eq!(formats::write_bnn(&rebuilt), formats::write_bnn(&rep));
        let canonical = formats::write_bnn(&rep);
        let mut lines: Vec<&str> = canonical.lines().skip(1).collect();
        lines.reverse();
        let text = format!("bnn {n}\n# reversed\n{}\n", lines.join("\n"));
        prop_assert_eq!(formats::parse_bnn(&text, &limits()).unwrap(), rep);
        prop_assert_eq!(lines.len(), rebuilt.size());
    }
}

#[test]
fn lower_bound_never_exceeds_minimum_size_at_three_variables() {
    for code in 0u32..256 {
        let codes: Vec<bool> = (0..8).map(|i| code >> i & 1 == 1).collect();
        let f = table(3, &codes);
        let (size, witness) = min_bnn(&f).unwrap();
        assert!(bnn_lower_bound(&f) <= size, "function {code}");
        assert_eq!(Oracle::of(&witness).table(), codes);
        assert_eq!(size, common::min_size(3, &codes), "function {code}");
    }
}
