//! Cross-module property suites: omega-power laws over random transformation
//! monoids, minimality of the stable closure, evaluation under quotient maps,
//! and word-level validation of the pair-monoid deciders.

use proptest::prelude::*;

use monoidkit::burnside::BurnsideOracle;
use monoidkit::corpus::transformation_monoids;
use monoidkit::monoid::{
    from_generators, green_data, stable_closure, FiniteMonoid, Transformation,
};
use monoidkit::pseudovar::{in_j_semidirect_burnside, pair_monoid, PseudovarOptions};
use monoidkit::terms::{eval, Exponent, OmegaTerm};

fn arb_transformation(degree: usize) -> impl Strategy<Value = Transformation> {
    proptest::collection::vec(0..degree as u32, degree).prop_map(Transformation::new)
}

fn arb_monoid() -> impl Strategy<Value = FiniteMonoid> {
    (2usize..=5)
        .prop_flat_map(|degree| proptest::collection::vec(arb_transformation(degree), 1..=2))
        .prop_map(|gens| from_generators(&gens, 100_000).unwrap().monoid)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn omega_power_laws(m in arb_monoid()) {
        for s in m.elements() {
            let idem = m.omega_power(s, 0);
            prop_assert!(m.is_idempotent(idem));
            prop_assert_eq!(m.mul(idem, s), m.mul(s, idem));
            let plus = m.omega_power(s, 1);
            let minus = m.omega_power(s, -1);
            prop_assert_eq!(m.mul(plus, minus), idem);
            let p = m.period_of(s) as i64;
            for k in -3..=3i64 {
                prop_assert_eq!(m.omega_power(s, k), m.omega_power(s, k + p));
            }
        }
    }

    #[test]
    fn green_h_refines_r_and_l(m in arb_monoid()) {
        let g = green_data(&m);
        for a in m.elements() {
            for b in m.elements() {
                if g.h_class[a] == g.h_class[b] {
                    prop_assert_eq!(g.r_class[a], g.r_class[b]);
                    prop_assert_eq!(g.l_class[a], g.l_class[b]);
                }
                if g.r_class[a] == g.r_class[b] {
                    prop_assert_eq!(g.j_class[a], g.j_class[b]);
                }
                if g.l_class[a] == g.l_class[b] {
                    prop_assert_eq!(g.j_class[a], g.j_class[b]);
                }
            }
        }
        // every regular element sits in a J-class with an idempotent
        for s in m.elements() {
            let regular = m.elements().any(|x| m.mul(m.mul(s, x), s) == s);
            if regular {
                prop_assert!(
                    g.idempotents.iter().any(|&e| g.j_class[e] == g.j_class[s]),
                    "regular element without idempotent in its J-class"
                );
            }
        }
    }

    #[test]
    fn stable_closure_is_minimal(
        gens in proptest::collection::vec(arb_transformation(3), 1..=2),
        raw_pairs in proptest::collection::vec((0usize..6, 0usize..6), 0..4),
    ) {
        let m = from_generators(&gens, 1000).unwrap().monoid;
        prop_assume!(m.size() <= 6);
        let n = m.size();
        let required: Vec<(usize, usize)> = raw_pairs
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .collect();
        let closure = stable_closure(&m, &required);
        let rel = &closure.relation;

        // closure soundness
        for &(a, b) in &required {
            prop_assert!(rel.get(a, b));
        }
        // minimality: dropping any non-required, non-diagonal pair must break
        // transitivity or stability, otherwise a smaller closed relation exists
        for a in 0..n {
            for b in 0..n {
                if !rel.get(a, b) || a == b || required.contains(&(a, b)) {
                    continue;
                }
                let regenerated_by_transitivity = (0..n).any(|c| {
                    rel.get(a, c) && rel.get(c, b) && (a, c) != (a, b) && (c, b) != (a, b)
                });
                let regenerated_by_stability = m.generators().iter().any(|&g| {
                    (0..n).any(|x| {
                        (0..n).any(|y| {
                            rel.get(x, y)
                                && (x, y) != (a, b)
                                && ((m.mul(g, x), m.mul(g, y)) == (a, b)
                                    || (m.mul(x, g), m.mul(y, g)) == (a, b))
                        })
                    })
                });
                prop_assert!(
                    regenerated_by_transitivity || regenerated_by_stability,
                    "pair ({a}, {b}) is not forced: closure is not minimal"
                );
            }
        }
    }
}

fn arb_term() -> impl Strategy<Value = OmegaTerm> {
    let leaf = prop_oneof![
        Just(OmegaTerm::One),
        proptest::sample::select(vec!['x', 'y', 'z']).prop_map(OmegaTerm::Var),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 2..=3).prop_map(OmegaTerm::concat),
            (inner.clone(), 1u32..=4).prop_map(|(t, k)| t.pow(Exponent::Int(k))),
            (inner, -2i32..=2).prop_map(|(t, k)| t.pow(Exponent::OmegaPlus(k))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Evaluation commutes with monoid quotient maps: the cyclic group C6
    /// projects onto C3 and C2 by reducing the exponent.
    #[test]
    fn eval_respects_quotients(term in arb_term(), subs in proptest::collection::vec(0usize..6, 3)) {
        let c6 = cyclic(6);
        for target in [2usize, 3] {
            let q = cyclic(target);
            // element k of C6 is g^k by construction; the quotient sends it to g^(k mod target)
            let hom = |e: usize| e % target;
            let sub6: Vec<(char, usize)> = ['x', 'y', 'z'].iter().copied().zip(subs.iter().copied()).collect();
            let subq: Vec<(char, usize)> = sub6.iter().map(|&(v, e)| (v, hom(e))).collect();
            let above = eval(&term, &c6, &sub6).unwrap();
            let below = eval(&term, &q, &subq).unwrap();
            prop_assert_eq!(hom(above), below);
        }
    }
}

fn cyclic(n: usize) -> FiniteMonoid {
    let mut images: Vec<u32> = (1..n as u32).collect();
    images.push(0);
    from_generators(&[Transformation::new(images)], 1000)
        .unwrap()
        .monoid
}

/// Powers of every generated element land in the identity fiber of the pair
/// monoid: sigma(w^n) is trivial, so (m^n, 1) is always reachable.
#[test]
fn pair_monoid_fiber_contains_nth_powers() {
    for (seed, n) in [(3u64, 2u32), (5, 3)] {
        for m in transformation_monoids(seed, 8, 120) {
            let pm = pair_monoid(&m, n, 2_000_000).unwrap();
            for s in m.elements() {
                let p = m.pow(s, n as u64);
                assert!(
                    pm.fiber.binary_search(&p).is_ok(),
                    "{n}th power {p} missing from the fiber (monoid size {})",
                    m.size()
                );
            }
        }
    }
}

/// When the semidirect decider accepts a tiny monoid, no word-level quadruple
/// satisfying the Burnside-side constraints may violate the Knast identity.
#[test]
fn knast_acceptance_agrees_with_word_search() {
    let opts = PseudovarOptions::default();
    let monoids: Vec<FiniteMonoid> = transformation_monoids(17, 40, 4)
        .into_iter()
        .filter(|m| m.size() <= 4)
        .collect();
    assert!(!monoids.is_empty());
    let n = 2u32;
    for m in &monoids {
        let (member, _) = in_j_semidirect_burnside(m, n, &opts).unwrap();
        if !member {
            continue;
        }
        let k = m.generators().len();
        let oracle = BurnsideOracle::new(n, k).unwrap();
        // all words up to length 4 over the generators
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..k {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        let eval_word = |w: &[usize]| {
            w.iter()
                .fold(m.identity(), |acc, &g| m.mul(acc, m.generators()[g]))
        };
        for wx in &words {
            let hx = oracle.sigma(wx).unwrap();
            for wy in &words {
                let hy = oracle.sigma(wy).unwrap();
                if !oracle.is_identity(&oracle.multiply(&hx, &hy).unwrap()) {
                    continue;
                }
                for wz in &words {
                    if oracle.sigma(wz).unwrap() != hx {
                        continue;
                    }
                    for wt in &words {
                        let ht = oracle.sigma(wt).unwrap();
                        if !oracle.is_identity(&oracle.multiply(&hx, &ht).unwrap()) {
                            continue;
                        }
                        let (x, y, z, t) =
                            (eval_word(wx), eval_word(wy), eval_word(wz), eval_word(wt));
                        let e = m.omega_power(m.mul(x, y), 0);
                        let f = m.omega_power(m.mul(z, t), 0);
                        let lhs = m.mul(m.mul(m.mul(e, x), t), f);
                        let rhs = m.mul(e, f);
                        assert_eq!(
                            lhs,
                            rhs,
                            "accepted monoid (size {}) violates the Knast identity on words",
                            m.size()
                        );
                    }
                }
            }
        }
    }
}

/// Chained insertion proofs compose: provable(u, v) and provable(v, w) give
/// provable(u, w).
#[test]
fn provability_is_transitive_on_random_chains() {
    use monoidkit::provability::provable_leq;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let n = if rng.gen_bool(0.5) { 2 } else { 3 };
        let u: String = (0..rng.gen_range(0..3))
            .map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' })
            .collect();
        let mut insert = |base: &str| {
            let mut v = base.to_string();
            let w: String = (0..rng.gen_range(1..=2))
                .map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' })
                .collect();
            let pos = rng.gen_range(0..=v.len());
            v.insert_str(pos, &w.repeat(n));
            v
        };
        let v = insert(&u);
        let w = insert(&v);
        assert!(provable_leq(&u, &v, n).provable);
        assert!(provable_leq(&v, &w, n).provable);
        let direct = provable_leq(&u, &w, n);
        assert!(direct.provable, "{u:?} -> {w:?} at n = {n}");
        assert!(direct.proof.unwrap().is_valid());
    }
}

/// Syntactic orders validate as stable partial orders on random languages.
#[test]
fn syntactic_orders_validate_everywhere() {
    use monoidkit::corpus::random_dfas;
    use monoidkit::lang::syntactic_ordered_monoid;
    use monoidkit::monoid::OrderedMonoid;
    for dfa in random_dfas(71, 12, &['a', 'b'], 5) {
        let s = syntactic_ordered_monoid(&dfa, 100_000).unwrap();
        let om = s.ordered();
        OrderedMonoid::new(om.monoid().clone(), om.leq_matrix().clone())
            .expect("syntactic order must be a stable partial order");
    }
}

/// The BFS numbering of transition monoids is reproducible end to end.
#[test]
fn syntactic_monoid_construction_is_deterministic() {
    use monoidkit::lang::{lang_l2, syntactic_ordered_monoid};
    let a = syntactic_ordered_monoid(&lang_l2(), 100_000).unwrap();
    let b = syntactic_ordered_monoid(&lang_l2(), 100_000).unwrap();
    assert_eq!(a.monoid().to_text(), b.monoid().to_text());
    assert_eq!(a.ordered().leq_matrix(), b.ordered().leq_matrix());
    assert_eq!(a.accept_set(), b.accept_set());
}

/// All core values are immutable after construction and safe to share.
#[test]
fn core_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<monoidkit::monoid::FiniteMonoid>();
    assert_send_sync::<monoidkit::monoid::OrderedMonoid>();
    assert_send_sync::<monoidkit::monoid::GreenData>();
    assert_send_sync::<monoidkit::lang::Dfa>();
    assert_send_sync::<monoidkit::lang::SyntacticResult>();
    assert_send_sync::<monoidkit::burnside::BurnsideOracle>();
    assert_send_sync::<monoidkit::burnside::BurnsideElement>();
    assert_send_sync::<monoidkit::pseudovar::PairMonoid>();
    assert_send_sync::<monoidkit::pseudovar::MembershipReport>();
    assert_send_sync::<monoidkit::terms::OmegaTerm>();
    assert_send_sync::<monoidkit::provability::InsertionProof>();
}
