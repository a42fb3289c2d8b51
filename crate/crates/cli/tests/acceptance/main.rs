//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the checked values. Everything asserts exactly; no tolerances.

mod linalg;

use std::collections::BTreeSet;
use std::process::Command;

use num::rational::BigRational;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quivar::coefficients::{Coefficient, FieldValue, Polynomial};
use quivar::elements::{complete_reduce, Element};
use quivar::groebner::{buchberger, membership, reduced_basis, Membership};
use quivar::monomial::MonomialData;
use quivar::paths::OrderKind;
use quivar::resolution::{betti, cartan_check, global_dimension, CartanVerdict, GlobalDimension};
use quivar::variety::{
    admissible_variety, algebra_to_point, graded_variety, overlaps_reduce_to_zero, plain_variety,
    point_to_algebra, AlgebraPoint,
};
use quivar::{CompletionCaps, Path, PathOrder, Quiver, WeightFunction};

const WORKED_EQUATIONS_GOLDEN: &str = include_str!("golden/worked_equations.txt");

fn loops(n: usize) -> (Quiver, PathOrder) {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let arrows: Vec<(String, String, String)> = names
        .iter()
        .map(|x| (x.clone(), "v".to_string(), "v".to_string()))
        .collect();
    let quiver = Quiver::new(vec!["v"], arrows).unwrap();
    let desc: Vec<&str> = names.iter().rev().map(|s| s.as_str()).collect();
    let ord = PathOrder::new(&quiver, OrderKind::LengthLex, &desc, &["v"]).unwrap();
    (quiver, ord)
}

fn eight_vertex() -> (Quiver, PathOrder) {
    let quiver = Quiver::new(
        ["1", "2", "3", "4", "5", "6", "7", "8"],
        [
            ("a", "1", "2"),
            ("b", "2", "5"),
            ("c", "1", "3"),
            ("d", "3", "5"),
            ("e", "1", "4"),
            ("f", "4", "5"),
            ("g", "1", "6"),
            ("h", "6", "8"),
            ("i", "5", "8"),
            ("j", "4", "7"),
            ("k", "7", "8"),
        ]
        .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
    )
    .unwrap();
    let ord = PathOrder::new(
        &quiver,
        OrderKind::LengthLeftLex,
        &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"],
        &["1", "2", "3", "4", "5", "6", "7", "8"],
    )
    .unwrap();
    (quiver, ord)
}

fn md(quiver: &Quiver, tips: &[&str]) -> MonomialData {
    MonomialData::new(
        quiver,
        tips.iter().map(|t| quiver.parse_path(t).unwrap()).collect(),
    )
    .unwrap()
}

fn small_rational(rng: &mut ChaCha8Rng) -> FieldValue {
    let num = rng.gen_range(-3i64..=3);
    let den = rng.gen_range(1i64..=2);
    FieldValue::rational(num, den)
}

/// Every terminal result of every possible sequence of single substitutions,
/// replayed directly from the definitions (no reduction-engine calls).
fn replay_all_strategies(
    quiver: &Quiver,
    ord: &PathOrder,
    x: &Element<Polynomial>,
    gens: &[Element<Polynomial>],
    out: &mut Vec<Element<Polynomial>>,
) {
    let mut any = false;
    for (p, alpha) in x.terms() {
        for f in gens {
            let (tip, _) = f.tip(ord).unwrap();
            for (r, s) in p.subpath_occurrences(quiver, tip) {
                any = true;
                let rfs = f.path_times(quiver, &r).times_path(quiver, &s);
                let y = x.sub(&rfs.scaled(alpha));
                replay_all_strategies(quiver, ord, &y, gens, out);
            }
        }
    }
    if !any {
        out.push(x.clone());
    }
}

#[test]
fn ac01_worked_example_variety() {
    let (quiver, ord) = eight_vertex();
    let data = md(&quiver, &["a*b", "b*i", "c*d*i"]);
    let vp = plain_variety(&data, &ord).unwrap();

    // exactly one overlap, o(g1, g2, i, a)
    assert_eq!(vp.overlap_inventory.len(), 1);
    let ov = &vp.overlap_inventory[0];
    assert_eq!(ov.left_tip, quiver.parse_path("a*b").unwrap());
    assert_eq!(ov.right_tip, quiver.parse_path("b*i").unwrap());
    assert_eq!(ov.m, quiver.parse_path("i").unwrap());
    assert_eq!(ov.n, quiver.parse_path("a").unwrap());

    // (ii) brute-force replay of the definition decides the coefficient set;
    // the golden file records the decided set
    let h1 = &vp.generators[0];
    let h2 = &vp.generators[1];
    let overlap = h1
        .times_path(&quiver, &quiver.parse_path("i").unwrap())
        .sub(&h2.path_times(&quiver, &quiver.parse_path("a").unwrap()));
    let mut terminals = Vec::new();
    replay_all_strategies(&quiver, &ord, &overlap, &vp.generators, &mut terminals);
    assert!(!terminals.is_empty());
    for t in &terminals {
        assert_eq!(t, &terminals[0], "every substitution strategy agrees here");
    }
    let mut decided: BTreeSet<String> = BTreeSet::new();
    for (_, coeff) in terminals[0].terms() {
        let f = coeff.sign_normalized();
        if !f.is_zero() {
            decided.insert(f.canonical_text());
        }
    }
    let golden: BTreeSet<String> = WORKED_EQUATIONS_GOLDEN
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect();
    assert_eq!(
        decided, golden,
        "replay-decided equation set matches the golden file"
    );
    let computed: BTreeSet<String> = vp.equations.iter().map(|f| f.canonical_text()).collect();
    assert_eq!(
        computed, golden,
        "deterministic engine agrees with the replay"
    );

    // reconcile against the reference set {x2 - x1x3, x1x4, x5}: the decided
    // set differs in exactly two documented places, and the zero sets are
    // genuinely different (witness below)
    let var = |name: &str| Polynomial::var(&vp.vars, vp.vars.index_of(name).unwrap());
    let x = [
        var("x[a*b;c*d]"),
        var("x[a*b;e*f]"),
        var("x[c*d*i;e*f*i]"),
        var("x[c*d*i;e*j*k]"),
        var("x[c*d*i;g*h]"),
    ];
    let reference = [
        x[1].sub(&x[0].mul(&x[2])).sign_normalized(), // x1x3 - x2
        x[0].mul(&x[3]),                              // x1x4
        x[4].clone(),                                 // x5
    ];
    // first equation: same quadratic part, opposite sign on the linear term
    assert_eq!(vp.equations[0], x[0].mul(&x[2]).add(&x[1]));
    assert_eq!(vp.equations[0].sub(&reference[0]), x[1].add(&x[1]));
    // second equation agrees; third carries the extra x1 factor
    assert_eq!(vp.equations[1], reference[1]);
    assert_eq!(vp.equations[2], x[0].mul(&reference[2]));
    // witness separating the zero sets: (0,0,1,1,1) is a point of the
    // computed variety (its basis is certified) but violates the reference
    let witness = AlgebraPoint::new(vec![
        FieldValue::zero_rational(),
        FieldValue::zero_rational(),
        FieldValue::one_rational(),
        FieldValue::one_rational(),
        FieldValue::one_rational(),
    ]);
    assert!(vp.satisfies(&witness).unwrap());
    assert!(overlaps_reduce_to_zero(&quiver, &vp.generators_at(&witness).unwrap(), &ord).unwrap());
    let reference_violated = reference
        .iter()
        .any(|f| !f.evaluate(&witness.values).unwrap().is_zero());
    assert!(
        reference_violated,
        "the reference set excludes a certified point"
    );

    // (iii) random points satisfy the equations iff the candidate basis is
    // certified by reducing its overlap to zero
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut on_variety = 0usize;
    let mut checked = 0usize;
    for trial in 0..200 {
        let point = if trial % 4 == 3 {
            // engineered on-variety points exercise the "true" branch:
            // c2 = -c1*c3, c1*c4 = 0, c1*c5 = 0
            let c1 = small_rational(&mut rng);
            let c3 = small_rational(&mut rng);
            let c2 = c1.mul(&c3).neg();
            if c1.is_zero() {
                AlgebraPoint::new(vec![
                    c1,
                    FieldValue::zero_rational(),
                    c3,
                    small_rational(&mut rng),
                    small_rational(&mut rng),
                ])
            } else {
                AlgebraPoint::new(vec![
                    c1,
                    c2,
                    c3,
                    FieldValue::zero_rational(),
                    FieldValue::zero_rational(),
                ])
            }
        } else {
            AlgebraPoint::new((0..5).map(|_| small_rational(&mut rng)).collect())
        };
        let satisfied = vp.satisfies(&point).unwrap();
        let gens = vp.generators_at(&point).unwrap();
        let certified = overlaps_reduce_to_zero(&quiver, &gens, &ord).unwrap();
        assert_eq!(
            satisfied, certified,
            "equations and certification agree at {point:?}"
        );
        checked += 1;
        if satisfied {
            on_variety += 1;
        }
    }
    assert!(
        on_variety >= 50,
        "the sample hits the variety ({on_variety})"
    );
    assert!(on_variety < checked, "the sample leaves the variety too");
    println!(
        "AC-1 PASS: one overlap o(ab,bi,i,a); decided equations {{{}}}; {checked} points, {on_variety} on-variety, equations <=> certification",
        golden.iter().cloned().collect::<Vec<_>>().join(", ")
    );
}

#[test]
fn ac02_two_loop_tail_space_and_round_trip() {
    let (quiver, ord) = loops(2);
    let data = md(&quiver, &["x2*x1"]);
    let vp = plain_variety(&data, &ord).unwrap();
    assert_eq!(vp.dimension(), 5);
    assert!(vp.equations.is_empty());

    let tails: Vec<String> = vp
        .tail_space
        .tails(0)
        .iter()
        .map(|n| n.display(&quiver).to_string())
        .collect();
    assert_eq!(tails, vec!["x1*x2", "x1*x1", "x2", "x1", "e_v"]);
    let expected_set: BTreeSet<&str> = ["x1*x2", "x1*x1", "x1", "x2", "e_v"].into_iter().collect();
    let got_set: BTreeSet<&str> = tails.iter().map(String::as_str).collect();
    assert_eq!(got_set, expected_set);

    let commutator = Element::from_terms([
        (
            quiver.parse_path("x2*x1").unwrap(),
            FieldValue::one_rational(),
        ),
        (
            quiver.parse_path("x1*x2").unwrap(),
            FieldValue::from_integer(-1),
        ),
    ]);
    let tips = vec![quiver.parse_path("x2*x1").unwrap()];
    let point = algebra_to_point(
        &quiver,
        vec![commutator.clone()],
        &ord,
        &tips,
        &CompletionCaps::default(),
    )
    .unwrap();
    let mut expected = vec![FieldValue::zero_rational(); 5];
    expected[0] = FieldValue::one_rational();
    assert_eq!(point.values, expected);

    // and back: the point rebuilds exactly the commutator basis
    let gb = point_to_algebra(&vp, &point).unwrap();
    assert_eq!(gb.generators, vec![commutator]);
    println!("AC-2 PASS: N(x2x1) = {{x1x2, x1^2, x2, x1, 1}}, D=5, no equations; (1,0,0,0,0) round-trips");
}

#[test]
fn ac03_graded_restriction() {
    let (quiver, ord) = loops(2);
    let data = md(&quiver, &["x2*x1"]);
    let weights = WeightFunction::length_grading(&quiver);
    let plain = plain_variety(&data, &ord).unwrap();
    let graded = graded_variety(&data, &ord, &weights).unwrap();
    assert_eq!(graded.dimension(), 2);
    let tails: Vec<String> = graded
        .tail_space
        .tails(0)
        .iter()
        .map(|n| n.display(&quiver).to_string())
        .collect();
    assert_eq!(tails, vec!["x1*x2", "x1*x1"]);

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let point = AlgebraPoint::new(vec![small_rational(&mut rng), small_rational(&mut rng)]);
        assert!(graded.satisfies(&point).unwrap());
        let extended = graded.zero_extend(&plain, &point).unwrap();
        assert!(plain.satisfies(&extended).unwrap());
        // the extension really is by zeros
        for (i, (_, n)) in plain.legend.iter().enumerate() {
            let in_graded = graded.legend.iter().any(|(_, gn)| gn == n);
            if !in_graded {
                assert!(extended.values[i].is_zero());
            }
        }
    }
    println!("AC-3 PASS: N^W(x2x1) = {{x1x2, x1^2}}, D^W=2; 20 graded points zero-extend onto the plain variety");
}

#[test]
fn ac04_admissible_variant() {
    let (quiver, ord) = loops(1);
    let data = md(&quiver, &["x1*x1*x1"]);
    let plain = plain_variety(&data, &ord).unwrap();
    let admissible = admissible_variety(&data, &ord, 4).unwrap();

    assert_eq!(admissible.dimension(), 1);
    let texts: Vec<String> = admissible
        .equations
        .iter()
        .map(|f| f.canonical_text())
        .collect();
    assert_eq!(texts, vec!["x[x1*x1*x1;x1*x1]^2"]);
    // zero set is exactly {0}
    assert!(admissible.satisfies(&AlgebraPoint::zeros(1)).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..20 {
        let a = small_rational(&mut rng);
        if a.is_zero() {
            continue;
        }
        assert!(!admissible.satisfies(&AlgebraPoint::new(vec![a])).unwrap());
    }

    // x^3 - x^2 sits on the plain variety but not on the admissible one
    let relation = Element::from_terms([
        (
            quiver.parse_path("x1*x1*x1").unwrap(),
            FieldValue::one_rational(),
        ),
        (
            quiver.parse_path("x1*x1").unwrap(),
            FieldValue::from_integer(-1),
        ),
    ]);
    let tips = vec![quiver.parse_path("x1*x1*x1").unwrap()];
    let point = algebra_to_point(
        &quiver,
        vec![relation],
        &ord,
        &tips,
        &CompletionCaps::default(),
    )
    .unwrap();
    assert_eq!(
        point.values,
        vec![
            FieldValue::one_rational(),
            FieldValue::zero_rational(),
            FieldValue::zero_rational()
        ]
    );
    assert!(plain.satisfies(&point).unwrap());
    assert!(point_to_algebra(&plain, &point).is_ok());
    // restrict to the admissible coordinates (length >= 2 tails only)
    let restricted = AlgebraPoint::new(vec![point.values[0].clone()]);
    assert!(!admissible.satisfies(&restricted).unwrap());
    assert!(point_to_algebra(&admissible, &restricted).is_err());
    println!("AC-4 PASS: V^ad(4) of {{x^3}} cut out by A^2 with zero set {{0}}; x^3-x^2 accepted by plain, rejected by admissible");
}

#[test]
fn ac05_buchberger_soundness_and_straightening() {
    for n in [2usize, 3] {
        let (quiver, ord) = loops(n);
        let mut gens = Vec::new();
        for i in 1..=n {
            for j in 1..i {
                gens.push(Element::from_terms([
                    (
                        quiver.parse_path(&format!("x{i}*x{j}")).unwrap(),
                        FieldValue::one_rational(),
                    ),
                    (
                        quiver.parse_path(&format!("x{j}*x{i}")).unwrap(),
                        FieldValue::from_integer(-1),
                    ),
                ]));
            }
        }
        let gb = buchberger(&quiver, gens.clone(), &ord, &CompletionCaps::default()).unwrap();
        assert!(gb.status.is_complete());
        let reduced = reduced_basis(&quiver, &gb).unwrap();
        assert_eq!(reduced.generators.len(), gens.len());
        for g in &gens {
            assert!(
                reduced.generators.contains(g),
                "the commutators are their own reduced basis"
            );
        }
        for f in &gb.generators {
            for g in &gb.generators {
                for ov in quivar::elements::overlaps(&quiver, f, g, &ord).unwrap() {
                    let (nf, _) =
                        complete_reduce(&quiver, &ov.relation, &gb.generators, &ord).unwrap();
                    assert!(nf.is_zero(), "overlap reduces to zero");
                }
            }
        }
    }

    // straightening oracle: a random word minus its sorted form is in the
    // ideal; sorting is the independent predictor
    let (quiver, ord) = loops(3);
    let mut gens = Vec::new();
    for i in 1..=3 {
        for j in 1..i {
            gens.push(Element::from_terms([
                (
                    quiver.parse_path(&format!("x{i}*x{j}")).unwrap(),
                    FieldValue::one_rational(),
                ),
                (
                    quiver.parse_path(&format!("x{j}*x{i}")).unwrap(),
                    FieldValue::from_integer(-1),
                ),
            ]));
        }
    }
    let gb = buchberger(&quiver, gens, &ord, &CompletionCaps::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..20 {
        let len = rng.gen_range(3usize..=6);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1usize..=3)).collect();
        let word = |ls: &[usize]| {
            let text: Vec<String> = ls.iter().map(|i| format!("x{i}")).collect();
            quiver.parse_path(&text.join("*")).unwrap()
        };
        let mut sorted = letters.clone();
        sorted.sort();
        if sorted == letters {
            continue;
        }
        let x = Element::from_terms([
            (word(&letters), FieldValue::one_rational()),
            (word(&sorted), FieldValue::from_integer(-1)),
        ]);
        let (verdict, _) = membership(&quiver, &x, &gb).unwrap();
        assert_eq!(
            verdict,
            Membership::In,
            "{letters:?} straightens to {sorted:?}"
        );
    }
    println!("AC-5 PASS: commutator bases for n=2,3 certified complete and self-reduced; 20 straightening memberships hold");
}

#[test]
fn ac06_dimension_transfer() {
    let (quiver, ord) = loops(1);
    let nontips: Vec<Path> = ["e_v", "x1", "x1*x1"]
        .iter()
        .map(|t| quiver.parse_path(t).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..10 {
        let c: Vec<FieldValue> = (0..3).map(|_| small_rational(&mut rng)).collect();
        let mut relation = Element::from_path(
            quiver.parse_path("x1*x1*x1").unwrap(),
            FieldValue::one_rational(),
        );
        for (ni, coeff) in nontips.iter().rev().zip(c.iter()) {
            relation.add_term(ni.clone(), coeff.neg());
        }
        let gens = vec![relation];
        // every path of length <= 4 reduces into Span{1, x, x^2}
        let mut rows = Vec::new();
        for len in 0..=4usize {
            let path = if len == 0 {
                quiver.parse_path("e_v").unwrap()
            } else {
                quiver.parse_path(&vec!["x1"; len].join("*")).unwrap()
            };
            let x = Element::from_path(path, FieldValue::one_rational());
            let (nf, _) = complete_reduce(&quiver, &x, &gens, &ord).unwrap();
            for (p, _) in nf.terms() {
                assert!(nontips.contains(p), "normal form stays in Span(N)");
            }
            rows.push(
                nontips
                    .iter()
                    .map(|ni| {
                        nf.coefficient(ni)
                            .and_then(FieldValue::as_rational)
                            .cloned()
                            .unwrap_or_else(BigRational::zero)
                    })
                    .collect::<Vec<_>>(),
            );
        }
        assert_eq!(linalg::rank(rows), 3, "normal forms span all of Span(N)");
        // multiplication table closes on the basis
        for a in &nontips {
            for b in &nontips {
                let prod = a.compose(&quiver, b).unwrap();
                let x = Element::from_path(prod, FieldValue::one_rational());
                let (nf, _) = complete_reduce(&quiver, &x, &gens, &ord).unwrap();
                for (p, _) in nf.terms() {
                    assert!(nontips.contains(p));
                }
            }
        }
    }
    println!("AC-6 PASS: 10 random cubic deformations have K-basis {{1, x, x^2}} closed under multiplication (dim 3 = |N|)");
}

#[test]
fn ac07_hilbert_invariance() {
    let (quiver, ord) = loops(2);
    let data = md(&quiver, &["x2*x1"]);
    let coeffs = data.hilbert_series(8);
    let expected: Vec<num::BigUint> = (1u32..=9).map(num::BigUint::from).collect();
    assert_eq!(coeffs, expected);

    // all words of length d, as elements
    let words = |d: usize| -> Vec<Path> {
        if d == 0 {
            return vec![quiver.parse_path("e_v").unwrap()];
        }
        let mut out = Vec::new();
        for mask in 0..(1usize << d) {
            let letters: Vec<&str> = (0..d)
                .map(|k| if mask >> k & 1 == 0 { "x1" } else { "x2" })
                .collect();
            out.push(quiver.parse_path(&letters.join("*")).unwrap());
        }
        out
    };
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for trial in 0..5 {
        let (c1, c2) = if trial == 0 {
            (FieldValue::zero_rational(), FieldValue::zero_rational()) // the monomial point
        } else {
            (small_rational(&mut rng), small_rational(&mut rng))
        };
        let relation = Element::from_terms([
            (
                quiver.parse_path("x2*x1").unwrap(),
                FieldValue::one_rational(),
            ),
            (quiver.parse_path("x1*x2").unwrap(), c1.neg()),
            (quiver.parse_path("x1*x1").unwrap(), c2.neg()),
        ]);
        let gens = vec![relation];
        for d in 0..=8usize {
            // basis of the degree-d component: nontips x1^a x2^b of length d
            let basis: Vec<Path> = (0..=d)
                .map(|ones| {
                    let mut letters = vec!["x1"; d - ones];
                    letters.extend(vec!["x2"; ones]);
                    if letters.is_empty() {
                        quiver.parse_path("e_v").unwrap()
                    } else {
                        quiver.parse_path(&letters.join("*")).unwrap()
                    }
                })
                .collect();
            let mut rows = Vec::new();
            for w in words(d) {
                let x = Element::from_path(w, FieldValue::one_rational());
                let (nf, _) = complete_reduce(&quiver, &x, &gens, &ord).unwrap();
                let row: Vec<BigRational> = basis
                    .iter()
                    .map(|n| {
                        nf.coefficient(n)
                            .and_then(FieldValue::as_rational)
                            .cloned()
                            .unwrap_or_else(BigRational::zero)
                    })
                    .collect();
                for (p, _) in nf.terms() {
                    assert!(basis.contains(p), "normal forms live on nontips");
                }
                rows.push(row);
            }
            let rank = linalg::rank(rows);
            assert_eq!(rank, d + 1, "degree {d} of point #{trial}");
            assert_eq!(num::BigUint::from(rank), coeffs[d]);
        }
    }
    println!("AC-7 PASS: Hilbert coefficients 1..9 at truncation 8, equal for the monomial point and 4 random graded points");
}

#[test]
fn ac08_betti_against_syzygy_oracle() {
    // binomial row sums and global dimension for the commutator tip sets
    for n in [2usize, 3, 4] {
        let (quiver, _) = loops(n);
        let tips: Vec<String> = (1..=n)
            .flat_map(|i| (1..i).map(move |j| format!("x{i}*x{j}")))
            .collect();
        let tip_refs: Vec<&str> = tips.iter().map(String::as_str).collect();
        let data = md(&quiver, &tip_refs);
        let table = betti(&data, quiver.vertex_id("v").unwrap(), n + 1);
        let mut expected: Vec<u64> = (0..=n as u64).map(|k| binomial(n as u64, k)).collect();
        expected.push(0);
        assert_eq!(table.row_sums(), expected, "n = {n}");
        assert_eq!(global_dimension(&data, n + 1), GlobalDimension::Finite(n));
    }

    // chain counts equal the exact syzygy oracle, per homological degree,
    // internal degree, and terminus
    let mut cases: Vec<(Quiver, PathOrder, Vec<String>, usize, usize)> = Vec::new();
    for n in [2usize, 3] {
        let (quiver, ord) = loops(n);
        let tips: Vec<String> = (1..=n)
            .flat_map(|i| (1..i).map(move |j| format!("x{i}*x{j}")))
            .collect();
        cases.push((quiver, ord, tips, 6, 6));
    }
    {
        let (quiver, ord) = loops(4);
        let tips: Vec<String> = (1..=4)
            .flat_map(|i| (1..i).map(move |j| format!("x{i}*x{j}")))
            .collect();
        cases.push((quiver, ord, tips, 6, 6));
    }
    {
        let (quiver, ord) = loops(1);
        cases.push((quiver, ord, vec!["x1*x1*x1".to_string()], 5, 7));
    }
    {
        let quiver = Quiver::new(
            vec!["1", "2", "3"],
            vec![
                ("a".to_string(), "1".to_string(), "2".to_string()),
                ("b".to_string(), "2".to_string(), "3".to_string()),
            ],
        )
        .unwrap();
        let ord =
            PathOrder::new(&quiver, OrderKind::LengthLex, &["a", "b"], &["1", "2", "3"]).unwrap();
        cases.push((quiver, ord, vec!["a*b".to_string()], 4, 3));
    }
    {
        let (quiver, ord) = eight_vertex();
        cases.push((
            quiver,
            ord,
            vec!["a*b".to_string(), "b*i".to_string(), "c*d*i".to_string()],
            4,
            4,
        ));
    }

    for (quiver, ord, tips, n_max, d_max) in &cases {
        let tip_refs: Vec<&str> = tips.iter().map(String::as_str).collect();
        let data = md(quiver, &tip_refs);
        let gens: Vec<Element<FieldValue>> = tips
            .iter()
            .map(|t| Element::from_path(quiver.parse_path(t).unwrap(), FieldValue::one_rational()))
            .collect();
        let alg = oracle::GradedQuotient::new(quiver, ord, gens, *d_max);
        for v in quiver.vertex_ids() {
            let expected = oracle::graded_betti(&alg, v, *n_max, *d_max);
            let got = oracle::chain_counts(&data, v, *n_max, *d_max);
            assert_eq!(
                got,
                expected,
                "tips {tips:?} vertex {}",
                quiver.vertex_name(v)
            );
        }
    }
    println!("AC-8 PASS: Betti row sums C(n,k) with gldim n for n=2,3,4; chain counts match the syzygy oracle on {} tip sets (all vertices)", cases.len());

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

#[test]
fn ac09_cartan() {
    let line = Quiver::new(
        vec!["1", "2", "3"],
        vec![
            ("a".to_string(), "1".to_string(), "2".to_string()),
            ("b".to_string(), "2".to_string(), "3".to_string()),
        ],
    )
    .unwrap();
    let data = MonomialData::new(&line, vec![line.parse_path("a*b").unwrap()]).unwrap();
    let report = cartan_check(&data, 8).unwrap();
    assert_eq!(
        report.matrix,
        vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]
    );
    assert_eq!(report.determinant, num::BigInt::from(1));
    assert_eq!(report.global_dimension, GlobalDimension::Finite(2));
    assert_eq!(report.verdict, CartanVerdict::Pass);

    // Euler characteristic inverts the Cartan matrix on every
    // finite-dimensional, finite-global-dimension case in the suite
    let mut cases: Vec<MonomialData> = vec![data];
    let (q8, _) = eight_vertex();
    cases.push(md(&q8, &["a*b", "b*i", "c*d*i"]));
    let arrowless = Quiver::new(vec!["u", "w"], Vec::<(String, String, String)>::new()).unwrap();
    cases.push(MonomialData::new(&arrowless, vec![]).unwrap());
    for data in &cases {
        let quiver = data.quiver();
        let cartan = data.cartan_matrix().unwrap();
        assert!(matches!(
            global_dimension(data, 10),
            GlobalDimension::Finite(_)
        ));
        for v in quiver.vertex_ids() {
            let table = betti(data, v, 10);
            let mut alternating = vec![0i64; quiver.vertex_count()];
            for (deg, row) in table.rows.iter().enumerate() {
                let sign = if deg % 2 == 0 { 1 } else { -1 };
                for (w, &count) in row.iter().enumerate() {
                    alternating[w] += sign * count as i64;
                }
            }
            for j in 0..quiver.vertex_count() {
                let dot: i64 = (0..quiver.vertex_count())
                    .map(|w| alternating[w] * cartan[w][j] as i64)
                    .sum();
                assert_eq!(dot, if j == v.index() { 1 } else { 0 });
            }
        }
    }

    // finite dimension with infinite global dimension: determinant 3, no claim
    let (q1, _) = loops(1);
    let data = md(&q1, &["x1*x1*x1"]);
    let report = cartan_check(&data, 8).unwrap();
    assert_eq!(report.determinant, num::BigInt::from(3));
    assert_eq!(report.verdict, CartanVerdict::NoClaim);
    println!("AC-9 PASS: det C = 1 with gldim 2 for the line quiver; Euler rows invert C on 3 cases; {{x^3}} gives det 3, no claim");
}

#[test]
fn ac10_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_quivar");
    let problem = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../problems/worked-eight-vertex.qv"
    );
    let run = |jobs: &str| {
        let out = Command::new(bin)
            .args(["variety", problem, "--format", "json", "--jobs", jobs])
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let one = run("1");
    let four = run("4");
    let four_again = run("4");
    assert_eq!(one, four, "jobs=1 and jobs=4 produce byte-identical JSON");
    assert_eq!(four, four_again, "repeated runs are byte-identical");
    // and both agree with the committed golden bytes (which were produced
    // without --jobs at all)
    assert_eq!(
        String::from_utf8(one.clone()).unwrap(),
        include_str!("../golden/worked_variety.json")
    );
    println!(
        "AC-10 PASS: `variety --jobs 1` and `--jobs 4` agree byte-for-byte with the golden file ({} bytes of JSON)",
        one.len()
    );
}

#[test]
fn betti_invariance_across_graded_points() {
    // deformed algebras at graded points have the same graded Betti data as
    // the monomial point, witnessed by the oracle itself
    let (quiver, ord) = loops(2);
    let data = md(&quiver, &["x2*x1"]);
    let v = quiver.vertex_id("v").unwrap();
    let monomial_counts = oracle::chain_counts(&data, v, 4, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..3 {
        let (c1, c2) = (small_rational(&mut rng), small_rational(&mut rng));
        let relation = Element::from_terms([
            (
                quiver.parse_path("x2*x1").unwrap(),
                FieldValue::one_rational(),
            ),
            (quiver.parse_path("x1*x2").unwrap(), c1.neg()),
            (quiver.parse_path("x1*x1").unwrap(), c2.neg()),
        ]);
        let alg = oracle::GradedQuotient::new(&quiver, &ord, vec![relation], 6);
        let deformed = oracle::graded_betti(&alg, v, 4, 6);
        assert_eq!(deformed, monomial_counts, "at point ({c1:?}, {c2:?})");
    }
    println!("SUPPLEMENT PASS: syzygy oracle reports identical Betti data for 3 deformed points and the monomial algebra");
}
