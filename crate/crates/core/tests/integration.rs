use std::collections::BTreeSet;

use num_bigint::BigUint;
use qmarkoff::cyclotomic::{cone_of, recover_counts};
use qmarkoff::search::{PairClass, DEFAULT_SAFETY_BOUND};
use qmarkoff::{
    christoffel_injectivity, christoffel_words, classify_pair, collide, markoff_numbers, markoff_numbers_up_to, mu_q,
    stern_brocot_fraction, verify_identity2_mu, CollisionReport, MapKind, Order, Word,
};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn christoffel_values_at_one_are_markoff_numbers() {
    let values: Vec<(Word, BigUint)> = christoffel_words(12)
        .into_iter()
        .map(|word| {
            let v = mu_q(&word).unwrap().m12.eval_at_one().to_biguint().unwrap();
            (word, v)
        })
        .collect();
    let largest = values.iter().map(|(_, v)| v).max().unwrap();
    let tree = markoff_numbers_up_to(largest);
    for (word, v) in &values {
        assert!(tree.contains(v), "{word} -> {v}");
    }
    assert!(markoff_numbers(4).contains(&BigUint::from(194u32)));
}

#[test]
fn christoffel_counts_recovered_at_zeta6() {
    let six = Order::new(6).unwrap();
    for word in christoffel_words(24) {
        let z = mu_q(&word).unwrap().m12.eval_cyclotomic(six);
        assert_eq!(
            recover_counts(&z).unwrap(),
            Some((word.count_a() as u64, word.count_b() as u64))
        );
        let residue = cone_of(&z).unwrap().unwrap().residue as usize;
        assert_eq!(residue, (word.len() + word.count_b()) % 6);
        let f = stern_brocot_fraction(&word).unwrap();
        assert_eq!(
            f.denominator as usize * word.count_b(),
            f.numerator as usize * word.count_a()
        );
    }
    let v = christoffel_injectivity(20);
    assert!(v.holds());
}

#[test]
fn census_agrees_with_pairwise_classification() {
    let report = collide(MapKind::Mu, 10, DEFAULT_SAFETY_BOUND, None).unwrap();
    for p in &report.pairs {
        let direct = classify_pair(MapKind::Mu, &p.x, &p.y).unwrap();
        match p.class {
            PairClass::Transitive => assert_eq!(direct.class, PairClass::Unexplained),
            class => assert_eq!(direct.class, class),
        }
    }
}

#[test]
fn census_at_twelve() {
    let report = collide(MapKind::Mu, 12, DEFAULT_SAFETY_BOUND, None).unwrap();
    let s = &report.summary;
    assert_eq!(
        (
            s.groups,
            s.largest_group,
            s.identity1,
            s.identity2,
            s.both,
            s.transitive,
            s.unexplained
        ),
        (960, 4, 950, 2, 11, 2, 0)
    );
    let group: BTreeSet<&Word> = report
        .group_containing(&w("aababbaababb"))
        .unwrap()
        .words
        .iter()
        .collect();
    let expected = ["aababbaababb", "aabbababaabb", "abaabababbab", "ababaabbabab"].map(w);
    assert_eq!(group, expected.iter().collect());
    for (x, y) in [("aababbaababb", "aabbababaabb"), ("abaabababbab", "ababaabbabab")] {
        let p = report.pair(&w(x), &w(y)).unwrap();
        assert_eq!(p.class, PairClass::Identity2);
        let two = p.identity2.as_ref().unwrap();
        let check = verify_identity2_mu(&two.w, &two.v).unwrap();
        assert!(check.equal);
        assert_eq!(
            BTreeSet::from([check.lhs_word, check.rhs_word]),
            BTreeSet::from([w(x), w(y)])
        );
    }
    let chain = report
        .pair(&w("aababbaababb"), &w("abaabababbab"))
        .unwrap()
        .chain
        .clone()
        .unwrap();
    assert_eq!(chain.first(), Some(&w("aababbaababb")));
    assert_eq!(chain.last(), Some(&w("abaabababbab")));
}

#[test]
fn m_census_reports_collisions_outside_the_families() {
    let report = collide(MapKind::M, 9, DEFAULT_SAFETY_BOUND, None).unwrap();
    assert!(report.has_unexplained());
    let g = report.group_containing(&w("bbaaaaabb")).unwrap();
    for x in ["baaabaaab", "babbbbbab", "bbbbabbbb"] {
        assert!(g.words.contains(&w(x)));
    }
    let text = serde_json::to_string(&report).unwrap();
    let back: CollisionReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}
