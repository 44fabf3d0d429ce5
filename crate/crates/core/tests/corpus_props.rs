mod common;

use coauthnet::corpus::{derive_edges, Corpus, Publication, PublicationSet, Warning, YearRange};
use proptest::prelude::*;

use common::fixture;

fn publication_set() -> impl Strategy<Value = PublicationSet> {
    let paper = (2010i32..=2014, prop::collection::btree_set(0u8..8, 1..5));
    prop::collection::vec(paper, 0..25).prop_map(|rows| PublicationSet {
        publications: rows
            .into_iter()
            .enumerate()
            .map(|(i, (year, authors))| Publication {
                paper_id: format!("p{i:03}"),
                year,
                title: format!("T{i}"),
                author_ids: authors.into_iter().map(|a| format!("m{a}")).collect(),
            })
            .collect(),
        warnings: Vec::new(),
    })
}

fn range() -> impl Strategy<Value = YearRange> {
    (2010i32..=2014, 0i32..=4).prop_map(|(from, len)| YearRange { from, to: from + len })
}

proptest! {
    #[test]
    fn total_weight_counts_author_pairs(pubs in publication_set(), r in range()) {
        let edges = derive_edges(&pubs, r);
        let total: u64 = edges.iter().map(|e| u64::from(e.weight)).sum();
        let expected: u64 = pubs
            .publications
            .iter()
            .filter(|p| r.contains(p.year))
            .map(|p| {
                let k = p.author_ids.len() as u64;
                k * k.saturating_sub(1) / 2
            })
            .sum();
        prop_assert_eq!(total, expected);
        for e in &edges {
            prop_assert!(e.a < e.b);
            prop_assert_eq!(e.weight as usize, e.paper_ids.len());
        }
        prop_assert!(edges.windows(2).all(|w| (&w[0].a, &w[0].b) < (&w[1].a, &w[1].b)));
    }

    #[test]
    fn widening_the_range_never_loses_weight(pubs in publication_set(), from in 2010i32..=2014, a in 0i32..3, b in 0i32..3) {
        let narrow = derive_edges(&pubs, YearRange { from, to: from + a });
        let wide = derive_edges(&pubs, YearRange { from, to: from + a + b });
        for e in &narrow {
            let w = wide.iter().find(|x| x.a == e.a && x.b == e.b);
            prop_assert!(w.is_some_and(|w| w.weight >= e.weight));
        }
    }

    #[test]
    fn row_order_does_not_matter(pubs in publication_set(), r in range(), seed in any::<u64>()) {
        let mut shuffled = pubs.clone();
        let n = shuffled.publications.len();
        if n > 1 {
            let k = (seed as usize) % n;
            shuffled.publications.rotate_left(k);
            shuffled.publications.reverse();
        }
        prop_assert_eq!(derive_edges(&pubs, r), derive_edges(&shuffled, r));
    }
}

#[test]
fn fixture_corpus_loads() {
    let c = Corpus::load(&fixture("members.csv"), &fixture("papers.csv")).unwrap();
    assert_eq!(c.members.len(), 7);
    assert_eq!(c.publications.len(), 6);
    assert_eq!(c.publications.year_span(), Some((2011, 2013)));
    assert_eq!(
        c.publications.get("p1").unwrap().title,
        "Higgs bundles, spectral curves and surfaces"
    );
    assert!(c
        .publications
        .warnings
        .iter()
        .any(|w| matches!(w, Warning::DuplicateAuthor { author_id, .. } if author_id == "m5")));
    assert!(c
        .publications
        .warnings
        .iter()
        .any(|w| matches!(w, Warning::NoEdges { paper_id, .. } if paper_id == "p4")));

    let edges = c.edges(YearRange::new(2011, 2012).unwrap());
    let m1m2 = edges.iter().find(|e| e.a == "m1" && e.b == "m2").unwrap();
    assert_eq!(m1m2.paper_ids, ["p1", "p3"]);
}

#[test]
fn missing_file_is_reported() {
    let err = Corpus::load(&fixture("nope.csv"), &fixture("papers.csv")).unwrap_err();
    assert!(err.to_string().contains("file not found"), "{err}");
}
