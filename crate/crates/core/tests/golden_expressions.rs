//! The expression corpus: every line parses, round-trips through the
//! canonical formatter, and evaluates cleanly.

use photonbox::algebra::ordering::vev;
use photonbox::expr;
use photonbox::CommutatorScheme;

fn corpus() -> Vec<String> {
    let text = include_str!("data/expressions.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

#[test]
fn corpus_round_trips() {
    let lines = corpus();
    assert!(lines.len() >= 15, "corpus unexpectedly small");
    for line in &lines {
        let p = expr::parse(line).unwrap_or_else(|e| panic!("{line:?}: {e}"));
        let text = expr::format(&p);
        let q = expr::parse(&text).unwrap_or_else(|e| panic!("canonical {text:?}: {e}"));
        assert_eq!(p, q, "round trip failed for {line:?} via {text:?}");
        // canonical text is a fixed point of the formatter
        assert_eq!(expr::format(&q), text);
    }
}

#[test]
fn corpus_evaluates_under_both_schemes() {
    for line in corpus() {
        let p = expr::parse(&line).unwrap();
        for scheme in [
            CommutatorScheme::standard(),
            CommutatorScheme::modified_isotropic(),
        ] {
            let _ = vev(&p, &scheme);
        }
    }
}

#[test]
fn known_corpus_values() {
    let modified = CommutatorScheme::modified_isotropic();
    // the role-swapped normal form line has exact zero vacuum expectation
    let h =
        expr::parse("ad[1,0]*a[1,0] + ad[2,0]*a[2,0] + ad[3,0]*a[3,0] - a[0,0]*ad[0,0]").unwrap();
    assert!(vev(&h, &modified).is_zero());
    // and the unordered symmetrized form agrees
    let sym = expr::parse(
        "1/2*ad[1,0]*a[1,0] + 1/2*a[1,0]*ad[1,0] + 1/2*ad[2,0]*a[2,0] + 1/2*a[2,0]*ad[2,0] \
         + 1/2*ad[3,0]*a[3,0] + 1/2*a[3,0]*ad[3,0] - 1/2*ad[0,0]*a[0,0] - 1/2*a[0,0]*ad[0,0]",
    )
    .unwrap();
    assert!(vev(&sym, &modified).is_zero());
}
