//! Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero if
//! any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use simplicial_resistance::corpus::{self, CorpusEntry, Family};
use simplicial_resistance::families::{color_shifted, shifted};
use simplicial_resistance::linalg::{frac, rat, Rational};
use simplicial_resistance::network::effective_resistance;
use simplicial_resistance::trees::{enumerate_trees, WeightAssignment};
use simplicial_resistance::verify::{self, Record, VerifyConfig};
use simplicial_resistance::{Simplex, SimplicialComplex, Vertex};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn x(w: &WeightAssignment, q: u32, j: u32) -> Rational {
    w.get(&Vertex::colored(q, j)).unwrap().clone()
}

/// The prime point and four seeded random points.
fn octahedron_points() -> Vec<(String, WeightAssignment)> {
    verify::weight_points(&corpus::octahedron().vertices(), 0, 4)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let k = corpus::octahedron();
    let trees = enumerate_trees(&k, 24).unwrap();
    let points = octahedron_points();
    let mut bad = Vec::new();
    for (label, w) in &points {
        let all: Rational = (1..=3).flat_map(|q| [x(w, q, 1), x(w, q, 2)]).product();
        let sums: Rational = (1..=3).map(|q| x(w, q, 1) + x(w, q, 2)).product();
        let closed = num_traits::pow(all, 3) * sums;
        if trees.weighted_sum(&w.facet_weights(&k).unwrap()).value != closed {
            bad.push(label.clone());
        }
    }
    let unit = trees.weighted_sum(&vec![Rational::one(); 8]).value;
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && unit == rat(8) && elapsed < Duration::from_secs(1),
        format!("{} points, differing {bad:?}, unit {unit}, {elapsed:.2?}", points.len()),
    )
}

fn criterion_2() -> Outcome {
    let k = corpus::octahedron();
    let sigma = Simplex::from_color_tuple(&[2, 2, 2]);
    let mut bad = Vec::new();
    for (label, w) in octahedron_points() {
        let x111 = x(&w, 1, 1) * x(&w, 2, 1) * x(&w, 3, 1);
        let x222 = x(&w, 1, 2) * x(&w, 2, 2) * x(&w, 3, 2);
        let star: Rational = (1..=3).map(|q| x(&w, q, 1) + x(&w, q, 2)).product();
        if effective_resistance(&k, &w, &sigma).unwrap() != (&star - x111) / (x222 * &star) {
            bad.push(label);
        }
    }
    let unit = effective_resistance(&k, &WeightAssignment::unit(&k.vertices()), &sigma).unwrap();
    outcome(bad.is_empty() && unit == frac(7, 8), format!("differing {bad:?}, unit {unit}"))
}

fn failures<'a>(records: &'a [Record], prefix: &str) -> (usize, Vec<&'a Record>) {
    let selected: Vec<&Record> = records.iter().filter(|r| r.check.starts_with(prefix)).collect();
    let bad = selected.iter().copied().filter(|r| !r.verdict.ok()).collect();
    (selected.len(), bad)
}

fn summary(count: usize, bad: &[&Record]) -> String {
    match bad.first() {
        None => format!("{count} records"),
        Some(r) => format!("{count} records, {} bad, first {} {} {} {}", bad.len(), r.check, r.complex, r.point, r.detail),
    }
}

fn criterion_3(corpus: &[CorpusEntry], records: &[Record], elapsed: Duration) -> Outcome {
    let (count, bad) = failures(records, "thm4.2");
    let complexes: BTreeSet<&str> = records
        .iter()
        .filter(|r| r.check == "thm4.2")
        .map(|r| r.complex.as_str())
        .collect();
    let required = ["K3", "path3", "path4"].iter().all(|n| complexes.contains(n));
    let rp2_excluded = !complexes.contains("rp2");
    let expected_entries = corpus.iter().filter(|e| e.resistance && e.complex.num_facets() <= 24).count();
    outcome(
        bad.is_empty()
            && complexes.len() >= 30
            && complexes.len() == expected_entries
            && required
            && rp2_excluded
            && elapsed < Duration::from_secs(300),
        format!("{} complexes, {}, full suite {elapsed:.2?}", complexes.len(), summary(count, &bad)),
    )
}

fn criterion_4(records: &[Record]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for prefix in ["thm5.2", "thm6.3"] {
        for part in ["kcl", "kvl", "ratio"] {
            let (count, bad) = failures(records, &format!("{prefix}.{part}"));
            ok &= count > 0 && bad.is_empty();
            parts.push(format!("{prefix}.{part}: {}", summary(count, &bad)));
        }
        // each (complex, facet) pair is checked at three or more points
        let mut points: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
        for r in records.iter().filter(|r| r.check == format!("{prefix}.kcl")) {
            let (point, facet) = r.point.split_once(':').unwrap();
            points.entry((r.complex.clone(), facet.to_string())).or_default().insert(point.to_string());
        }
        ok &= points.values().all(|p| p.len() >= 3);
    }
    outcome(ok, parts.join("; "))
}

fn adin(n: &[usize]) -> (Rational, Rational, Rational) {
    let expected: BigInt = (0..n.len())
        .map(|q| {
            let e: usize = (0..n.len()).filter(|&r| r != q).map(|r| n[r] - 1).product();
            num_traits::pow(BigInt::from(n[q]), e)
        })
        .product();
    let k = color_shifted::complete(n).unwrap();
    let closed = color_shifted::tree_number(&k, &color_shifted::ColorScheme::unit(n)).unwrap().value;
    let brute = enumerate_trees(&k, 24).unwrap().weighted_sum(&vec![Rational::one(); k.num_facets()]).value;
    (Rational::from_integer(expected), closed, brute)
}

fn criterion_5(corpus: &[CorpusEntry], records: &[Record]) -> Outcome {
    let (count, bad) = failures(records, "thm5.4");
    let covered: BTreeSet<&str> = records.iter().filter(|r| r.check == "thm5.4").map(|r| r.complex.as_str()).collect();
    let family = corpus.iter().filter(|e| e.family == Family::ColorShifted).count();
    let mut ok = bad.is_empty() && covered.len() == family;
    let mut values = Vec::new();
    for (n, listed) in [(vec![2, 2], 4), (vec![2, 3], 12), (vec![3, 3], 81), (vec![2, 2, 2], 8)] {
        let (expected, closed, brute) = adin(&n);
        ok &= expected == rat(listed) && closed == expected && brute == expected;
        values.push(format!("{n:?}={closed}"));
    }
    outcome(ok, format!("{} complexes, {}, adin {}", covered.len(), summary(count, &bad), values.join(" ")))
}

fn criterion_6(corpus: &[CorpusEntry], records: &[Record]) -> Outcome {
    let (count, bad) = failures(records, "thm6.9");
    let covered: BTreeSet<&str> = records.iter().filter(|r| r.check == "thm6.9").map(|r| r.complex.as_str()).collect();
    let family = corpus.iter().filter(|e| e.family == Family::Shifted).count();
    let k = shifted::generate(&[vec![2, 4, 5]]).unwrap();
    let form = shifted::tree_number(&k, &shifted::GaleWeights::unit(5)).unwrap();
    let mut labels: Vec<usize> = shifted::signatures(&k).unwrap().iter().map(|s| s.label).collect();
    labels.sort_unstable();
    let ok = bad.is_empty()
        && covered.len() == family
        && form.value == rat(50)
        && labels == [2, 5, 5]
        && form.formula.ends_with("/ D(1)^3");
    outcome(
        ok,
        format!("{} complexes, {}, 245 unit {} labels {labels:?} formula {}", covered.len(), summary(count, &bad), form.value, form.formula),
    )
}

/// Closed surfaces with Euler characteristic 2 and a connected edge graph.
fn is_two_sphere(k: &SimplicialComplex) -> bool {
    if k.dim() != 2 {
        return false;
    }
    let mut edges: BTreeMap<Simplex, usize> = BTreeMap::new();
    for s in k.facet_simplices() {
        for i in 0..3 {
            *edges.entry(s.without(i)).or_default() += 1;
        }
    }
    let chi = k.face_count(0) as i64 - k.face_count(1) as i64 + k.face_count(2) as i64;
    edges.values().all(|&c| c == 2) && chi == 2 && k.betti(0).unwrap() == 0
}

fn criterion_7(corpus: &[CorpusEntry], records: &[Record]) -> Outcome {
    let rp2 = corpus::projective_plane().torsion_order(1).unwrap();
    let spheres: Vec<&CorpusEntry> = corpus.iter().filter(|e| is_two_sphere(&e.complex)).collect();
    let sphere_torsion_ok = spheres.iter().all(|e| e.complex.torsion_order(1).unwrap().is_one());
    let (tc, tbad) = failures(records, "torsion");
    let tree = records.iter().find(|r| r.check == "torsion.trees");
    let ok = rp2 == BigInt::from(2)
        && !spheres.is_empty()
        && sphere_torsion_ok
        && tbad.is_empty()
        && tree.is_some_and(|r| r.verdict.ok());
    outcome(
        ok,
        format!(
            "rp2 {rp2}, {} spheres, {}, {}",
            spheres.len(),
            summary(tc, &tbad),
            tree.map_or("no torsion-tree record".to_string(), |r| r.detail.clone())
        ),
    )
}

fn criterion_8(corpus: &[CorpusEntry], records: &[Record], points: usize) -> Outcome {
    let (_, bad) = failures(records, "deletion-contraction");
    let count = records.iter().filter(|r| r.check == "deletion-contraction").count();
    let expected: usize = corpus
        .iter()
        .filter(|e| e.complex.num_facets() <= 24)
        .map(|e| e.complex.num_facets() * points)
        .sum();
    let skipped: Vec<&str> = corpus
        .iter()
        .filter(|e| e.complex.num_facets() > 24)
        .map(|e| e.name.as_str())
        .collect();
    outcome(
        bad.is_empty() && count == expected,
        format!("{count} of {expected} facet-point pairs, above the brute-force bound {skipped:?}"),
    )
}

fn criterion_9() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_simres"))
            .args(["verify", "--seed", "0"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    outcome(
        a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty(),
        format!("{} bytes, statuses {} {}", a.stdout.len(), a.status, b.status),
    )
}

fn main() {
    let mut all_ok = true;
    let mut report = |name: &str, o: Outcome| {
        all_ok &= o.ok;
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    };
    report("1 octahedron tree number", criterion_1());
    report("2 octahedron resistance", criterion_2());

    let corpus = corpus::builtin();
    let config = VerifyConfig::default();
    let start = Instant::now();
    let records = verify::run(&corpus, &config);
    let elapsed = start.elapsed();
    let points = 1 + config.random_points;

    report("3 resistance as a tree ratio", criterion_3(&corpus, &records, elapsed));
    report("4 explicit currents", criterion_4(&records));
    report("5 color-shifted enumerator", criterion_5(&corpus, &records));
    report("6 shifted enumerator", criterion_6(&corpus, &records));
    report("7 torsion", criterion_7(&corpus, &records));
    report("8 deletion and contraction", criterion_8(&corpus, &records, points));
    report("9 determinism", criterion_9());
    if !all_ok {
        std::process::exit(1);
    }
}
