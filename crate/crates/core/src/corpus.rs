//! The built-in corpus: named fixtures plus every small shifted and
//! color-shifted complex.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::families::{color_shifted, shifted};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Shifted,
    ColorShifted,
    General,
}

impl Family {
    pub fn of(k: &SimplicialComplex) -> Family {
        if k.is_colored() {
            if color_shifted::is_color_shifted(k) {
                return Family::ColorShifted;
            }
        } else if shifted::is_shifted(k) {
            return Family::Shifted;
        }
        Family::General
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
    pub family: Family,
    /// Whether network checks apply.
    pub resistance: bool,
    /// Known torsion order of `H̃_{d-1}`.
    pub expected_torsion: Option<u64>,
    /// Generators that are not facets but satisfy the spanning condition.
    pub extra_generators: Vec<Simplex>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, complex: SimplicialComplex) -> Self {
        CorpusEntry {
            name: name.into(),
            family: Family::of(&complex),
            complex,
            resistance: true,
            expected_torsion: None,
            extra_generators: Vec::new(),
        }
    }
}

fn parse(text: &str) -> SimplicialComplex {
    SimplicialComplex::parse(text).expect("fixture parses")
}

pub fn octahedron() -> SimplicialComplex {
    color_shifted::complete(&[2, 2, 2]).expect("fixture")
}

pub fn triangle_graph() -> SimplicialComplex {
    parse("1 2\n1 3\n2 3")
}

pub fn path_graph(n: u32) -> SimplicialComplex {
    let lines: Vec<String> = (1..n).map(|v| format!("{v} {}", v + 1)).collect();
    parse(&lines.join("\n"))
}

/// The six-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    parse("1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n3 4 6\n2 4 5\n3 5 6\n2 4 6")
}

/// The projective plane plus the facet `124`, giving trees with and
/// without torsion.
pub fn projective_plane_plus() -> SimplicialComplex {
    let mut k = projective_plane()
        .facet_simplices()
        .cloned()
        .collect::<Vec<_>>();
    k.push(Simplex::plain(&[1, 2, 4]).expect("fixture"));
    SimplicialComplex::from_facets(k).expect("fixture")
}

/// The plane-partition complex `⟨(2,3,5), (3,2,4), (3,3,3)⟩`.
pub fn plane_partition() -> SimplicialComplex {
    color_shifted::generate(&[vec![2, 3, 5], vec![3, 2, 4], vec![3, 3, 3]]).expect("fixture")
}

/// Fixtures outside the generated families.
pub fn named() -> Vec<CorpusEntry> {
    let mut path3 = CorpusEntry::new("path3", path_graph(3));
    path3.extra_generators = vec![Simplex::plain(&[1, 3]).expect("fixture")];
    let mut path4 = CorpusEntry::new("path4", path_graph(4));
    path4.extra_generators = vec![
        Simplex::plain(&[1, 4]).expect("fixture"),
        Simplex::plain(&[2, 4]).expect("fixture"),
    ];
    let mut rp2 = CorpusEntry::new("rp2", projective_plane());
    rp2.resistance = false;
    rp2.expected_torsion = Some(2);
    let mut rp2_plus = CorpusEntry::new("rp2+124", projective_plane_plus());
    rp2_plus.resistance = false;
    let mut k3 = CorpusEntry::new("K3", triangle_graph());
    k3.expected_torsion = Some(1);
    let mut octa = CorpusEntry::new("octahedron", octahedron());
    octa.expected_torsion = Some(1);
    let mut sphere = CorpusEntry::new(
        "tetrahedron-boundary",
        shifted::generate(&[vec![2, 3, 4]]).expect("fixture"),
    );
    sphere.expected_torsion = Some(1);
    vec![
        path3,
        path4,
        rp2,
        rp2_plus,
        k3,
        octa,
        sphere,
        CorpusEntry::new("plane-partition", plane_partition()),
    ]
}

/// Order ideals with at most `cap` elements of the poset on `elements`
/// whose lower covers are given by `down`, in lexicographic order of their
/// sorted element lists.
fn order_ideals<T: Ord + Clone>(
    elements: &[T],
    down: impl Fn(&T) -> Vec<T>,
    cap: usize,
) -> Vec<Vec<T>> {
    let mut seen: BTreeSet<Vec<T>> = BTreeSet::new();
    let mut stack: Vec<Vec<T>> = vec![Vec::new()];
    while let Some(ideal) = stack.pop() {
        if ideal.len() >= cap {
            continue;
        }
        for e in elements {
            if ideal.binary_search(e).is_ok() {
                continue;
            }
            if down(e).iter().all(|c| ideal.binary_search(c).is_ok()) {
                let mut next = ideal.clone();
                let at = next.binary_search(e).unwrap_err();
                next.insert(at, e.clone());
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(from: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in from..=n {
            cur.push(v);
            go(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, size, &mut Vec::new(), &mut out);
    out
}

fn tuples(bound: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..size {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=bound).map(move |j| {
                    let mut t = t.clone();
                    t.push(j);
                    t
                })
            })
            .collect();
    }
    out
}

fn name_of(prefix: &str, maximal: &[Vec<usize>]) -> String {
    let parts: Vec<String> = maximal
        .iter()
        .map(|g| g.iter().map(usize::to_string).collect::<String>())
        .collect();
    format!("{prefix}:{}", parts.join("+"))
}

/// Every shifted complex of dimension 1 or 2 on at most 6 vertices with at
/// most 10 facets.
pub fn generated_shifted() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for size in [2, 3] {
        let elements = combinations(6, size);
        for ideal in order_ideals(&elements, |s| shifted::down_covers(s).into_iter().map(|c| c.face).collect(), 10) {
            if ideal.is_empty() {
                continue;
            }
            let maximal: Vec<Vec<usize>> = ideal
                .iter()
                .filter(|s| {
                    shifted::up_covers(s, 7)
                        .iter()
                        .all(|c| ideal.binary_search(&c.face).is_err())
                })
                .cloned()
                .collect();
            let k = shifted::generate(&maximal).expect("generated ideal");
            out.push(CorpusEntry::new(name_of("sh", &maximal), k));
        }
    }
    out
}

/// Every color-shifted complex of dimension 1 or 2 with `n_q <= 3` and at
/// most 12 facets.
pub fn generated_color_shifted() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for size in [2, 3] {
        let elements = tuples(3, size);
        let down = |t: &Vec<usize>| -> Vec<Vec<usize>> {
            (0..t.len())
                .filter(|&q| t[q] > 1)
                .map(|q| {
                    let mut s = t.clone();
                    s[q] -= 1;
                    s
                })
                .collect()
        };
        for ideal in order_ideals(&elements, down, 12) {
            if ideal.is_empty() {
                continue;
            }
            let maximal: Vec<Vec<usize>> = ideal
                .iter()
                .filter(|t| {
                    (0..t.len()).all(|q| {
                        let mut s = (*t).clone();
                        s[q] += 1;
                        ideal.binary_search(&s).is_err()
                    })
                })
                .cloned()
                .collect();
            let k = color_shifted::generate(&maximal).expect("generated ideal");
            out.push(CorpusEntry::new(name_of("cs", &maximal), k));
        }
    }
    out
}

/// Named fixtures followed by the generated families, sorted by name.
pub fn builtin() -> Vec<CorpusEntry> {
    let mut all = named();
    all.extend(generated_shifted());
    all.extend(generated_color_shifted());
    all.sort_by(|a, b| a.name.cmp(&b.name));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn generated_counts() {
        assert_eq!(generated_shifted().len(), 59);
        assert_eq!(generated_color_shifted().len(), 425);
        let all = builtin();
        let names: BTreeSet<&str> = all.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names.len(), all.len());
        assert!(names.contains("sh:245") && names.contains("cs:222") && names.contains("sh:23"));
    }

    #[test]
    fn families_are_detected() {
        for e in generated_shifted() {
            assert_eq!(e.family, Family::Shifted, "{}", e.name);
        }
        for e in generated_color_shifted() {
            assert_eq!(e.family, Family::ColorShifted, "{}", e.name);
        }
        assert_eq!(Family::of(&path_graph(3)), Family::General);
        assert_eq!(Family::of(&triangle_graph()), Family::Shifted);
    }

    #[test]
    fn projective_plane_homology() {
        let k = projective_plane();
        assert_eq!(k.face_count(1), 15);
        assert_eq!(k.betti(2).unwrap(), 0);
        assert_eq!(k.betti(1).unwrap(), 0);
        assert_eq!(k.torsion_order(1).unwrap(), BigInt::from(2));
        let plus = projective_plane_plus();
        assert_eq!(plus.betti(2).unwrap(), 1);
    }
}
