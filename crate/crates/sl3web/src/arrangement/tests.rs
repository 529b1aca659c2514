use super::*;
use crate::mdiagram::{build_mdiagram, MTriple};
use crate::sampler::{enumerate_paths, sample_path, Tableau3xN};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn triples(list: &[(u32, u32, u32)]) -> MDiagram {
    MDiagram::from_triples(list.iter().map(|&(start, middle, end)| MTriple { start, middle, end }).collect()).unwrap()
}

fn two_crossings() -> MDiagram {
    let t = Tableau3xN::new([vec![1, 2, 3], vec![4, 5, 7], vec![6, 8, 9]]).unwrap();
    build_mdiagram(&t.to_path())
}

fn nested_quad() -> MDiagram {
    triples(&[(3, 4, 9), (2, 5, 8), (1, 6, 7)])
}

fn long_type() -> MDiagram {
    triples(&[(1, 2, 5), (3, 13, 14), (4, 6, 9), (7, 12, 15), (8, 10, 11)])
}

fn staircase(n: usize) -> MDiagram {
    let steps = [vec![crate::Step::S1; n], vec![crate::Step::S2; n], vec![crate::Step::S3; n]].concat();
    MDiagram::from_steps(&steps).unwrap()
}

fn brute_pairs(d: &MDiagram) -> Vec<(u32, u32)> {
    let arcs = d.arcs();
    let mut out = Vec::new();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if arcs[i].crosses(&arcs[j]) {
                out.push((i as u32, j as u32));
            }
        }
    }
    out
}

fn normalized(mut v: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    for p in v.iter_mut() {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    v.sort();
    v
}

/// Every structural relation between the arrangement, its face records and
/// the independently traversed web.
fn check_all(d: &MDiagram) {
    let a = Arrangement::new(d);
    assert_eq!(a.euler_characteristic(), 2);
    assert_eq!(a.face_count(), 2 * d.n() + a.crossing_count() + 2);
    assert_eq!(normalized(crossing_pairs(d)), brute_pairs(d));

    let records = a.classify_faces();
    let mut seen = BTreeMap::new();
    for r in &records {
        assert_eq!(r.web_size, r.mdiagram_segments + 2, "{r:?}");
        assert!(r.web_size >= 6, "{r:?}");
        let p = r.lower_points;
        assert_eq!(r.web_size, if p % 2 == 0 { p + 4 } else { p + 5 }, "{r:?}");
        assert!(r.upper_segments == 1 || r.upper_segments == 2, "{r:?}");
        assert!(r.depth >= 1 && r.depth != u32::MAX);
        assert_eq!(r.face_type.tau.len() as u32, p);
        *seen.entry((r.face_type.clone(), r.first_step)).or_insert(0) += 1;
    }
    // Only the faces after the last two crossings of one arc can agree.
    assert!(seen.values().all(|&c| c <= 2), "{:?}", d.triples());

    let web = Web::from_arrangement(&a);
    assert_eq!(web.check_invariants(), vec![]);
    assert_eq!(web.y_count(), d.n());
    assert_eq!(web.crossing_edge_count(), a.crossing_count());
    let mut from_web: Vec<(u32, u32)> = web.interior_faces().iter().map(|f| (f.size, f.depth)).collect();
    let mut from_arr: Vec<(u32, u32)> = records.iter().map(|r| (r.web_size, r.depth)).collect();
    from_web.sort();
    from_arr.sort();
    assert_eq!(from_web, from_arr);
}

#[test]
fn two_crossings_web() {
    let d = two_crossings();
    let a = Arrangement::new(&d);
    let arcs = d.arcs();
    let mut pairs: Vec<_> = a
        .crossings()
        .iter()
        .map(|c| ((arcs[c.red_arc].start, arcs[c.red_arc].end), (arcs[c.blue_arc].start, arcs[c.blue_arc].end)))
        .collect();
    pairs.sort();
    assert_eq!(pairs, vec![((1, 7), (4, 9)), ((2, 5), (4, 9))]);
    let web = to_web(&d);
    assert_eq!(web.y_count(), 3);
    assert_eq!(web.crossing_edge_count(), 2);
    check_all(&d);
}

#[test]
fn single_m() {
    let d = build_mdiagram(&sample_path(1, 0));
    let a = Arrangement::new(&d);
    assert_eq!(a.crossing_count(), 0);
    assert_eq!(a.interior_faces().count(), 0);
    assert!(a.classify_faces().is_empty());
    let web = to_web(&d);
    assert_eq!(web.y_count(), 1);
    assert!(web.interior_faces().is_empty());
    assert_eq!(web.check_invariants(), vec![]);
}

#[test]
fn nested_quad_face() {
    let d = nested_quad();
    let a = Arrangement::new(&d);
    let records = a.classify_faces();
    let quads: Vec<_> = records.iter().filter(|r| r.mdiagram_segments == 4).collect();
    assert_eq!(quads.len(), 1);
    assert_eq!(records.len(), 1);
    let r = quads[0];
    assert_eq!(r.web_size, 6);
    assert_eq!(r.lower_points, 1);
    assert_eq!(r.upper_segments, 2);
    assert_eq!(r.depth, 1);
    check_all(&d);
}

#[test]
fn long_type_face() {
    let d = long_type();
    assert!(crate::mdiagram::validate(&d).is_empty());
    let a = Arrangement::new(&d);
    let records = a.classify_faces();
    let want = FaceType { tau: vec![1, 1, 2, 1], color: Color::Blue };
    let r = records.iter().find(|r| r.face_type == want).expect("face of type (1,1,2,1),B");
    assert_eq!(r.web_size, 8);
    assert_eq!(r.upper_segments, 1);
    assert_eq!(r.first_step, 2);
    check_all(&d);
}

#[test]
fn first_step_is_not_unique_per_type() {
    // Red (2,7) is crossed by blue (5,12) and blue (6,11); the faces right of
    // both crossings have type (1),R and start on the same arc.
    let a = Arrangement::new(&staircase(4));
    let want = FaceType { tau: vec![1], color: Color::Red };
    let hits: Vec<_> = a.classify_faces().into_iter().filter(|r| r.face_type == want && r.first_step == 2).collect();
    assert_eq!(hits.len(), 2);
}

#[test]
fn face_type_text() {
    let t: FaceType = "(1,1,2,1),B".parse().unwrap();
    assert_eq!(t, FaceType { tau: vec![1, 1, 2, 1], color: Color::Blue });
    assert_eq!(t.to_string(), "(1,1,2,1),B");
    assert_eq!("2 R".parse::<FaceType>().unwrap(), FaceType { tau: vec![2], color: Color::Red });
    assert_eq!("(3),R".parse::<FaceType>().unwrap(), FaceType { tau: vec![3], color: Color::Red });
    assert!("(0),R".parse::<FaceType>().is_err());
    assert!("(1),G".parse::<FaceType>().is_err());
}

#[test]
fn exhaustive_small() {
    for n in 1..=4 {
        for p in enumerate_paths(n) {
            check_all(&build_mdiagram(&p));
        }
    }
}

#[test]
fn staircase_is_a_honeycomb() {
    for n in 2..=12 {
        let d = staircase(n);
        check_all(&d);
        let records = Arrangement::new(&d).classify_faces();
        assert!(records.iter().all(|r| r.web_size == 6));
        let max = records.iter().map(|r| r.depth).max().unwrap_or(0);
        for k in 1..=max {
            assert!(records.iter().any(|r| r.depth == k), "depth {k} missing at n = {n}");
        }
        if n >= 8 {
            assert!(max >= 2);
        }
    }
}

fn summary(a: &Arrangement) -> Vec<(FaceType, u32, u32, u32)> {
    let mut v: Vec<_> = a.classify_faces().into_iter().map(|r| (r.face_type, r.first_step, r.depth, r.web_size)).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_structure(n in 1usize..120, seed: u64) {
        check_all(&build_mdiagram(&sample_path(n, seed)));
    }

    #[test]
    fn spacing_does_not_matter(n in 1usize..80, seed: u64, gaps in proptest::collection::vec(1i64..9, 240)) {
        let d = build_mdiagram(&sample_path(n, seed));
        let mut pos = vec![0i64; 3 * n + 1];
        for t in 1..=3 * n {
            pos[t] = pos[t - 1] + gaps[t - 1];
        }
        let a = Arrangement::new(&d);
        let b = Arrangement::with_positions(&d, pos);
        prop_assert_eq!(b.euler_characteristic(), 2);
        prop_assert_eq!(summary(&a), summary(&b));
    }
}
