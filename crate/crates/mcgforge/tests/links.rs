use mcgforge::links::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::burau_alexander;

fn seifert_alexander(b: &BraidWord) -> Alexander {
    alexander_polynomial(&seifert_matrix(b).unwrap()).unwrap()
}

fn random_homogeneous(rng: &mut ChaCha8Rng, n: usize, len: usize) -> BraidWord {
    let signs: Vec<i32> = (1..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    loop {
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n);
                signs[i - 1] * i as i32
            })
            .collect();
        let b = BraidWord::new(n, letters).unwrap();
        if b.uses_all_generators() {
            return b;
        }
    }
}

// ---------- oracle examples ----------

#[test]
fn burau_oracle_basics() {
    let tref: BraidWord = "B2: s1 s1 s1".parse().unwrap();
    let fig8: BraidWord = "B3: s1 -s2 s1 -s2".parse().unwrap();
    assert_eq!(burau_alexander(&tref), vec![1, -1, 1]);
    assert_eq!(burau_alexander(&fig8), vec![1, -3, 1]);
}

#[test]
fn seifert_examples_match_oracle() {
    let tref: BraidWord = "B2: s1 s1 s1".parse().unwrap();
    let a = seifert_alexander(&tref);
    assert_eq!(a.coeffs, vec![1, -1, 1]);
    assert!(a.monic);
    assert_eq!(a.to_string(), "t^2 - t + 1");
    let fig8: BraidWord = "B3: s1 -s2 s1 -s2".parse().unwrap();
    let a = seifert_alexander(&fig8);
    assert_eq!(a.coeffs, vec![1, -3, 1]);
    assert!(a.monic);
    let unknot: BraidWord = "B2: s1".parse().unwrap();
    let s = seifert_matrix(&unknot).unwrap();
    assert_eq!(s.size(), 0);
    assert_eq!(alexander_polynomial(&s).unwrap().coeffs, vec![1]);
    let mixed: BraidWord = "B3: s1 -s1 s2".parse().unwrap();
    assert!(seifert_matrix(&mixed).is_err());
}

#[test]
fn random_homogeneous_braids_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..150 {
        let n = 2 + case % 4;
        let len = rng.gen_range(n..n + 9);
        let b = random_homogeneous(&mut rng, n, len);
        let a = seifert_alexander(&b);
        assert_eq!(a.coeffs, burau_alexander(&b), "{b}");
        assert!(a.monic, "{b}");
        let s = seifert_matrix(&b).unwrap();
        assert_eq!(s.size(), b.len() + 1 - n);
        let d = ClosureDiagram::new(b.clone());
        for c in 0..d.num_components {
            let f = boundary_framing(&d, c).unwrap();
            let lk: i64 = (0..d.num_components).filter(|&o| o != c).map(|o| linking_number(&d, c, o).unwrap()).sum();
            assert_eq!(f, -lk, "{b} component {c}");
        }
    }
}

#[test]
fn parse_and_display() {
    let b: BraidWord = "B4: s1 -s2 s3".parse().unwrap();
    assert_eq!(b.letters(), &[1, -2, 3]);
    assert_eq!(b.to_string(), "B4: s1 -s2 s3");
    assert_eq!(b.to_string().parse::<BraidWord>().unwrap(), b);
    for bad in ["B1: ", "B3 s1", "B3: s3", "B3: x1", "B3: s0", "Bx: s1"] {
        assert!(bad.parse::<BraidWord>().is_err(), "{bad}");
    }
}

#[test]
fn euler_genus_examples() {
    let d = build_llmk(1, 1, 1).unwrap();
    assert_eq!(euler_and_genus(&d).unwrap(), (-12, 6));
    // 2 + m + l + 2k = 2 + 4 + 1 + 2
    let d = build_llmk(1, 4, 1).unwrap();
    assert_eq!(euler_and_genus(&d).unwrap().1, 9);
    let hopf = ClosureDiagram::new("B2: s1 s1".parse().unwrap());
    assert_eq!(hopf.num_components, 2);
    assert_eq!(euler_and_genus(&hopf).unwrap(), (0, 0));
    assert!(build_llmk(0, 1, 1).is_err());
    assert!(build_llmk(1, 1, 0).is_err());
}

#[test]
fn family_grid() {
    for l in 1..=4 {
        for m in 1..=4 {
            for k in 1..=4 {
                let d = build_llmk(l, m, k).unwrap();
                assert_eq!(d.num_components, 2);
                assert_eq!(d.crossings.len() as i64, 10 + 2 * m + 2 * l + 4 * k);
                assert!(d.braid.is_alternating());
                let (chi, g) = euler_and_genus(&d).unwrap();
                assert_eq!(chi, -4 - 2 * m - 2 * l - 4 * k);
                assert_eq!(g, 2 + m + l + 2 * k);
                let tw = twist_regions(&d);
                assert_eq!(tw.count as i64, 10 + 2 * k);
                assert!(tw.visits[BLUE] >= 7);
                assert_eq!(boundary_framing(&d, BLUE).unwrap(), -m - l);
                assert_eq!(linking_number(&d, BLUE, BLACK).unwrap(), m + l);
                let blocks = stallings_block_framings(&d).unwrap();
                assert_eq!(blocks.len() as i64, k);
                assert!(blocks.iter().all(|b| b.triple() == (-1, 1, 0)));
            }
        }
    }
}

#[test]
fn family_alexander_and_sublink() {
    for (l, m, k) in [(1, 1, 1), (1, 4, 1), (2, 3, 2), (4, 4, 4)] {
        let d = build_llmk(l, m, k).unwrap();
        let a = seifert_alexander(&d.braid);
        assert!(a.monic);
        assert_eq!(a.degree().unwrap() as i64, 2 * (2 + m + l + 2 * k) + 1);
        if k <= 2 {
            assert_eq!(a.coeffs, burau_alexander(&d.braid));
        }
        let blue = d.sublink(&[BLUE]).unwrap();
        assert_eq!(blue.strands(), 3);
        assert_eq!(seifert_alexander(&blue).coeffs, vec![1, -3, 1]);
        assert_eq!(burau_alexander(&blue), vec![1, -3, 1]);
    }
}

#[test]
fn framing_examples() {
    assert_eq!(boundary_framing(&build_llmk(1, 4, 2).unwrap(), BLUE).unwrap(), -5);
    // trefoil on two strands plus a split unknot
    let d = ClosureDiagram::new("B3: s1 s1 s1".parse().unwrap());
    assert_eq!(d.num_components, 2);
    assert_eq!(boundary_framing(&d, 1).unwrap(), 0);
    assert!(boundary_framing(&d, 2).is_err());
}

#[test]
fn linking_examples() {
    let hopf = ClosureDiagram::new("B2: s1 s1".parse().unwrap());
    assert_eq!(linking_number(&hopf, 0, 1).unwrap(), 1);
    assert!(linking_number(&hopf, 0, 0).is_err());
    let split = ClosureDiagram::new("B4: s1 s1 s1 s3 s3 s3".parse().unwrap());
    assert_eq!(linking_number(&split, 0, 1).unwrap(), 0);
    let d = build_llmk(2, 3, 2).unwrap();
    let inter: i64 = d
        .crossings
        .iter()
        .filter(|x| x.components.0 != x.components.1)
        .map(|x| x.sign as i64)
        .sum();
    assert_eq!(linking_number(&d, BLUE, BLACK).unwrap(), inter / 2);
    assert_eq!(inter / 2, 5);
}

#[test]
fn twist_region_examples() {
    let t = twist_regions(&ClosureDiagram::new("B2: s1 s1 s1 s1 s1".parse().unwrap()));
    assert_eq!(t.count, 1);
    let fig8 = twist_regions(&ClosureDiagram::new("B3: s1 -s2 s1 -s2".parse().unwrap()));
    assert_eq!(fig8.count, 2);
}

#[test]
fn menasco_examples() {
    for (l, m, k) in [(1, 1, 1), (2, 1, 3), (4, 4, 4)] {
        let c = menasco_check(&build_llmk(l, m, k).unwrap()).expect("certified");
        assert!(c.prime && c.alternating && c.connected && !c.torus_two_q);
    }
    for q in 1..7 {
        let b = BraidWord::new(2, vec![1; q]).unwrap();
        assert!(menasco_check(&ClosureDiagram::new(b)).is_none());
    }
    let split = ClosureDiagram::new("B4: s1 -s2 s1 -s2".parse().unwrap());
    assert!(menasco_check(&split).is_none());
    let sum = ClosureDiagram::new("B3: s1 s1 s1 -s2 -s2 -s2".parse().unwrap());
    assert!(!is_prime(&sum));
    assert!(menasco_check(&sum).is_none());
    assert!(menasco_check(&ClosureDiagram::new("B3: s1 -s2 s1 -s2".parse().unwrap())).is_some());
}

#[test]
fn stallings_blocks_distinct() {
    let d = build_llmk(1, 1, 3).unwrap();
    let b = stallings_block_framings(&d).unwrap();
    assert_eq!(b.len(), 3);
    for i in 0..3 {
        for j in i + 1..3 {
            assert_ne!(b[i].class, b[j].class);
        }
    }
    let plain = ClosureDiagram::new("B2: s1 s1 s1".parse().unwrap());
    assert!(stallings_block_framings(&plain).is_err());
}

#[test]
fn surgery_examples() {
    let s = surgery_description(1, 4, 2).unwrap();
    assert_eq!(s.ambient, "4_1(-5)");
    assert!(s.q_hyperbolic);
    assert_eq!(s.fiber_genus, 7 + 2 * 2);
    assert!(s.futer_purcell_ok);
    let s = surgery_description(1, 1, 1).unwrap();
    assert_eq!(s.slope, -2);
    assert!(!s.q_hyperbolic);
    let r = family_record(1, 4, 1).unwrap();
    assert_eq!(r.genus, 7 + 2);
    assert_eq!(r.blue_alexander.coeffs, vec![1, -3, 1]);
    assert!(r.menasco);
}
