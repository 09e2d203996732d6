use std::time::Instant;

use mcgforge::mcg::*;
use mcgforge::openbook::*;
use mcgforge::surface::*;

#[test]
fn hopf_bookkeeping() {
    let ob = OpenBook::penner_base(2).unwrap();
    assert_eq!(ob.page(), SurfaceSig::new(2, 1));
    let s1 = hopf_stabilize(&ob, "alpha1", 1, "a'1").unwrap();
    assert_eq!(s1.page(), SurfaceSig::new(2, 2));
    assert_eq!(s1.binding_components(), 2);
    assert_eq!(s1.ledger.get("a'1"), Some(-1));
    assert_eq!(s1.monodromy.len(), ob.monodromy.len() + 1);
    let s2 = hopf_stabilize(&s1, "beta1", -1, "b'1").unwrap();
    assert_eq!(s2.page(), SurfaceSig::new(3, 1));
    assert_eq!(s2.ledger.get("b'1"), Some(1));
    assert_eq!(s1.page().euler(), ob.page().euler() - 1);
    assert_eq!(s2.page().euler(), s1.page().euler() - 1);
    assert!(hopf_stabilize(&ob, "gamma9", 1, "x").is_err());
    assert!(hopf_stabilize(&ob, "alpha1", 2, "x").is_err());
    assert!(hopf_stabilize(&s1, "alpha1", 1, "x").is_err());
    for (x, y) in [("a1", "b1"), ("a2", "b2"), ("a1", "a2"), ("c1", "b2"), ("c1", "b1")] {
        let before = intersection(ob.curve(x).unwrap(), ob.curve(y).unwrap()).unwrap();
        let after = intersection(s2.curve(x).unwrap(), s2.curve(y).unwrap()).unwrap();
        assert_eq!(before, after, "{x} {y}");
    }
    let (ca, cb) = (s2.curve("a'1").unwrap(), s2.curve("b'1").unwrap());
    assert_eq!(intersection(ca, cb).unwrap(), 0);
    assert_eq!(intersection(ca, s2.curve("b1").unwrap()).unwrap(), 1);
    assert_eq!(intersection(cb, s2.curve("a1").unwrap()).unwrap(), 1);
    for id in ["a1", "c1"] {
        assert_eq!(intersection(ca, s2.curve(id).unwrap()).unwrap(), 0);
    }
    for id in ["b1", "b2"] {
        assert_eq!(intersection(cb, s2.curve(id).unwrap()).unwrap(), 0);
    }
}

#[test]
fn standard_page_accepts_a_monodromy() {
    let ch = chain_system(2).unwrap();
    let t = ch.page.tri.clone();
    let w = TwistWord::identity(t).then_twist("x", ch.a[1].clone(), 2).unwrap();
    let ob = OpenBook::standard(2, Some(w)).unwrap();
    assert_eq!(ob.monodromy.len(), 1);
    assert_eq!(ob.monodromy.curve("x").unwrap(), ob.curve("a2").unwrap());
    let other = TwistWord::identity(torus());
    assert!(OpenBook::standard(2, Some(other)).is_err());
}

#[test]
fn penner_stabilize_sizes() {
    for g in 1..=3 {
        let ob = OpenBook::penner_base(g).unwrap();
        assert!(ob.penner_certificate().unwrap().is_some());
        for k in 1..=g {
            let s = penner_stabilize(&ob, k).unwrap();
            assert_eq!(s.page(), SurfaceSig::new(g + k, 1));
            assert_eq!(s.binding_components(), 1);
            assert_eq!(s.monodromy.len(), ob.monodromy.len() + 2 * k as usize);
            assert_eq!(s.page().euler(), ob.page().euler() - 2 * k as i64);
            for i in 1..=k {
                assert_eq!(s.ledger.get(&format!("a'{i}")), Some(-1));
                assert_eq!(s.ledger.get(&format!("b'{i}")), Some(1));
            }
            let cert = s.penner_certificate().unwrap().expect("stabilized word keeps Penner form");
            cert.replay().unwrap();
        }
        assert!(penner_stabilize(&ob, g + 1).is_err());
        assert!(penner_stabilize(&ob, 0).is_err());
    }
}

fn check_stallings(s: &OpenBook, k: usize) -> Vec<StallingsCurve> {
    let (ob, st) = stallings_curves(s).unwrap();
    assert_eq!(st.len(), k);
    for (i, t) in st.iter().enumerate() {
        assert_eq!(t.framing, 0);
        assert_eq!(ob.ledger.get(&t.id), Some(0));
        assert!(t.curve.is_simple_curve() && !t.curve.is_peripheral());
        assert!(t.homology.iter().any(|&v| v != 0));
        let want = (format!("a'{}", i + 1), format!("b'{}", (i + 1) % k + 1));
        assert_eq!(t.summands, want);
        for u in &st[i + 1..] {
            assert_eq!(intersection(&t.curve, &u.curve).unwrap(), 0);
            let neg: Vec<i64> = u.homology.iter().map(|v| -v).collect();
            assert!(t.homology != u.homology && t.homology != neg);
        }
    }
    st
}

#[test]
fn stallings_curves_for_each_k() {
    let ob = OpenBook::penner_base(3).unwrap();
    for k in 1..=3 {
        let s = penner_stabilize(&ob, k).unwrap();
        check_stallings(&s, k as usize);
    }
    assert!(stallings_curves(&ob).is_err());
}

#[test]
fn abelian_coset_genus_three() {
    let t0 = Instant::now();
    let ob = OpenBook::penner_base(3).unwrap();
    let s = penner_stabilize(&ob, 3).unwrap();
    assert_eq!(s.page(), SurfaceSig::new(6, 1));
    assert_eq!(s.monodromy.len(), ob.monodromy.len() + 6);
    check_stallings(&s, 3);
    let ab = abelian_coset(&s, &[1, 2, -1]).unwrap();
    assert_eq!(ab.rank(), 3);
    assert_eq!(ab.spec.kind, CosetKind::Abelian { rank: 3 });
    assert!(ab.spec.notes.iter().any(|n| n == DISK_NOTE));
    assert_eq!(ab.base_certificate.as_ref().unwrap().kind, CertKind::PennerPA);
    let lm = ab.long_morton.as_ref().expect("Long-Morton hypotheses hold");
    lm.replay().unwrap();
    let f = &ab.open_book.monodromy;
    for t in &ab.stallings {
        for u in &ab.stallings {
            assert_ne!(intersection(&act(f, &t.curve).unwrap(), &u.curve).unwrap(), 0);
        }
    }
    assert_eq!(ab.word.len(), s.monodromy.len() + 3);

    let base = coset_element(&ab.spec, &CosetWord::Abelian(vec![0, 0, 0])).unwrap();
    assert_eq!(base, ab.spec.base);
    let e1 = coset_element(&ab.spec, &CosetWord::Abelian(vec![1, 0, 2])).unwrap();
    let e2 = coset_element(&ab.spec, &CosetWord::Abelian(vec![1, 0, 2])).unwrap();
    assert_eq!(e1, e2);
    assert_eq!(e1.to_text(), e2.to_text());
    assert_eq!(e1.len(), base.len() + 2);
    assert_eq!(e1.letters().last().unwrap().exp, -2);
    assert!(coset_element(&ab.spec, &CosetWord::Abelian(vec![1])).is_err());
    assert!(coset_element(&ab.spec, &CosetWord::Free(vec![(0, 1)])).is_err());
    assert!(abelian_coset(&s, &[1, 0, 1]).is_err());
    assert!(abelian_coset(&s, &[1, 1]).is_err());
    println!("abelian coset g=3 k=3 in {:?}", t0.elapsed());
}

#[test]
fn free_coset_genus_four() {
    let ob = OpenBook::penner_base(4).unwrap();
    let s = penner_stabilize(&ob, 4).unwrap();
    assert_eq!(s.page(), SurfaceSig::new(8, 1));
    let fc = free_coset(&s).unwrap();
    assert_eq!(fc.intersection, 4);
    assert_eq!(intersection(&fc.a, &fc.b).unwrap(), 4);
    assert_eq!(fc.certificate.kind, CertKind::FreeRank2);
    fc.certificate.replay().unwrap();
    assert_eq!(fc.open_book.ledger.get("a"), Some(0));
    assert_eq!(fc.open_book.ledger.get("b"), Some(0));
    for c in [&fc.a, &fc.b] {
        assert!(c.is_simple_curve() && !c.is_peripheral());
    }
    let w = coset_element(&fc.spec, &CosetWord::Free(vec![(0, 1), (1, 1)])).unwrap();
    assert_eq!(w.len(), fc.spec.base.len() + 2);
    assert!(coset_element(&fc.spec, &CosetWord::Free(vec![(0, 1), (0, 1)])).is_err());
    assert!(coset_element(&fc.spec, &CosetWord::Free(vec![(2, 1)])).is_err());
    assert!(coset_element(&fc.spec, &CosetWord::Free(vec![(0, 0)])).is_err());

    let s3 = penner_stabilize(&ob, 3).unwrap();
    assert!(free_coset(&s3).is_err());
}
