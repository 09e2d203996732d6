use mcgforge::surface::*;

fn primitive_slopes(max_weight: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for q in 0..=max_weight {
        for p in -max_weight..=max_weight {
            if q == 0 && p != 1 {
                continue;
            }
            if gcd(p.abs(), q) != 1 {
                continue;
            }
            if p.abs() + q + (p - q).abs() <= max_weight {
                out.push((p, q));
            }
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn slope_intersection_matches_determinant() {
    let t = torus();
    let slopes = primitive_slopes(20);
    let curves: Vec<_> = slopes.iter().map(|&(p, q)| slope_curve(&t, p, q).unwrap()).collect();
    for (x, &(p, q)) in curves.iter().zip(&slopes) {
        for (y, &(r, s)) in curves.iter().zip(&slopes) {
            let det = (p * s - q * r).unsigned_abs();
            assert_eq!(intersection(x, y).unwrap(), det, "({p},{q}) vs ({r},{s})");
        }
    }
}

#[test]
fn slope_roundtrip() {
    let t = torus();
    for (p, q) in primitive_slopes(12) {
        let c = slope_curve(&t, p, q).unwrap();
        assert!(c.is_simple_curve());
        assert!(!is_peripheral(&c));
        assert_eq!(slope_of(&c), Some((p, q)));
    }
}

#[test]
fn twist_matches_unimodular_action() {
    let t = torus();
    let a = slope_curve(&t, 1, 0).unwrap();
    let b = slope_curve(&t, 0, 1).unwrap();
    assert_eq!(slope_of(&twist(&a, &b, 1).unwrap()), Some((1, 1)));
    assert_eq!(slope_of(&twist(&a, &b, -1).unwrap()), Some((-1, 1)));
    assert_eq!(slope_of(&twist(&b, &a, 1).unwrap()), Some((1, -1)).map(|(p, q): (i64, i64)| (-p, -q)));
    for (p, q) in primitive_slopes(10) {
        let c = slope_curve(&t, p, q).unwrap();
        for n in -3..=3i64 {
            let ta = twist(&a, &c, n).unwrap();
            let (x, y) = (p + n * q, q);
            let (x, y) = if y < 0 || (y == 0 && x < 0) { (-x, -y) } else { (x, y) };
            assert_eq!(slope_of(&ta), Some((x, y)), "tau_a^{n} ({p},{q})");
            let tb = twist(&b, &c, n).unwrap();
            let (x, y) = (p, q - n * p);
            let (x, y) = if y < 0 || (y == 0 && x < 0) { (-x, -y) } else { (x, y) };
            assert_eq!(slope_of(&tb), Some((x, y)), "tau_b^{n} ({p},{q})");
        }
    }
}

#[test]
fn flip_examples() {
    // Square with sides all of weight one and diagonal two.
    let t = torus();
    let c = MultiCurve::new(t.clone(), vec![1, 1, 2]).unwrap();
    let (t2, out) = flip(&t, std::slice::from_ref(&c), 2).unwrap();
    let w = out[0].weights().to_vec();
    assert_eq!(w[2], 0);
    let (_, back) = flip(&t2, &out, 2).unwrap();
    assert_eq!(back[0].weights(), c.weights());
}

#[test]
fn enumeration_small_bounds() {
    let t = torus();
    assert!(enumerate_curves(&t, 0).is_empty());
    let two: Vec<_> = enumerate_curves(&t, 2).iter().map(|c| slope_of(c).unwrap()).collect();
    let mut two = two;
    two.sort();
    assert_eq!(two, vec![(0, 1), (1, 0), (1, 1)]);
    for bound in 2..12 {
        let all = enumerate_curves(&t, bound);
        let expect = primitive_slopes(bound as i64).len();
        assert_eq!(all.len(), expect, "bound {bound}");
    }
}

#[test]
fn torus_filling_pair() {
    let t = torus();
    let a = slope_curve(&t, 1, 0).unwrap();
    let b = slope_curve(&t, 0, 1).unwrap();
    let (fills, comp) = filling_check(&[a.clone(), b]).unwrap();
    assert!(fills, "{}", comp.describe());
    assert_eq!(comp.regions, vec![RegionKind::PuncturedDisk]);
    let (fills, comp) = filling_check(&[a]).unwrap();
    assert!(!fills);
    assert_eq!(comp.regions, vec![RegionKind::Other { euler: -1, punctures: 1 }]);
}

#[test]
fn twist_homology_rule() {
    // [T_a b] = [b] + (a.b)[a] on oriented curves.
    let t = torus();
    let a = OrientedCurve::new(slope_curve(&t, 1, 0).unwrap(), false).unwrap();
    for (p, q) in primitive_slopes(9) {
        let b = OrientedCurve::new(slope_curve(&t, p, q).unwrap(), false).unwrap();
        let ab = algebraic_intersection(&a, &b).unwrap();
        let tb = twist_walk(&t, &a.walk(), &b.walk(), 1);
        let lhs = walk_class(&t, &tb);
        let ha = homology_class(&a);
        let hb = homology_class(&b);
        let rhs: Vec<i64> = hb.iter().zip(&ha).map(|(x, y)| x + ab * y).collect();
        assert_eq!(lhs, rhs, "slope ({p},{q})");
    }
}
