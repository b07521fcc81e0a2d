use agsurf::field::prime_power;
use agsurf::{FieldElement, FieldSpec};

fn fields_up_to(bound: u64) -> Vec<FieldSpec> {
    (2..=bound).filter(|&q| prime_power(q).is_some()).map(|q| FieldSpec::with_order(q).unwrap()).collect()
}

#[test]
fn every_small_field_is_a_field() {
    for f in fields_up_to(64) {
        let q = f.q();
        let elems: Vec<FieldElement> = f.elements().collect();
        assert_eq!(elems.len() as u32, q);
        let one = f.from_int(1);
        for &a in &elems {
            assert_eq!(f.add(a, f.neg(a)), FieldElement::new(0), "q={q}");
            assert_eq!(f.pow(a, q as u64), a, "Frobenius fixes F_{q}");
            let mut acc = FieldElement::new(0);
            for _ in 0..f.p() {
                acc = f.add(acc, a);
            }
            assert!(acc.is_zero(), "characteristic of F_{q}");
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), one);
            }
            for &b in &elems {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
        assert!(f.inv(FieldElement::new(0)).is_err());
    }
}

#[test]
fn distributivity_and_associativity() {
    for f in fields_up_to(32) {
        let elems: Vec<FieldElement> = f.elements().collect();
        for &a in &elems {
            for &b in &elems {
                for &c in elems.iter().step_by(3) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                }
            }
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    for f in fields_up_to(64) {
        let g = f.primitive_element();
        let q = f.q() as u64;
        let mut seen = std::collections::HashSet::new();
        let mut x = f.from_int(1);
        for _ in 0..q - 1 {
            assert!(seen.insert(x), "order of the primitive element below q-1 in F_{q}");
            x = f.mul(x, g);
        }
        assert_eq!(x, f.from_int(1));
        assert_eq!(seen.len() as u64, q - 1);
    }
}

#[test]
fn squares_are_half_the_units_in_odd_characteristic() {
    for f in fields_up_to(64).into_iter().filter(|f| f.p() != 2) {
        let squares = f.elements().filter(|&a| !a.is_zero() && f.is_square(a)).count() as u32;
        assert_eq!(squares, (f.q() - 1) / 2);
        let chars: i64 = f.elements().map(|a| f.quadratic_character(a).unwrap() as i64).sum();
        assert_eq!(chars, 0);
    }
}

#[test]
fn rejects_bad_orders() {
    for q in [0u64, 1, 6, 10, 12, 65537 * 2] {
        assert!(FieldSpec::with_order(q).is_err(), "q={q}");
    }
    assert!(FieldSpec::new(2, 17).is_err());
    assert!(FieldSpec::new(4, 1).is_err());
}
