use std::collections::HashSet;

use num_integer::Integer;

use super::field::isqrt_i64;

/// Number of classes of primitive binary quadratic forms of discriminant
/// `disc` under proper equivalence (the narrow class number), counted from
/// reduced forms. Positive-definite forms only when `disc < 0`.
pub fn reduced_forms_class_number(disc: i64) -> usize {
    if disc < 0 {
        let mut count = 0;
        let amax = isqrt_i64(-disc / 3) + 1;
        for a in 1..=amax {
            for b in -a + 1..=a {
                if (b * b - disc) % (4 * a) != 0 {
                    continue;
                }
                let c = (b * b - disc) / (4 * a);
                if c < a || (c == a && b < 0) || a.gcd(&b).gcd(&c) != 1 {
                    continue;
                }
                count += 1;
            }
        }
        return count;
    }

    // indefinite: cycles of reduced forms under (a, b, c) ↦ (c, b', ·)
    let s = isqrt_i64(disc);
    let below = |x: i64| x <= 0 || x * x < disc;
    let above = |x: i64| x > 0 && x * x > disc;
    let reduced = |a: i64, b: i64| b > 0 && below(b) && below(2 * a.abs() - b) && above(2 * a.abs() + b);
    let mut forms = Vec::new();
    for b in 1..=s {
        if (b - disc) % 2 != 0 {
            continue;
        }
        let m = (disc - b * b) / 4;
        for a in 1..=m {
            if m % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let c = -m / sa;
                if reduced(sa, b) && sa.gcd(&b).gcd(&c) == 1 {
                    forms.push((sa, b, c));
                }
            }
        }
    }
    let step = |(_, b, c): (i64, i64, i64)| {
        // b' ≡ −b (mod 2|c|) with s − 2|c| < b' ≤ s
        let m = 2 * c.abs();
        let lo = s - m + 1;
        let bp = lo + (-b - lo).rem_euclid(m);
        (c, bp, (bp * bp - disc) / (4 * c))
    };
    let mut seen = HashSet::new();
    let mut cycles = 0;
    for &f in &forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut cur = f;
        while seen.insert(cur) {
            cur = step(cur);
        }
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(reduced_forms_class_number(-4), 1);
        assert_eq!(reduced_forms_class_number(-20), 2);
        assert_eq!(reduced_forms_class_number(-23), 3);
        assert_eq!(reduced_forms_class_number(-56), 4);
        // narrow class numbers: Q(√3) has h = 1 but h⁺ = 2
        assert_eq!(reduced_forms_class_number(12), 2);
        assert_eq!(reduced_forms_class_number(8), 1);
        assert_eq!(reduced_forms_class_number(5), 1);
        assert_eq!(reduced_forms_class_number(40), 2);
    }

    #[test]
    fn agrees_with_ideal_class_group() {
        use crate::quadfields::QuadField;
        for d in (-300..=300).filter_map(|d| QuadField::new(d).ok()) {
            let h = d.class_group().unwrap().order();
            let narrow = reduced_forms_class_number(d.discriminant());
            let expected = match d.unit_group().unwrap().fundamental_norm {
                Some(1) => narrow / 2,
                _ => narrow,
            };
            assert_eq!(h, expected, "d = {}", d.d());
        }
    }
}
