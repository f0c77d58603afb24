//! Machine-readable encodings used in witness lines.
//!
//! A field element `a + b·ω` is written `a b` with rational coordinates in
//! the integral basis `1, ω`; matrices separate entries by `,` and rows by `;`.

use galcoh::groups::{Elem, FiniteGroup, Group};
use galcoh::lattices::KMatrix;
use galcoh::quadfields::QFElement;

use crate::input::parse_rational;

pub fn element(x: &QFElement) -> String {
    format!("{} {}", x.a, x.b)
}

pub fn parse_element(text: &str) -> Option<QFElement> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    match parts[..] {
        [a] => Some(QFElement::rational(parse_rational(a)?)),
        [a, b] => Some(QFElement::new(parse_rational(a)?, parse_rational(b)?)),
        _ => None,
    }
}

pub fn vector(v: &[QFElement]) -> String {
    v.iter().map(element).collect::<Vec<_>>().join(", ")
}

pub fn parse_vector(text: &str) -> Option<Vec<QFElement>> {
    text.split(',').map(parse_element).collect()
}

pub fn matrix(m: &KMatrix) -> String {
    m.iter().map(|r| vector(r)).collect::<Vec<_>>().join("; ")
}

pub fn parse_matrix(text: &str) -> Option<KMatrix> {
    let m: KMatrix = text.split(';').map(parse_vector).collect::<Option<_>>()?;
    let n = m.len();
    m.iter().all(|r| r.len() == n).then_some(m)
}

pub fn elements(g: &FiniteGroup, xs: impl IntoIterator<Item = Elem>) -> String {
    xs.into_iter().map(|x| g.describe(x)).collect::<Vec<_>>().join("; ")
}

pub fn indices(xs: &[usize]) -> String {
    if xs.is_empty() {
        return "none".into();
    }
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_round_trip() {
        let m = vec![
            vec![QFElement::from_ints(1, 0), QFElement::from_ints(0, -2)],
            vec![parse_element("1/2 3").unwrap(), QFElement::from_ints(0, 0)],
        ];
        let s = matrix(&m);
        assert_eq!(s, "1 0, 0 -2; 1/2 3, 0 0");
        assert_eq!(parse_matrix(&s), Some(m));
        assert_eq!(parse_matrix("1 0, 0; 1"), None);
        assert_eq!(parse_element("5"), Some(QFElement::from_ints(5, 0)));
    }
}
