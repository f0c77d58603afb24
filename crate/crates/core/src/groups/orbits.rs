use super::{Elem, FiniteGroup, Group, Subgroup};
use crate::error::{Error, Result};

/// An action of a [`FiniteGroup`] on `{0, …, size−1}`, tabulated per element.
#[derive(Clone, Debug)]
pub struct SetAction {
    size: usize,
    table: Vec<Vec<usize>>,
}

impl SetAction {
    /// Tabulates `f(g, x)` for every group element `g` and point `x`.
    pub fn from_fn(group: &FiniteGroup, size: usize, f: impl Fn(Elem, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(group.order());
        for g in 0..group.order() as Elem {
            let row: Vec<usize> = (0..size).map(|x| f(g, x)).collect();
            if row.iter().any(|&y| y >= size) {
                return Err(Error::InconsistentAction(format!(
                    "{} maps a point outside the set",
                    group.describe(g)
                )));
            }
            table.push(row);
        }
        Ok(SetAction { size, table })
    }

    /// The action of a permutation group on the points it permutes.
    pub fn natural(group: &FiniteGroup) -> Self {
        Self::from_fn(group, group.degree(), |g, x| group.element(g).apply(x))
            .expect("natural action stays within the degree")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn apply(&self, g: Elem, x: usize) -> usize {
        self.table[g as usize][x]
    }

    /// Checks that the identity acts trivially and `s·(g·x) = (s g)·x` for every
    /// generator `s`; by induction on word length this gives the action axiom
    /// for all pairs.
    fn check(&self, group: &FiniteGroup) -> Result<()> {
        if (0..self.size).any(|x| self.table[0][x] != x) {
            return Err(Error::InconsistentAction("identity moves a point".into()));
        }
        for &s in group.generators() {
            for g in 0..group.order() as Elem {
                let sg = group.mul(s, g);
                for x in 0..self.size {
                    if self.apply(s, self.apply(g, x)) != self.apply(sg, x) {
                        return Err(Error::InconsistentAction(format!(
                            "{} then {} disagrees with their product at point {x}",
                            group.describe(g),
                            group.describe(s)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The orbit partition of the set (orbits ordered by smallest point, points
/// sorted within each orbit) and the stabilizer of `point`.
pub fn orbits_and_stabilizer(
    group: &FiniteGroup,
    action: &SetAction,
    point: usize,
) -> Result<(Vec<Vec<usize>>, Subgroup)> {
    if action.table.len() != group.order() {
        return Err(Error::InconsistentAction("table does not match the group".into()));
    }
    if point >= action.size {
        return Err(Error::InconsistentAction(format!("point {point} outside the set")));
    }
    action.check(group)?;
    let mut orbit_of = vec![usize::MAX; action.size];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..action.size {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for &s in group.generators() {
                let y = action.apply(s, x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let stab: Vec<Elem> = (0..group.order() as Elem)
        .filter(|&g| action.apply(g, point) == point)
        .collect();
    let stabilizer = group.subgroup_from_elements(&stab)?;
    Ok((orbits, stabilizer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Perm;

    #[test]
    fn symmetric_group_on_three_points() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let (orbits, stab) = orbits_and_stabilizer(&s3, &SetAction::natural(&s3), 0).unwrap();
        assert_eq!(orbits, vec![vec![0, 1, 2]]);
        assert_eq!(stab.order(), 2);
    }

    #[test]
    fn trivial_group_has_singleton_orbits() {
        let g = FiniteGroup::trivial(4);
        let (orbits, stab) = orbits_and_stabilizer(&g, &SetAction::natural(&g), 2).unwrap();
        assert_eq!(orbits, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(stab.order(), 1);
    }

    #[test]
    fn transposition_subgroup() {
        let h = FiniteGroup::from_generators(3, &[Perm::parse_cycles(3, "(1 2)").unwrap()]).unwrap();
        let (orbits, stab) = orbits_and_stabilizer(&h, &SetAction::natural(&h), 0).unwrap();
        assert_eq!(orbits, vec![vec![0], vec![1, 2]]);
        assert_eq!(stab.order(), h.order());
    }

    #[test]
    fn inconsistent_action_detected() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        // inverse permutations give a right action, which is not a left action of S3
        let bad = SetAction::from_fn(&s3, 3, |g, x| s3.element(s3.inv(g)).apply(x)).unwrap();
        assert!(matches!(
            orbits_and_stabilizer(&s3, &bad, 0),
            Err(Error::InconsistentAction(_))
        ));
    }
}
