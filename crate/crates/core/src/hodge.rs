//! Classification of L_1 \ Lambda into decomposable, regular and exceptional
//! elements, and the structural count of the Lefschetz number built on it.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{permutations4, RationalMod1};
use crate::character::{
    in_lambda, vanishing_subgroup_order, CharacterGroup, CharacterVector, DelsarteMatrix,
};
use crate::error::{Error, Result};

/// Largest order searched for exceptional elements by default.
pub const DEFAULT_EXCEPTIONAL_ORDER: u64 = 180;

/// Number of exceptional elements of order at most 180.
pub const EXCEPTIONAL_COUNT: usize = 22080;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HodgeClassLabel {
    InLambda,
    InL0,
    Decomposable,
    Regular,
    Exceptional,
}

impl fmt::Display for HodgeClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HodgeClassLabel::InLambda => "IN_LAMBDA",
            HodgeClassLabel::InL0 => "IN_L0",
            HodgeClassLabel::Decomposable => "DECOMPOSABLE",
            HodgeClassLabel::Regular => "REGULAR",
            HodgeClassLabel::Exceptional => "EXCEPTIONAL",
        };
        f.write_str(s)
    }
}

/// The three shapes of regular indecomposable elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegularShape {
    /// `(a, 1/2, 1/2+a, -2a)`
    F1,
    /// `(a, 1/2+a, 1/2+2a, -4a)`
    F2,
    /// `(a, 1/3+a, 2/3+a, -3a)`
    F3,
}

impl RegularShape {
    pub const ALL: [RegularShape; 3] = [RegularShape::F1, RegularShape::F2, RegularShape::F3];

    pub fn instantiate(self, a: RationalMod1) -> [RationalMod1; 4] {
        let half = RationalMod1::new(1, 2).unwrap();
        let third = RationalMod1::new(1, 3).unwrap();
        match self {
            RegularShape::F1 => [a, half, half + a, a.scale(-2)],
            RegularShape::F2 => [a, half + a, half + a.scale(2), a.scale(-4)],
            RegularShape::F3 => [a, third + a, third.scale(2) + a, a.scale(-3)],
        }
    }
}

/// A match of an element against a regular shape: `x[permutation[i]]` is
/// the `i`-th template coordinate at `parameter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularFamily {
    pub shape: RegularShape,
    pub permutation: [usize; 4],
    pub parameter: RationalMod1,
}

pub fn is_decomposable(x: &CharacterVector) -> bool {
    let c = x.coords();
    (1..4).any(|j| (c[0] + c[j]).is_zero())
}

/// First matching shape and permutation, trying shapes in order F1, F2, F3
/// and permutations lexicographically.
pub fn is_regular(x: &CharacterVector) -> Option<RegularFamily> {
    let c = x.coords();
    for shape in RegularShape::ALL {
        for perm in permutations4() {
            let a = c[perm[0]];
            let t = shape.instantiate(a);
            if (1..4).all(|i| c[perm[i]] == t[i]) {
                return Some(RegularFamily { shape, permutation: perm, parameter: a });
            }
        }
    }
    None
}

/// The exceptional elements of V up to a bound on their order.
#[derive(Clone, Debug)]
pub struct ExceptionalSet {
    max_order: u64,
    elements: Vec<CharacterVector>,
    lookup: HashSet<CharacterVector>,
}

impl ExceptionalSet {
    pub fn max_order(&self) -> u64 {
        self.max_order
    }

    /// Elements in ascending numeric order.
    pub fn elements(&self) -> &[CharacterVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &CharacterVector) -> bool {
        self.lookup.contains(x)
    }

    /// One vector per line, coordinates as reduced fractions.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.elements.len() * 24);
        for x in &self.elements {
            out.push_str(&x.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Vec<CharacterVector>> {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                l.parse::<CharacterVector>().map_err(|e| Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })
            })
            .collect()
    }
}

fn exceptional_of_order(d: u64) -> Vec<CharacterVector> {
    let units: Vec<u64> = (2..d).filter(|t| t.gcd(&d) == 1).collect();
    let mut found = Vec::new();
    for c1 in 1..d {
        for c2 in 1..d {
            if c1 + c2 == d {
                continue;
            }
            // c4 = 2d - c1 - c2 - c3 must lie in [1, d)
            let lo = (d + 1).saturating_sub(c1 + c2).max(1);
            let hi = (2 * d - 1).saturating_sub(c1 + c2).min(d - 1);
            for c3 in lo..=hi {
                let c4 = 2 * d - c1 - c2 - c3;
                if c1 + c3 == d || c1 + c4 == d {
                    continue;
                }
                let c = [c1, c2, c3, c4];
                if units.iter().any(|&t| c.iter().map(|&x| t * x % d).sum::<u64>() != 2 * d) {
                    continue;
                }
                if c.iter().fold(d, |g, &x| g.gcd(&x)) != 1 {
                    continue;
                }
                let x = CharacterVector::from_residues(c, d);
                if is_regular(&x).is_none() {
                    found.push(x);
                }
            }
        }
    }
    found
}

/// All `x` in V with no zero coordinate and `ord(x) <= max_order` that are
/// neither decomposable, nor regular, nor in Lambda.
///
/// Searches each exact order `d` separately, so orders run in parallel and
/// no element is found twice.
pub fn build_exceptional_set(max_order: u64) -> Result<ExceptionalSet> {
    if max_order < 2 {
        return Err(Error::Precondition(format!("max_order = {max_order} < 2")));
    }
    let orders: Vec<u64> = (2..=max_order).rev().collect();
    let mut elements: Vec<CharacterVector> = orders
        .into_par_iter()
        .flat_map_iter(exceptional_of_order)
        .collect();
    elements.sort_unstable();
    if max_order == DEFAULT_EXCEPTIONAL_ORDER && elements.len() != EXCEPTIONAL_COUNT {
        return Err(Error::Internal(format!(
            "found {} exceptional elements of order <= {max_order}, expected {EXCEPTIONAL_COUNT}",
            elements.len()
        )));
    }
    let lookup = elements.iter().copied().collect();
    Ok(ExceptionalSet { max_order, elements, lookup })
}

/// The default exceptional set, built once per process.
pub fn exceptional_set() -> Result<&'static ExceptionalSet> {
    static SET: OnceLock<Result<ExceptionalSet>> = OnceLock::new();
    SET.get_or_init(|| build_exceptional_set(DEFAULT_EXCEPTIONAL_ORDER))
        .as_ref()
        .map_err(Clone::clone)
}

/// Label of a single element. An element outside Lambda that is neither
/// decomposable nor regular is exceptional when its order is within the
/// bound; beyond the bound it cannot be labelled.
pub fn classify_with_bound(x: &CharacterVector, max_order: u64) -> Result<HodgeClassLabel> {
    if x.has_zero_coordinate() {
        return Ok(HodgeClassLabel::InL0);
    }
    if in_lambda(x)? {
        return Ok(HodgeClassLabel::InLambda);
    }
    if is_decomposable(x) {
        return Ok(HodgeClassLabel::Decomposable);
    }
    if is_regular(x).is_some() {
        return Ok(HodgeClassLabel::Regular);
    }
    if x.ord() <= max_order {
        return Ok(HodgeClassLabel::Exceptional);
    }
    Err(Error::Unclassifiable(x.to_string()))
}

pub fn classify(x: &CharacterVector) -> Result<HodgeClassLabel> {
    classify_with_bound(x, DEFAULT_EXCEPTIONAL_ORDER)
}

/// Counts of every label over one group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub order_l: u64,
    pub l0: u64,
    pub lambda: u64,
    pub decomposable: u64,
    pub regular: u64,
    pub exceptional: u64,
}

/// Labels every element of L. Membership in Lambda, decomposability,
/// regularity and exceptionality are all invariant under multiplication by
/// units, so each unit orbit is labelled through one representative.
pub fn census(group: &CharacterGroup, max_order: u64) -> Result<Census> {
    let d = group.modulus();
    let mut c = Census { order_l: group.cardinality(), l0: group.count_l0(), ..Census::default() };
    let mut failure = None;
    group.scan_orbits(|orbit| {
        if orbit.in_lambda {
            c.lambda += orbit.size;
            return;
        }
        let x = CharacterVector::from_residues(orbit.residues, d);
        if is_decomposable(&x) {
            c.decomposable += orbit.size;
        } else if is_regular(&x).is_some() {
            c.regular += orbit.size;
        } else if orbit.order <= max_order {
            c.exceptional += orbit.size;
        } else if failure.is_none() {
            failure = Some(Error::Unclassifiable(x.to_string()));
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(c),
    }
}

/// The terms of `#Lambda = #L - #(L0 u D) - #I - #R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralCount {
    pub order_l: u64,
    pub l0: u64,
    pub decomposable: u64,
    pub regular: u64,
    pub exceptional: u64,
}

impl StructuralCount {
    pub fn l0_or_decomposable(&self) -> u64 {
        self.l0 + self.decomposable
    }

    pub fn lambda(&self) -> u64 {
        self.order_l - self.l0 - self.decomposable - self.regular - self.exceptional
    }
}

/// Labels each element of L as L0, D, R or I without consulting the
/// Lambda predicate; whatever is left over is Lambda.
pub fn structural_count(group: &CharacterGroup, exceptional: &ExceptionalSet) -> StructuralCount {
    let d = group.modulus();
    let mut s = StructuralCount {
        order_l: group.cardinality(),
        l0: 0,
        decomposable: 0,
        regular: 0,
        exceptional: 0,
    };
    group.for_each_residue(|r| {
        if r.contains(&0) {
            s.l0 += 1;
            return;
        }
        let x = CharacterVector::from_residues(r, d);
        if is_decomposable(&x) {
            s.decomposable += 1;
        } else if is_regular(&x).is_some() {
            s.regular += 1;
        } else if exceptional.contains(&x) {
            s.exceptional += 1;
        }
    });
    s
}

pub fn structural_lefschetz(a: &DelsarteMatrix) -> Result<u64> {
    let group = CharacterGroup::new(a)?;
    Ok(structural_count(&group, exceptional_set()?).lambda())
}

/// `#L0` by inclusion-exclusion over the subgroups `N_i = {x : x_i = 0}`.
pub fn count_l0_inclusion_exclusion(a: &DelsarteMatrix) -> Result<u64> {
    let group = CharacterGroup::new(a)?;
    let mut total: i64 = 0;
    for mask in 1u32..16 {
        let columns: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
        let order = vanishing_subgroup_order(&group, &columns)? as i64;
        if columns.len() % 2 == 1 {
            total += order;
        } else {
            total -= order;
        }
    }
    u64::try_from(total).map_err(|_| Error::Internal("negative inclusion-exclusion count".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntMatrix4;

    fn v(s: &str) -> CharacterVector {
        s.parse().unwrap()
    }

    fn case26(n: i64) -> DelsarteMatrix {
        DelsarteMatrix::new(
            IntMatrix4([[n, 0, 0, 0], [0, n, 0, 0], [0, 0, n - 1, 1], [1, 1, 0, n - 2]]),
            n as u32,
        )
        .unwrap()
    }

    #[test]
    fn decomposable_examples() {
        assert!(is_decomposable(&v("5/6,1/6,1/2,1/2")));
        assert!(!is_decomposable(&v("1/12,7/12,2/3,2/3")));
        assert!(is_decomposable(&v("1/7,6/7,2/7,5/7")));
    }

    #[test]
    fn regular_examples() {
        let f = is_regular(&v("1/12,7/12,2/3,2/3")).unwrap();
        assert_eq!(f.shape, RegularShape::F2);
        assert_eq!(f.parameter, RationalMod1::new(1, 12).unwrap());
        let f = is_regular(&v("11/12,5/12,1/3,1/3")).unwrap();
        assert_eq!(f.shape, RegularShape::F2);
        assert_eq!(f.parameter, RationalMod1::new(11, 12).unwrap());
        assert_eq!(is_regular(&v("1/5,1/5,1/5,2/5")), None);
    }

    #[test]
    fn regular_match_reconstructs_element() {
        let x = v("5/12,11/12,1/3,1/3");
        let f = is_regular(&x).unwrap();
        let t = f.shape.instantiate(f.parameter);
        for i in 0..4 {
            assert_eq!(x.coord(f.permutation[i]), t[i]);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&v("1/2,1/2,0,0")).unwrap(), HodgeClassLabel::InL0);
        assert_eq!(classify(&v("5/12,11/12,1/3,1/3")).unwrap(), HodgeClassLabel::Regular);
        assert_eq!(classify(&v("1/5,1/5,1/5,2/5")).unwrap(), HodgeClassLabel::InLambda);
        assert_eq!(classify(&v("1/2,1/2,1/2,1/2")).unwrap(), HodgeClassLabel::Decomposable);
        assert_eq!(classify(&v("1/24,19/24,1/3,5/6")).unwrap(), HodgeClassLabel::Exceptional);
        assert!(matches!(
            classify_with_bound(&v("1/24,19/24,1/3,5/6"), 12),
            Err(Error::Unclassifiable(_))
        ));
    }

    #[test]
    fn small_exceptional_search() {
        let set = build_exceptional_set(24).unwrap();
        assert!(set.contains(&v("1/24,19/24,1/3,5/6")));
        assert!(!set.contains(&v("1/2,1/2,1/2,1/2")));
        for x in set.elements() {
            assert!(!is_decomposable(x));
            assert!(is_regular(x).is_none());
            assert!(!in_lambda(x).unwrap());
            assert!(x.ord() <= 24);
        }
        let text = set.to_text();
        assert_eq!(ExceptionalSet::parse_text(&text).unwrap(), set.elements());
        assert!(build_exceptional_set(1).is_err());
    }

    #[test]
    fn case26_structure_at_7() {
        let group = CharacterGroup::new(&case26(7)).unwrap();
        let s = structural_count(&group, &build_exceptional_set(60).unwrap());
        assert_eq!(s.order_l, 210);
        assert_eq!(s.l0, 35);
        assert_eq!(s.l0_or_decomposable(), 46);
        assert_eq!((s.regular, s.exceptional), (0, 0));
        assert_eq!(s.lambda(), 164);
        let c = census(&group, DEFAULT_EXCEPTIONAL_ORDER).unwrap();
        assert_eq!((c.l0, c.decomposable, c.regular, c.exceptional, c.lambda), (35, 11, 0, 0, 164));
    }

    #[test]
    fn case26_regular_elements_at_16() {
        let group = CharacterGroup::new(&case26(16)).unwrap();
        let mut regular: Vec<CharacterVector> = group
            .enumerate()
            .unwrap()
            .into_iter()
            .filter(|x| !x.has_zero_coordinate() && !is_decomposable(x) && is_regular(x).is_some())
            .collect();
        regular.sort();
        let mut expected =
            ["1/12,7/12,2/3,2/3", "5/12,11/12,1/3,1/3", "7/12,1/12,2/3,2/3", "11/12,5/12,1/3,1/3"]
                .map(v)
                .to_vec();
        expected.sort();
        assert_eq!(regular, expected);
    }

    #[test]
    fn l0_by_inclusion_exclusion() {
        assert_eq!(count_l0_inclusion_exclusion(&case26(7)).unwrap(), 35);
        assert_eq!(count_l0_inclusion_exclusion(&case26(8)).unwrap(), 48);
        for n in [4, 5, 6, 9] {
            let f = DelsarteMatrix::fermat(n);
            let direct = CharacterGroup::new(&f).unwrap().count_l0();
            assert_eq!(count_l0_inclusion_exclusion(&f).unwrap(), direct);
        }
    }
}
