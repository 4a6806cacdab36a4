//! The character group L of a Delsarte surface and the Lefschetz number.
//!
//! For an exponent matrix `A` the three vectors `v = e1 A^-1`, `w = e2 A^-1`,
//! `u = e3 A^-1` (with `e1 = (1,0,0,-1)` etc.) generate a finite submodule
//! `L` of `(Q/Z)^4`. The Lefschetz number is the number of elements of `L`
//! without zero coordinate that admit an order-preserving multiplier `t` with
//! fractional-part sum different from 2.
//!
//! Internally every element of `L` is stored as an integer vector modulo
//! `D = |det A|`, and `L` is enumerated as `Z^3 / K` where `K` is the kernel
//! of `(i, j, k) -> i v + j w + k u`, using the coset box of the normal form
//! of `K`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    det4, hnf, inverse_rational, lattice_index, row_echelon, IntLattice3, IntMatrix4,
    RationalMod1,
};
use crate::error::{Error, Result};

const E_ROWS: [[i64; 4]; 3] = [[1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]];

/// An element of V: four classes in Q/Z summing to zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterVector([RationalMod1; 4]);

impl CharacterVector {
    pub fn new(coords: [RationalMod1; 4]) -> Result<Self> {
        let sum = coords.iter().fold(RationalMod1::ZERO, |acc, &x| acc + x);
        if !sum.is_zero() {
            return Err(Error::Precondition(format!(
                "coordinates {coords:?} do not sum to 0 mod 1"
            )));
        }
        Ok(CharacterVector(coords))
    }

    /// Builds `(c_1/d, ..., c_4/d)` from residues modulo `d`.
    pub fn from_residues(c: [u64; 4], d: u64) -> Self {
        CharacterVector(c.map(|x| RationalMod1::from_residue(x, d)))
    }

    pub fn zero() -> Self {
        CharacterVector([RationalMod1::ZERO; 4])
    }

    pub fn coords(&self) -> &[RationalMod1; 4] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> RationalMod1 {
        self.0[i]
    }

    /// lcm of the coordinate orders.
    pub fn ord(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, x| acc.lcm(&x.ord_plus()))
    }

    pub fn scale(&self, t: i64) -> Self {
        CharacterVector(self.0.map(|x| x.scale(t)))
    }

    pub fn permute(&self, perm: [usize; 4]) -> Self {
        CharacterVector(std::array::from_fn(|i| self.0[perm[i]]))
    }

    pub fn has_zero_coordinate(&self) -> bool {
        self.0.iter().any(RationalMod1::is_zero)
    }

    /// `sum fr(x_i)`, an integer in `0..=3` because the coordinates sum to 0.
    pub fn fractional_sum(&self) -> u64 {
        let d = self.ord();
        let total: u128 = self.0.iter().map(|x| x.residue_over(d) as u128).sum();
        debug_assert_eq!(total % d as u128, 0);
        (total / d as u128) as u64
    }
}

impl fmt::Display for CharacterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Debug for CharacterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for CharacterVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse { line: 0, message: format!("expected 4 coordinates in {s:?}") });
        }
        let mut coords = [RationalMod1::ZERO; 4];
        for (c, p) in coords.iter_mut().zip(parts) {
            *c = p.parse()?;
        }
        CharacterVector::new(coords)
    }
}

/// Whether some coordinate vanishes.
pub fn in_l0(x: &CharacterVector) -> bool {
    x.has_zero_coordinate()
}

/// Membership in Lambda for an element without zero coordinate.
///
/// `ord_plus(t x_i) = ord_plus(x_i)` for every `i` holds exactly when `t` is
/// a unit modulo `ord(x)`, so only units need to be tried.
pub fn in_lambda(x: &CharacterVector) -> Result<bool> {
    if x.has_zero_coordinate() {
        return Err(Error::Precondition(format!("{x:?} has a zero coordinate")));
    }
    let ord = x.ord();
    Ok((1..ord.max(2))
        .filter(|t| t.gcd(&ord) == 1)
        .any(|t| x.scale(t as i64).fractional_sum() != 2))
}

/// An exponent matrix together with its degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DelsarteMatrix {
    matrix: [[i64; 4]; 4],
    degree: u32,
}

impl DelsarteMatrix {
    pub fn new(matrix: IntMatrix4, degree: u32) -> Result<Self> {
        for (i, row) in matrix.0.iter().enumerate() {
            if row.iter().any(|&e| e < 0) {
                return Err(Error::InvalidMatrix(format!("row {} has a negative entry", i + 1)));
            }
            let sum: i64 = row.iter().sum();
            if sum != degree as i64 {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has degree {sum}, expected {degree}",
                    i + 1
                )));
            }
        }
        if det4(&matrix).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(DelsarteMatrix { matrix: matrix.0, degree })
    }

    pub fn fermat(n: u32) -> Self {
        DelsarteMatrix::new(IntMatrix4::diagonal([n as i64; 4]), n).expect("Fermat matrix is valid")
    }

    pub fn matrix(&self) -> IntMatrix4 {
        IntMatrix4(self.matrix)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn determinant(&self) -> BigInt {
        det4(&self.matrix())
    }

    pub fn permute_columns(&self, perm: [usize; 4]) -> Self {
        DelsarteMatrix { matrix: self.matrix().permute_columns(perm).0, degree: self.degree }
    }
}

fn reduce_rational(x: &BigRational) -> Result<RationalMod1> {
    let p = x.numer().to_i128().ok_or_else(|| Error::TooLarge(x.to_string()))?;
    let q = x.denom().to_i128().ok_or_else(|| Error::TooLarge(x.to_string()))?;
    RationalMod1::from_i128(p, q)
}

/// `v, w, u` as elements of V.
pub fn generators(a: &DelsarteMatrix) -> Result<[CharacterVector; 3]> {
    let inv = inverse_rational(&a.matrix())?;
    let mut out = [CharacterVector::zero(); 3];
    for (g, e) in out.iter_mut().zip(E_ROWS.iter()) {
        let row = inv.left_mul(e);
        let mut coords = [RationalMod1::ZERO; 4];
        for (c, x) in coords.iter_mut().zip(row.iter()) {
            *c = reduce_rational(x)?;
        }
        *g = CharacterVector::new(coords)?;
    }
    Ok(out)
}

/// `v, w, u` scaled by `D = |det A|` and reduced modulo `D`.
fn scaled_generators(a: &DelsarteMatrix) -> Result<(u64, [[u64; 4]; 3])> {
    let det = a.determinant().abs();
    let d = det
        .to_u64()
        .filter(|&d| d <= u32::MAX as u64)
        .ok_or_else(|| Error::TooLarge(format!("|det A| = {det}")))?;
    let inv = inverse_rational(&a.matrix())?;
    let scale = BigRational::from_integer(BigInt::from(d));
    let mut gens = [[0u64; 4]; 3];
    for (g, e) in gens.iter_mut().zip(E_ROWS.iter()) {
        for (c, x) in g.iter_mut().zip(inv.left_mul(e)) {
            let y = x * &scale;
            if !y.is_integer() {
                return Err(Error::Internal("|det A| does not clear denominators".into()));
            }
            let r = y.to_integer().mod_floor(&BigInt::from(d));
            *c = r.to_u64().expect("residue below modulus");
        }
    }
    Ok((d, gens))
}

/// Kernel of `m -> m * gens` restricted to `columns`, modulo `d`.
fn kernel_for_columns(gens: &[[u64; 4]; 3], d: u64, columns: &[usize]) -> Result<IntLattice3> {
    let k = columns.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(3 + k);
    for (i, g) in gens.iter().enumerate() {
        let mut row: Vec<BigInt> = columns.iter().map(|&c| BigInt::from(g[c])).collect();
        row.extend((0..3).map(|j| BigInt::from((i == j) as i64)));
        rows.push(row);
    }
    for idx in 0..k {
        let mut row = vec![BigInt::zero(); k + 3];
        row[idx] = BigInt::from(d);
        rows.push(row);
    }
    row_echelon(&mut rows);
    let basis: Vec<[BigInt; 3]> = rows
        .iter()
        .filter(|r| r[..k].iter().all(Zero::is_zero) && r[k..].iter().any(|x| !x.is_zero()))
        .map(|r| [r[k].clone(), r[k + 1].clone(), r[k + 2].clone()])
        .collect();
    if basis.len() != 3 {
        return Err(Error::Internal(format!("kernel has rank {}", basis.len())));
    }
    let [a, b, c]: [[BigInt; 3]; 3] = basis.try_into().expect("three rows");
    hnf(&IntLattice3::new([a, b, c]))
}

/// `{(i,j,k) : i v + j w + k u = 0}` in normal form; its index is `#L`.
pub fn kernel_lattice(a: &DelsarteMatrix) -> Result<IntLattice3> {
    let (d, gens) = scaled_generators(a)?;
    kernel_for_columns(&gens, d, &[0, 1, 2, 3])
}

/// The finite module L with its coset enumeration.
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    modulus: u64,
    generators: [[u64; 4]; 3],
    kernel: IntLattice3,
    hnf: [[i64; 3]; 3],
    cardinality: u64,
}

/// An orbit of L_1 under multiplication by units.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Orbit {
    pub residues: [u64; 4],
    pub order: u64,
    pub size: u64,
    pub in_lambda: bool,
}

impl CharacterGroup {
    pub fn new(a: &DelsarteMatrix) -> Result<Self> {
        let (modulus, generators) = scaled_generators(a)?;
        let kernel = kernel_for_columns(&generators, modulus, &[0, 1, 2, 3])?;
        let cardinality = lattice_index(&kernel)
            .to_u64()
            .filter(|&c| c <= u32::MAX as u64)
            .ok_or_else(|| Error::TooLarge(format!("#L = {}", lattice_index(&kernel))))?;
        let hnf = kernel.to_i64().ok_or_else(|| Error::TooLarge("kernel basis".into()))?;
        Ok(CharacterGroup { modulus, generators, kernel, hnf, cardinality })
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// Common denominator `|det A|` of all elements.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn kernel(&self) -> &IntLattice3 {
        &self.kernel
    }

    pub fn generators(&self) -> [CharacterVector; 3] {
        self.generators.map(|g| CharacterVector::from_residues(g, self.modulus))
    }

    /// Sizes of the coset box `[0,a) x [0,c) x [0,f)`.
    pub fn coset_box(&self) -> [u64; 3] {
        [self.hnf[0][0] as u64, self.hnf[1][1] as u64, self.hnf[2][2] as u64]
    }

    /// Canonical coset representative of `(i, j, k)`.
    pub fn reduce_coset(&self, mut v: [i64; 3]) -> [i64; 3] {
        for col in (0..3).rev() {
            let q = v[col].div_euclid(self.hnf[col][col]);
            if q != 0 {
                for j in 0..=col {
                    v[j] -= q * self.hnf[col][j];
                }
            }
        }
        v
    }

    fn coset_index(&self, v: [i64; 3]) -> usize {
        let [_, c, f] = self.coset_box();
        ((v[0] as u64 * c + v[1] as u64) * f + v[2] as u64) as usize
    }

    /// `i v + j w + k u` as residues modulo `D`.
    pub fn residues_of(&self, coset: [i64; 3]) -> [u64; 4] {
        let d = self.modulus as i128;
        std::array::from_fn(|c| {
            let s: i128 = (0..3).map(|g| coset[g] as i128 * self.generators[g][c] as i128).sum();
            s.rem_euclid(d) as u64
        })
    }

    /// Visits every element in lexicographic coset order.
    pub fn for_each_residue(&self, mut f: impl FnMut([u64; 4])) {
        let [a, c, fz] = self.coset_box();
        let d = self.modulus;
        let add = |x: &mut [u64; 4], g: &[u64; 4]| {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += gi;
                if *xi >= d {
                    *xi -= d;
                }
            }
        };
        let mut xi = [0u64; 4];
        for _ in 0..a {
            let mut xj = xi;
            for _ in 0..c {
                let mut xk = xj;
                for _ in 0..fz {
                    f(xk);
                    add(&mut xk, &self.generators[2]);
                }
                add(&mut xj, &self.generators[1]);
            }
            add(&mut xi, &self.generators[0]);
        }
    }

    /// All elements of L, pairwise distinct, in lexicographic coset order.
    pub fn enumerate(&self) -> Result<Vec<CharacterVector>> {
        let mut out = Vec::with_capacity(self.cardinality as usize);
        let mut seen = HashSet::with_capacity(self.cardinality as usize);
        let mut duplicate = None;
        self.for_each_residue(|r| {
            if !seen.insert(r) && duplicate.is_none() {
                duplicate = Some(r);
            }
            out.push(CharacterVector::from_residues(r, self.modulus));
        });
        if let Some(r) = duplicate {
            return Err(Error::Internal(format!("duplicate element {r:?} in enumeration")));
        }
        Ok(out)
    }

    /// Partitions L_1 into unit orbits and decides Lambda-membership once
    /// per orbit. Orbits are visited in order of their first element.
    pub(crate) fn scan_orbits(&self, mut visit: impl FnMut(&Orbit)) {
        let n = self.cardinality as usize;
        let d = self.modulus;
        let mut seen = vec![false; n];
        let [a, c, f] = self.coset_box();
        for i in 0..a as i64 {
            for j in 0..c as i64 {
                for k in 0..f as i64 {
                    let coset = [i, j, k];
                    let idx = self.coset_index(coset);
                    if seen[idx] {
                        continue;
                    }
                    seen[idx] = true;
                    let x = self.residues_of(coset);
                    if x.contains(&0) {
                        continue;
                    }
                    let order = d / x.iter().fold(d, |g, &c| g.gcd(&c));
                    let mut in_lambda = x.iter().sum::<u64>() != 2 * d;
                    let mut size = 1;
                    let mut y = coset;
                    let mut xt = x;
                    for t in 2..order {
                        y = self.reduce_coset([y[0] + i, y[1] + j, y[2] + k]);
                        for (a, b) in xt.iter_mut().zip(&x) {
                            *a += b;
                            if *a >= d {
                                *a -= d;
                            }
                        }
                        if t.gcd(&order) != 1 {
                            continue;
                        }
                        seen[self.coset_index(y)] = true;
                        size += 1;
                        if !in_lambda {
                            in_lambda = xt.iter().sum::<u64>() != 2 * d;
                        }
                    }
                    visit(&Orbit { residues: x, order, size, in_lambda });
                }
            }
        }
    }

    pub fn count_l0(&self) -> u64 {
        let mut count = 0;
        self.for_each_residue(|r| {
            if r.contains(&0) {
                count += 1;
            }
        });
        count
    }

    pub fn lefschetz(&self) -> u64 {
        let mut lambda = 0;
        self.scan_orbits(|o| {
            if o.in_lambda {
                lambda += o.size;
            }
        });
        lambda
    }
}

/// Size of the subgroup `{x in L : x_i = 0 for i in columns}`.
pub(crate) fn vanishing_subgroup_order(group: &CharacterGroup, columns: &[usize]) -> Result<u64> {
    let sub = kernel_for_columns(&group.generators, group.modulus, columns)?;
    let (q, r) = lattice_index(&group.kernel).div_rem(&lattice_index(&sub));
    if !r.is_zero() {
        return Err(Error::Internal("vanishing lattice does not contain the kernel".into()));
    }
    q.to_u64().ok_or_else(|| Error::Internal("subgroup order".into()))
}

/// The Lefschetz number `#Lambda`.
pub fn lefschetz(a: &DelsarteMatrix) -> Result<u64> {
    Ok(CharacterGroup::new(a)?.lefschetz())
}

/// Reference count: tests `in_lambda` on every enumerated element.
pub fn lefschetz_by_elements(a: &DelsarteMatrix) -> Result<u64> {
    let group = CharacterGroup::new(a)?;
    let mut count = 0;
    for x in group.enumerate()? {
        if !x.has_zero_coordinate() && in_lambda(&x)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Second Betti number of a degree-n surface in P^3 with only ADE singularities.
pub fn betti2(n: i64) -> i64 {
    n * n * n - 4 * n * n + 6 * n - 2
}

/// `h^{1,1} = b_2 - 2 p_g` with `p_g = (n-1)(n-2)(n-3)/6`.
pub fn hodge11(n: i64) -> i64 {
    let numerator = 2 * n * n * n - 6 * n * n + 7 * n;
    assert_eq!(numerator % 3, 0, "h11 numerator not divisible by 3 at n = {n}");
    numerator / 3
}

pub fn picard(a: &DelsarteMatrix) -> Result<i64> {
    Ok(betti2(a.degree() as i64) - lefschetz(a)? as i64)
}

pub fn is_maximal(a: &DelsarteMatrix) -> Result<bool> {
    Ok(picard(a)? == hodge11(a.degree() as i64))
}

/// Summary of the invariants of one surface at one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardReport {
    pub degree: u32,
    pub order_l: u64,
    pub order_l0: u64,
    pub lefschetz: u64,
    pub betti2: i64,
    pub picard: i64,
    pub hodge11: i64,
    pub maximal: bool,
}

pub fn picard_report(a: &DelsarteMatrix) -> Result<PicardReport> {
    let group = CharacterGroup::new(a)?;
    let n = a.degree() as i64;
    let lambda = group.lefschetz();
    let rho = betti2(n) - lambda as i64;
    Ok(PicardReport {
        degree: a.degree(),
        order_l: group.cardinality(),
        order_l0: group.count_l0(),
        lefschetz: lambda,
        betti2: betti2(n),
        picard: rho,
        hodge11: hodge11(n),
        maximal: rho == hodge11(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> RationalMod1 {
        RationalMod1::new(p, d).unwrap()
    }

    fn vec4(c: [(i64, i64); 4]) -> CharacterVector {
        CharacterVector::new(c.map(|(p, d)| q(p, d))).unwrap()
    }

    pub(crate) fn case26(n: i64) -> DelsarteMatrix {
        DelsarteMatrix::new(
            IntMatrix4([[n, 0, 0, 0], [0, n, 0, 0], [0, 0, n - 1, 1], [1, 1, 0, n - 2]]),
            n as u32,
        )
        .unwrap()
    }

    #[test]
    fn vector_parse_roundtrip() {
        let x: CharacterVector = "1/24,19/24,1/3,5/6".parse().unwrap();
        assert_eq!(x.to_string(), "1/24,19/24,1/3,5/6");
        assert!("1/2,1/3,0,0".parse::<CharacterVector>().is_err());
    }

    #[test]
    fn fermat_generators() {
        for n in [4, 6, 9] {
            let [v, _, _] = generators(&DelsarteMatrix::fermat(n)).unwrap();
            assert_eq!(v, vec4([(1, n as i64), (0, 1), (0, 1), (n as i64 - 1, n as i64)]));
        }
    }

    #[test]
    fn case26_generators() {
        for n in [6i64, 7, 10, 13] {
            let [v, _, u] = generators(&case26(n)).unwrap();
            let nn = n * (n - 2);
            assert_eq!(v, vec4([(n - 1, nn), (1, nn), (0, 1), (n - 3, n - 2)]));
            let m = (n - 1) * (n - 2);
            assert_eq!(
                u,
                CharacterVector::new([q(1, m), q(1, m), q(1, n - 1), q(-n, m)]).unwrap()
            );
        }
    }

    #[test]
    fn kernel_indices() {
        for n in [3u32, 5, 6] {
            let k = kernel_lattice(&DelsarteMatrix::fermat(n)).unwrap();
            assert_eq!(k, IntLattice3::from_i64([[n as i64, 0, 0], [0, n as i64, 0], [0, 0, n as i64]]));
        }
        assert_eq!(lattice_index(&kernel_lattice(&case26(7)).unwrap()), BigInt::from(210));
        assert_eq!(lattice_index(&kernel_lattice(&case26(6)).unwrap()), BigInt::from(120));
    }

    #[test]
    fn enumeration() {
        let g = CharacterGroup::new(&DelsarteMatrix::fermat(2)).unwrap();
        let all = g.enumerate().unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.coords().iter().all(|c| c.denom() <= 2)));

        let g = CharacterGroup::new(&case26(7)).unwrap();
        let all = g.enumerate().unwrap();
        assert_eq!(all.len(), 210);
        assert_eq!(all[0], CharacterVector::zero());
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 210);
    }

    #[test]
    fn l0_membership() {
        assert!(in_l0(&vec4([(1, 2), (1, 2), (0, 1), (0, 1)])));
        assert!(!in_l0(&vec4([(1, 12), (7, 12), (2, 3), (2, 3)])));
        assert!(in_l0(&CharacterVector::zero()));
    }

    #[test]
    fn lambda_membership() {
        assert!(in_lambda(&vec4([(1, 5), (1, 5), (1, 5), (2, 5)])).unwrap());
        assert!(!in_lambda(&vec4([(1, 2), (1, 2), (1, 2), (1, 2)])).unwrap());
        let x = vec4([(1, 12), (7, 12), (2, 3), (2, 3)]);
        for t in [1, 5, 7, 11] {
            assert_eq!(x.scale(t).fractional_sum(), 2);
        }
        assert!(!in_lambda(&x).unwrap());
        assert!(matches!(
            in_lambda(&vec4([(1, 2), (1, 2), (0, 1), (0, 1)])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lefschetz_values() {
        assert_eq!(lefschetz(&case26(7)).unwrap(), 164);
        assert_eq!(lefschetz(&DelsarteMatrix::fermat(6)).unwrap(), 20);
        assert_eq!(lefschetz_by_elements(&case26(7)).unwrap(), 164);
        assert_eq!(lefschetz_by_elements(&DelsarteMatrix::fermat(6)).unwrap(), 20);
    }

    #[test]
    fn topological_numbers() {
        assert_eq!(betti2(6), 106);
        assert_eq!(betti2(7), 187);
        assert_eq!(betti2(5), 53);
        assert_eq!(hodge11(6), 86);
        assert_eq!(hodge11(5), 45);
        assert_eq!(hodge11(4), 20);
        for n in 3..200 {
            let pg = (n - 1) * (n - 2) * (n - 3) / 6;
            assert_eq!(hodge11(n), betti2(n) - 2 * pg);
        }
    }

    #[test]
    fn picard_values() {
        assert_eq!(picard(&case26(7)).unwrap(), 23);
        assert_eq!(picard(&case26(16)).unwrap(), 48);
        let fermat = DelsarteMatrix::fermat(6);
        assert_eq!(picard(&fermat).unwrap(), 86);
        assert!(is_maximal(&fermat).unwrap());
        assert!(!is_maximal(&case26(7)).unwrap());
    }

    #[test]
    fn invalid_matrices() {
        let bad_degree = IntMatrix4([[5, 0, 0, 0], [0, 6, 0, 0], [0, 0, 6, 0], [0, 0, 0, 6]]);
        assert!(matches!(DelsarteMatrix::new(bad_degree, 6), Err(Error::InvalidMatrix(_))));
        let singular = IntMatrix4([[3, 3, 0, 0], [3, 3, 0, 0], [0, 0, 6, 0], [0, 0, 0, 6]]);
        assert_eq!(DelsarteMatrix::new(singular, 6), Err(Error::SingularMatrix));
        let negative = IntMatrix4([[7, -1, 0, 0], [0, 6, 0, 0], [0, 0, 6, 0], [0, 0, 0, 6]]);
        assert!(matches!(DelsarteMatrix::new(negative, 6), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn report_for_case26() {
        let r = picard_report(&case26(7)).unwrap();
        assert_eq!((r.order_l, r.order_l0, r.lefschetz, r.picard), (210, 35, 164, 23));
        assert_eq!(r.betti2, 187);
    }
}
