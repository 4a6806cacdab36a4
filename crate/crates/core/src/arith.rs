//! Exact arithmetic in Q/Z and the small integer linear algebra the rest of
//! the crate is built on.
//!
//! Elements of Q/Z are stored as canonical fractions `p/q` with `0 <= p < q`
//! and `gcd(p, q) = 1`, so equality and hashing are structural. Determinants,
//! inverses and lattice normal forms use arbitrary precision integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element of Q/Z in canonical reduced form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalMod1 {
    num: u64,
    den: u64,
}

impl RationalMod1 {
    pub const ZERO: RationalMod1 = RationalMod1 { num: 0, den: 1 };

    /// Canonical representative of `p/q` modulo 1.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        Self::from_i128(p as i128, q as i128)
    }

    pub fn from_i128(p: i128, q: i128) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let r = p.rem_euclid(q);
        let g = r.gcd(&q);
        let den = u64::try_from(q / g)
            .map_err(|_| Error::TooLarge(format!("denominator of {p}/{q}")))?;
        Ok(RationalMod1 { num: (r / g) as u64, den })
    }

    /// `c / d` for `0 <= c < d`; reduces by the gcd.
    pub fn from_residue(c: u64, d: u64) -> Self {
        debug_assert!(d > 0 && c < d);
        let g = c.gcd(&d);
        RationalMod1 { num: c / g, den: d / g }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The representative in `[0, 1)`.
    pub fn fr(&self) -> Ratio<u64> {
        Ratio::new_raw(self.num, self.den)
    }

    /// Order in the additive group Q/Z.
    pub fn ord_plus(&self) -> u64 {
        self.den
    }

    /// `k * self` modulo 1.
    pub fn scale(&self, k: i64) -> Self {
        let den = self.den as i128;
        let r = ((k as i128).rem_euclid(den) * self.num as i128) % den;
        RationalMod1::from_residue(r as u64, self.den)
    }

    /// Numerator after rescaling to the denominator `d`; `d` must be a
    /// multiple of the order.
    pub fn residue_over(&self, d: u64) -> u64 {
        debug_assert_eq!(d % self.den, 0);
        self.num * (d / self.den)
    }
}

/// Canonical representative of `p/q` mod 1.
pub fn reduce_mod1(p: i64, q: i64) -> Result<RationalMod1> {
    RationalMod1::new(p, q)
}

/// The natural bijection Q/Z -> [0, 1).
pub fn fr(x: RationalMod1) -> Ratio<u64> {
    x.fr()
}

pub fn ord_plus(x: RationalMod1) -> u64 {
    x.ord_plus()
}

impl Default for RationalMod1 {
    fn default() -> Self {
        RationalMod1::ZERO
    }
}

impl Add for RationalMod1 {
    type Output = RationalMod1;

    fn add(self, rhs: RationalMod1) -> RationalMod1 {
        let l = self.den.lcm(&rhs.den) as u128;
        let s = (self.num as u128 * (l / self.den as u128)
            + rhs.num as u128 * (l / rhs.den as u128))
            % l;
        let g = s.gcd(&l);
        RationalMod1 {
            num: (s / g) as u64,
            den: u64::try_from(l / g).expect("denominator overflow in Q/Z addition"),
        }
    }
}

impl Neg for RationalMod1 {
    type Output = RationalMod1;

    fn neg(self) -> RationalMod1 {
        if self.num == 0 {
            self
        } else {
            RationalMod1 { num: self.den - self.num, den: self.den }
        }
    }
}

impl Sub for RationalMod1 {
    type Output = RationalMod1;

    fn sub(self, rhs: RationalMod1) -> RationalMod1 {
        self + (-rhs)
    }
}

impl Mul<RationalMod1> for i64 {
    type Output = RationalMod1;

    fn mul(self, rhs: RationalMod1) -> RationalMod1 {
        rhs.scale(self)
    }
}

impl Ord for RationalMod1 {
    /// Numeric order of the representatives in `[0, 1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs).then(self.den.cmp(&other.den))
    }
}

impl PartialOrd for RationalMod1 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for RationalMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RationalMod1 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, message: format!("not a fraction: {s:?}") };
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                RationalMod1::new(p, q)
            }
            None => {
                let p: i64 = s.parse().map_err(|_| bad())?;
                RationalMod1::new(p, 1)
            }
        }
    }
}

/// A 4x4 integer matrix; rows are exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix4(pub [[i64; 4]; 4]);

impl IntMatrix4 {
    pub fn identity() -> Self {
        let mut m = [[0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        IntMatrix4(m)
    }

    pub fn diagonal(d: [i64; 4]) -> Self {
        let mut m = [[0; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        IntMatrix4(m)
    }

    pub fn rows(&self) -> &[[i64; 4]; 4] {
        &self.0
    }

    /// Reorders columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: [usize; 4]) -> Self {
        let mut m = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.0[i][perm[j]];
            }
        }
        IntMatrix4(m)
    }
}

/// All 24 permutations of `0..4` in lexicographic order.
pub fn permutations4() -> [[usize; 4]; 24] {
    let mut out = [[0; 4]; 24];
    let mut k = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out[k] = [a, b, c, d];
                        k += 1;
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn perm_sign(p: &[usize; 4]) -> i32 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact determinant by the Leibniz expansion.
pub fn det4(a: &IntMatrix4) -> BigInt {
    let mut det = BigInt::zero();
    for p in permutations4() {
        let mut term = BigInt::from(perm_sign(&p));
        for (i, &j) in p.iter().enumerate() {
            term *= a.0[i][j];
        }
        det += term;
    }
    det
}

/// A 4x4 matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix4(pub [[BigRational; 4]; 4]);

impl RationalMatrix4 {
    pub fn row(&self, i: usize) -> &[BigRational; 4] {
        &self.0[i]
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[i64; 4]) -> [BigRational; 4] {
        std::array::from_fn(|j| {
            (0..4).fold(BigRational::zero(), |acc, i| {
                acc + BigRational::from_integer(BigInt::from(v[i])) * &self.0[i][j]
            })
        })
    }

    pub fn mul_int(&self, rhs: &IntMatrix4) -> RationalMatrix4 {
        RationalMatrix4(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..4).fold(BigRational::zero(), |acc, k| {
                    acc + &self.0[i][k] * BigRational::from_integer(BigInt::from(rhs.0[k][j]))
                })
            })
        }))
    }

    pub fn is_identity(&self) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| {
                if i == j {
                    self.0[i][j].is_one()
                } else {
                    self.0[i][j].is_zero()
                }
            })
        })
    }
}

/// Exact inverse by Gauss-Jordan elimination over Q.
pub fn inverse_rational(a: &IntMatrix4) -> Result<RationalMatrix4> {
    let mut m: [[BigRational; 8]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let v = if j < 4 {
                a.0[i][j]
            } else if j - 4 == i {
                1
            } else {
                0
            };
            BigRational::from_integer(BigInt::from(v))
        })
    });
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !m[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in 0..8 {
                    let delta = &factor * &m[col][j];
                    m[r][j] -= delta;
                }
            }
        }
    }
    Ok(RationalMatrix4(std::array::from_fn(|i| {
        std::array::from_fn(|j| m[i][j + 4].clone())
    })))
}

/// A full-rank sublattice of Z^3 given by three basis rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice3 {
    rows: [[BigInt; 3]; 3],
}

impl IntLattice3 {
    pub fn new(rows: [[BigInt; 3]; 3]) -> Self {
        IntLattice3 { rows }
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        IntLattice3 {
            rows: rows.map(|r| r.map(BigInt::from)),
        }
    }

    pub fn rows(&self) -> &[[BigInt; 3]; 3] {
        &self.rows
    }

    pub fn to_i64(&self) -> Option<[[i64; 3]; 3]> {
        let mut out = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.rows[i][j].to_i64()?;
            }
        }
        Some(out)
    }

    pub fn determinant(&self) -> BigInt {
        let r = &self.rows;
        &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
            - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
            + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0])
    }

    /// Whether `v` lies in the lattice. Uses the normal form, so it is exact.
    pub fn contains(&self, v: &[BigInt; 3]) -> Result<bool> {
        let h = hnf(self)?;
        let r = reduce_by_hnf(&h, v.clone());
        Ok(r.iter().all(Zero::is_zero))
    }
}

fn sub_scaled(row: &mut [BigInt], pivot: &[BigInt], q: &BigInt) {
    for (x, p) in row.iter_mut().zip(pivot) {
        *x -= q * p;
    }
}

/// Lower-triangular Hermite normal form of a full-rank 3x3 lattice basis.
///
/// Output rows are `(a,0,0), (b,c,0), (d,e,f)` with `a,c,f > 0`,
/// `0 <= b,d < a` and `0 <= e < c`. Two bases span the same lattice iff their
/// normal forms are equal.
pub fn hnf(lattice: &IntLattice3) -> Result<IntLattice3> {
    let mut rows: Vec<Vec<BigInt>> = lattice.rows.iter().map(|r| r.to_vec()).collect();
    for col in (0..3).rev() {
        loop {
            let pivot = (0..=col)
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(p) = pivot else {
                return Err(Error::DependentBasis);
            };
            rows.swap(p, col);
            let mut clear = true;
            for r in 0..col {
                if !rows[r][col].is_zero() {
                    let q = rows[r][col].div_floor(&rows[col][col]);
                    let pivot_row = rows[col].clone();
                    sub_scaled(&mut rows[r], &pivot_row, &q);
                    clear &= rows[r][col].is_zero();
                }
            }
            if clear {
                break;
            }
        }
        if rows[col][col].is_negative() {
            for x in rows[col].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    // reduce entries below the diagonal modulo the diagonal of their column
    for r in 1..3 {
        for col in (0..r).rev() {
            let q = rows[r][col].div_floor(&rows[col][col]);
            if !q.is_zero() {
                let pivot_row = rows[col].clone();
                sub_scaled(&mut rows[r], &pivot_row, &q);
            }
        }
    }
    Ok(IntLattice3 {
        rows: std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].clone())),
    })
}

/// Reduces `v` to its canonical coset representative modulo a lattice in
/// lower-triangular normal form.
pub fn reduce_by_hnf(h: &IntLattice3, mut v: [BigInt; 3]) -> [BigInt; 3] {
    for col in (0..3).rev() {
        let q = v[col].div_floor(&h.rows[col][col]);
        if !q.is_zero() {
            for j in 0..3 {
                v[j] -= &q * &h.rows[col][j];
            }
        }
    }
    v
}

/// Index of the lattice in Z^3.
pub fn lattice_index(lattice: &IntLattice3) -> BigInt {
    lattice.determinant().abs()
}

/// Integer row echelon form (upper, pivots left to right, positive pivots).
/// Returns the rank.
pub(crate) fn row_echelon(rows: &mut [Vec<BigInt>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (rank..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(p) = pivot else { break };
            found = true;
            rows.swap(rank, p);
            let mut clear = true;
            for r in rank + 1..rows.len() {
                if !rows[r][col].is_zero() {
                    let q = rows[r][col].div_floor(&rows[rank][col]);
                    let pivot_row = rows[rank].clone();
                    sub_scaled(&mut rows[r], &pivot_row, &q);
                    clear &= rows[r][col].is_zero();
                }
            }
            if clear {
                break;
            }
        }
        if found {
            if rows[rank][col].is_negative() {
                for x in rows[rank].iter_mut() {
                    *x = -x.clone();
                }
            }
            rank += 1;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> RationalMod1 {
        RationalMod1::new(p, d).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod1(7, 4).unwrap(), q(3, 4));
        assert_eq!(reduce_mod1(-1, 3).unwrap(), q(2, 3));
        let z = reduce_mod1(6, 3).unwrap();
        assert_eq!((z.numer(), z.denom()), (0, 1));
        assert_eq!(reduce_mod1(1, 0), Err(Error::DivisionByZero));
        assert_eq!(reduce_mod1(1, -3).unwrap(), q(2, 3));
    }

    #[test]
    fn fr_and_order() {
        assert_eq!(fr(q(3, 4)), Ratio::new(3, 4));
        assert_eq!(fr(RationalMod1::ZERO), Ratio::new(0, 1));
        let total = fr(q(1, 12)) + fr(q(7, 12)) + fr(q(2, 3)) + fr(q(2, 3));
        assert_eq!(total, Ratio::from_integer(2));
        assert_eq!(ord_plus(q(1, 2)), 2);
        assert_eq!(ord_plus(RationalMod1::ZERO), 1);
        assert_eq!(ord_plus(q(19, 24)), 24);
    }

    #[test]
    fn parse_and_display() {
        let x: RationalMod1 = "19/24".parse().unwrap();
        assert_eq!(x.to_string(), "19/24");
        assert_eq!("-1/2".parse::<RationalMod1>().unwrap(), q(1, 2));
        assert!("a/b".parse::<RationalMod1>().is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(det4(&IntMatrix4::identity()), BigInt::from(1));
        assert_eq!(det4(&IntMatrix4::diagonal([6; 4])), BigInt::from(1296));
        let n = 7;
        let case26 = IntMatrix4([[n, 0, 0, 0], [0, n, 0, 0], [0, 0, n - 1, 1], [1, 1, 0, n - 2]]);
        assert_eq!(det4(&case26), BigInt::from(1470));
    }

    #[test]
    fn inverses() {
        let inv = inverse_rational(&IntMatrix4::diagonal([5; 4])).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { BigRational::new(1.into(), 5.into()) } else { BigRational::zero() };
                assert_eq!(inv.0[i][j], expected);
            }
        }
        assert!(inverse_rational(&IntMatrix4::identity()).unwrap().is_identity());
        let singular = IntMatrix4([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(inverse_rational(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn case26_third_generator_before_reduction() {
        // e3 * A^{-1} for the matrix rows n,0,0,0 / 0,n,0,0 / 0,0,n-1,1 / 1,1,0,n-2
        for n in [6i64, 7, 11, 16] {
            let a = IntMatrix4([[n, 0, 0, 0], [0, n, 0, 0], [0, 0, n - 1, 1], [1, 1, 0, n - 2]]);
            let inv = inverse_rational(&a).unwrap();
            assert!(inv.mul_int(&a).is_identity());
            let u = inv.left_mul(&[0, 0, 1, -1]);
            let r = |p: i64, d: i64| BigRational::new(p.into(), d.into());
            let m = (n - 1) * (n - 2);
            assert_eq!(u, [r(1, m), r(1, m), r(1, n - 1), r(-n, m)]);
        }
    }

    #[test]
    fn hnf_examples() {
        let tri = IntLattice3::from_i64([[5, 0, 0], [1, 3, 0], [2, 2, 2]]);
        assert_eq!(hnf(&tri).unwrap(), tri);
        let permuted = IntLattice3::from_i64([[0, 0, 2], [0, 3, 0], [5, 0, 0]]);
        assert_eq!(
            hnf(&permuted).unwrap(),
            IntLattice3::from_i64([[5, 0, 0], [0, 3, 0], [0, 0, 2]])
        );
        let dependent = IntLattice3::from_i64([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(hnf(&dependent), Err(Error::DependentBasis));
    }

    #[test]
    fn lattice_indices() {
        assert_eq!(lattice_index(&IntLattice3::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])), BigInt::from(1));
        assert_eq!(lattice_index(&IntLattice3::from_i64([[2, 0, 0], [0, 3, 0], [0, 0, 7]])), BigInt::from(42));
    }

    #[test]
    fn echelon_rank() {
        let mut rows: Vec<Vec<BigInt>> = [[2, 4, 6], [1, 2, 3], [0, 0, 5]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(row_echelon(&mut rows), 2);
    }

    #[test]
    fn permutations_are_distinct() {
        let perms = permutations4();
        let set: std::collections::HashSet<_> = perms.iter().collect();
        assert_eq!(set.len(), 24);
        assert_eq!(perms[0], [0, 1, 2, 3]);
    }
}
