//! Degree-parametric Delsarte surfaces
//! `F = X^(n-2) M_x + Y^(n-2) M_y + Z^(n-2) M_z + U^(n-2) M_u`,
//! the reduction of all such candidates to those whose singularities are
//! rational double points, and the location of their singular points.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{perm_sign, permutations4, IntMatrix4};
use crate::character::DelsarteMatrix;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Smallest degree for which the catalog is uniform.
pub const MIN_DEGREE: i64 = 6;

pub const VARIABLES: [char; 4] = ['X', 'Y', 'Z', 'U'];

/// An exponent `n_coeff * n + offset`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolicExponent {
    pub n_coeff: i64,
    pub offset: i64,
}

impl SymbolicExponent {
    pub const fn constant(c: i64) -> Self {
        SymbolicExponent { n_coeff: 0, offset: c }
    }

    pub const fn n_plus(c: i64) -> Self {
        SymbolicExponent { n_coeff: 1, offset: c }
    }

    pub fn eval(self, n: i64) -> i64 {
        self.n_coeff * n + self.offset
    }

    pub fn as_poly(self) -> IntPoly {
        IntPoly::linear(self.n_coeff, self.offset)
    }

    /// True when the exponent is positive for every `n >= MIN_DEGREE`.
    pub fn is_positive(self) -> bool {
        self.n_coeff >= 0 && self.eval(MIN_DEGREE) > 0
    }
}

impl fmt::Display for SymbolicExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.n_coeff, self.offset);
        match (a, b) {
            (0, _) => write!(f, "{b}"),
            (_, 0) => match a {
                1 => f.write_str("n"),
                -1 => f.write_str("-n"),
                _ => write!(f, "{a}n"),
            },
            _ => {
                match a {
                    1 => f.write_str("n")?,
                    -1 => f.write_str("-n")?,
                    _ => write!(f, "{a}n")?,
                }
                write!(f, "{b:+}")
            }
        }
    }
}

impl FromStr for SymbolicExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse { line: 0, message: format!("bad affine form '{s}'") };
        let Some(pos) = s.find('n') else {
            return s.parse().map(SymbolicExponent::constant).map_err(|_| bad());
        };
        let a = match &s[..pos] {
            "" | "+" => 1,
            "-" => -1,
            t => t.parse().map_err(|_| bad())?,
        };
        let b = match &s[pos + 1..] {
            "" => 0,
            t if t.starts_with('+') || t.starts_with('-') => t.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        Ok(SymbolicExponent { n_coeff: a, offset: b })
    }
}

pub type SymbolicRows = [[SymbolicExponent; 4]; 4];

/// A degree-parametric Delsarte surface, one exponent row per monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolicSurface {
    rows: SymbolicRows,
}

impl SymbolicSurface {
    pub fn new(rows: SymbolicRows) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            let a: i64 = row.iter().map(|e| e.n_coeff).sum();
            let b: i64 = row.iter().map(|e| e.offset).sum();
            if a != 1 || b != 0 {
                return Err(Error::InvalidMatrix(format!("row {i} does not have total degree n")));
            }
            if row.iter().any(|e| e.n_coeff < 0 || e.eval(MIN_DEGREE) < 0) {
                return Err(Error::InvalidMatrix(format!("row {i} has a negative exponent")));
            }
        }
        let s = SymbolicSurface { rows };
        if let Some(j) = s.common_divisor() {
            return Err(Error::InvalidMatrix(format!("{} divides every monomial", VARIABLES[j])));
        }
        if !s.determinant_nonvanishing() {
            return Err(Error::SingularMatrix);
        }
        Ok(s)
    }

    /// The surface `X^n + Y^n + Z^n + U^n`.
    pub fn fermat() -> Self {
        let quad = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]];
        SymbolicSurface { rows: rows_from_quadratics(&quad) }
    }

    pub fn rows(&self) -> &SymbolicRows {
        &self.rows
    }

    pub fn instantiate(&self, n: i64) -> Result<DelsarteMatrix> {
        if n < 1 {
            return Err(Error::Precondition(format!("degree {n} < 1")));
        }
        let m = self.rows.map(|r| r.map(|e| e.eval(n)));
        let degree = u32::try_from(n).map_err(|_| Error::TooLarge(n.to_string()))?;
        DelsarteMatrix::new(IntMatrix4(m), degree)
    }

    /// Index of a variable dividing all four monomials.
    pub fn common_divisor(&self) -> Option<usize> {
        (0..4).find(|&j| self.rows.iter().all(|r| r[j].is_positive()))
    }

    pub fn determinant(&self) -> IntPoly {
        let mut det = IntPoly::zero();
        for p in permutations4() {
            let mut term = IntPoly::constant(perm_sign(&p) as i64);
            for (i, &j) in p.iter().enumerate() {
                term = &term * &self.rows[i][j].as_poly();
            }
            det = &det + &term;
        }
        det
    }

    /// True when the determinant has no integer root `n >= MIN_DEGREE`.
    pub fn determinant_nonvanishing(&self) -> bool {
        let det = self.determinant();
        match det.root_bound() {
            None => false,
            Some(bound) => (MIN_DEGREE..=bound.max(MIN_DEGREE)).all(|n| det.eval(n) != 0),
        }
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: [usize; 4]) -> Self {
        SymbolicSurface { rows: self.rows.map(|r| [r[perm[0]], r[perm[1]], r[perm[2]], r[perm[3]]]) }
    }

    fn sorted(mut self) -> Self {
        self.rows.sort();
        self
    }

    /// Least sorted row list over all 24 relabelings of the variables.
    pub fn canonical(&self) -> Self {
        permutations4()
            .iter()
            .map(|&p| self.permute_columns(p).sorted())
            .min()
            .expect("24 permutations")
    }

    /// For each variable `i`, the row `X_i^(n-2) M_i` and the exponents of
    /// `M_i`, when the surface has that shape.
    pub fn quadratic_parts(&self) -> Result<[(usize, [i64; 4]); 4]> {
        let mut out = [(usize::MAX, [0i64; 4]); 4];
        for (r, row) in self.rows.iter().enumerate() {
            let lead: Vec<usize> = (0..4).filter(|&j| row[j].n_coeff == 1).collect();
            let (&[i], true) = (lead.as_slice(), row.iter().all(|e| e.n_coeff == 0 || e.n_coeff == 1))
            else {
                return Err(Error::Precondition(format!("row {r} is not of the form X^(n-2)M")));
            };
            if out[i].0 != usize::MAX {
                return Err(Error::Precondition(format!("two rows lead with {}", VARIABLES[i])));
            }
            let mut m = [0i64; 4];
            for j in 0..4 {
                m[j] = if j == i { row[j].offset + 2 } else { row[j].offset };
            }
            if m.iter().any(|&e| e < 0) {
                return Err(Error::Precondition(format!("row {r} is not of the form X^(n-2)M")));
            }
            out[i] = (r, m);
        }
        Ok(out)
    }

    /// Singular points of the surface for every `n >= MIN_DEGREE`, sorted.
    pub fn singular_points(&self) -> Result<Vec<SingularPoint>> {
        let q = self.quadratic_parts()?;
        let m: [[i64; 4]; 4] = [q[0].1, q[1].1, q[2].1, q[3].1];
        let mut pts = Vec::new();
        for u in 0..4 {
            if m[u][u] == 0 {
                pts.push(SingularPoint::Corner { coordinate: u });
            }
        }
        for p in 0..4 {
            for qv in p + 1..4 {
                let others: Vec<usize> = (0..4).filter(|&i| i != p && i != qv).collect();
                let (r, s) = (others[0], others[1]);
                let rs = unit2(r, s);
                if m[p] == rs && m[qv] == rs {
                    return Err(Error::NonIsolatedSingularity(format!(
                        "{} = {} = 0 on {}",
                        VARIABLES[r], VARIABLES[s], self
                    )));
                }
                for t in [r, s] {
                    let (pt, qt) = (unit2(p, t), unit2(qv, t));
                    if (m[p] == pt || m[p] == qt) && (m[qv] == pt || m[qv] == qt) {
                        let a = -2 + i64::from(m[p] == pt);
                        let b = i64::from(m[qv] == pt);
                        pts.push(SingularPoint::Edge {
                            eta: p,
                            other: qv,
                            k: SymbolicExponent::n_plus(a - b),
                        });
                    }
                }
            }
        }
        pts.sort();
        Ok(pts)
    }

    /// The equation, e.g. `X^(n-2)YZ + ...`.
    pub fn equation(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                let mut s = String::new();
                for (j, e) in row.iter().enumerate() {
                    if *e == SymbolicExponent::constant(0) {
                        continue;
                    }
                    s.push(VARIABLES[j]);
                    if *e != SymbolicExponent::constant(1) {
                        if e.n_coeff == 0 || e.offset == 0 {
                            s.push_str(&format!("^{e}"));
                        } else {
                            s.push_str(&format!("^({e})"));
                        }
                    }
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn unit2(a: usize, b: usize) -> [i64; 4] {
    let mut v = [0; 4];
    v[a] += 1;
    v[b] += 1;
    v
}

impl fmt::Display for SymbolicSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{},{},{},{}", row[0], row[1], row[2], row[3])?;
        }
        Ok(())
    }
}

/// Parses `"n-2,1,1,0; 0,n-2,1,1; ..."` without the determinant and
/// divisibility checks of [`SymbolicSurface::new`].
pub fn parse_rows(s: &str) -> Result<SymbolicRows> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 4 {
        return Err(Error::Parse { line: 0, message: format!("expected 4 rows in '{s}'") });
    }
    let mut out = [[SymbolicExponent::constant(0); 4]; 4];
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 4 {
            return Err(Error::Parse { line: 0, message: format!("expected 4 entries in '{row}'") });
        }
        for (j, c) in cells.iter().enumerate() {
            out[i][j] = c.parse()?;
        }
    }
    Ok(out)
}

impl FromStr for SymbolicSurface {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SymbolicSurface::new(parse_rows(s)?)
    }
}

/// A singular point. Every singular point has at least two vanishing
/// coordinates; corners have exactly one nonzero coordinate, edge points
/// have two, `eta` and `1`, where `eta^k = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SingularPoint {
    Corner { coordinate: usize },
    Edge { eta: usize, other: usize, k: SymbolicExponent },
}

impl SingularPoint {
    /// Mask of coordinates that vanish at the point.
    pub fn zero_coordinates(&self) -> [bool; 4] {
        let mut z = [true; 4];
        match *self {
            SingularPoint::Corner { coordinate } => z[coordinate] = false,
            SingularPoint::Edge { eta, other, .. } => {
                z[eta] = false;
                z[other] = false;
            }
        }
        z
    }

    /// The same point with `eta` on the lower coordinate. Since the roots of
    /// `eta^k = -1` are closed under inversion, swapping the two nonzero
    /// coordinates keeps `k`.
    pub fn normalized(self) -> Self {
        match self {
            SingularPoint::Edge { eta, other, k } if eta > other => {
                SingularPoint::Edge { eta: other, other: eta, k }
            }
            p => p,
        }
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut c = ["0"; 4];
        match *self {
            SingularPoint::Corner { coordinate } => {
                c[coordinate] = "1";
                write!(f, "{}", c.join(":"))
            }
            SingularPoint::Edge { eta, other, k } => {
                c[eta] = "r";
                c[other] = "1";
                write!(f, "{} {k}", c.join(":"))
            }
        }
    }
}

impl FromStr for SingularPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, message: format!("bad point '{s}'") };
        let mut parts = s.split_whitespace();
        let coords: Vec<&str> = parts.next().ok_or_else(bad)?.split(':').collect();
        let k = parts.next();
        if coords.len() != 4 || parts.next().is_some() {
            return Err(bad());
        }
        let find = |t: &str| coords.iter().position(|c| *c == t);
        let count = |t: &str| coords.iter().filter(|c| **c == t).count();
        if count("0") + count("1") + count("r") != 4 {
            return Err(bad());
        }
        match (count("1"), count("r"), k) {
            (1, 0, None) => Ok(SingularPoint::Corner { coordinate: find("1").unwrap() }),
            (1, 1, Some(k)) => Ok(SingularPoint::Edge {
                eta: find("r").unwrap(),
                other: find("1").unwrap(),
                k: k.parse()?,
            }),
            _ => Err(bad()),
        }
    }
}

fn quadratic_monomials() -> Vec<[i64; 4]> {
    let mut out = Vec::with_capacity(10);
    for a in 0..4 {
        for b in a..4 {
            out.push(unit2(a, b));
        }
    }
    out
}

/// Admissible `M_i`: degree two, not the square of another variable.
pub fn slot_monomials(i: usize) -> Vec<[i64; 4]> {
    quadratic_monomials()
        .into_iter()
        .filter(|m| !(0..4).any(|j| j != i && m[j] == 2))
        .collect()
}

fn rows_from_quadratics(m: &[[i64; 4]; 4]) -> SymbolicRows {
    let mut rows = [[SymbolicExponent::constant(0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rows[i][j] = if i == j {
                SymbolicExponent::n_plus(m[i][j] - 2)
            } else {
                SymbolicExponent::constant(m[i][j])
            };
        }
    }
    rows
}

/// Every choice of `(M_x, M_y, M_z, M_u)`, unfiltered.
pub fn generate_candidates() -> Vec<SymbolicSurface> {
    let slots: Vec<Vec<[i64; 4]>> = (0..4).map(slot_monomials).collect();
    let mut out = Vec::with_capacity(2401);
    for a in &slots[0] {
        for b in &slots[1] {
            for c in &slots[2] {
                for d in &slots[3] {
                    out.push(SymbolicSurface { rows: rows_from_quadratics(&[*a, *b, *c, *d]) });
                }
            }
        }
    }
    out
}

/// Drops candidates divisible by a variable and keeps the canonical form of
/// the first member of each relabeling class, in input order.
pub fn dedupe_and_prune(candidates: &[SymbolicSurface]) -> Vec<SymbolicSurface> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for s in candidates {
        if s.common_divisor().is_some() {
            continue;
        }
        let c = s.canonical();
        if seen.insert(c, out.len()).is_none() {
            out.push(c);
        }
    }
    out
}

/// True when every coordinate point on the surface is at worst a rational
/// double point. At `(0:0:0:1)` with `M_u = XY` this holds exactly when
/// `M_z != XY`, and likewise under relabeling.
pub fn corners_are_ade(s: &SymbolicSurface) -> Result<bool> {
    let q = s.quadratic_parts()?;
    for u in 0..4 {
        let mu = q[u].1;
        if mu[u] != 0 {
            continue;
        }
        let r = (0..4).find(|&j| j != u && mu[j] == 0).expect("M_u has two variables besides u");
        if q[r].1 == mu {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn corner_ade_filter(surfaces: &[SymbolicSurface]) -> Result<Vec<SymbolicSurface>> {
    let mut out = Vec::with_capacity(surfaces.len());
    for s in surfaces {
        if corners_are_ade(s)? {
            out.push(*s);
        }
    }
    Ok(out)
}

/// Sizes of each stage of the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub candidates: usize,
    pub pruned: usize,
    pub survivors: Vec<SymbolicSurface>,
}

pub fn classify_surfaces() -> Result<Classification> {
    let candidates = generate_candidates();
    let pruned = dedupe_and_prune(&candidates);
    let survivors = corner_ade_filter(&pruned)?;
    for s in &survivors {
        if !s.determinant_nonvanishing() {
            return Err(Error::Internal(format!("surviving surface {s} has vanishing determinant")));
        }
    }
    Ok(Classification { candidates: candidates.len(), pruned: pruned.len(), survivors })
}

/// Pairs each surface with the reference entry equal to it up to relabeling.
/// Fails unless the correspondence is one-to-one.
pub fn match_by_relabeling(
    surfaces: &[SymbolicSurface],
    reference: &[(u32, SymbolicSurface)],
) -> Result<Vec<(u32, SymbolicSurface)>> {
    let mut by_form: HashMap<SymbolicSurface, u32> = HashMap::new();
    for (id, s) in reference {
        if let Some(prev) = by_form.insert(s.canonical(), *id) {
            return Err(Error::Internal(format!("entries {prev} and {id} coincide")));
        }
    }
    if surfaces.len() != reference.len() {
        return Err(Error::Internal(format!(
            "{} surfaces against {} reference entries",
            surfaces.len(),
            reference.len()
        )));
    }
    let mut out = Vec::with_capacity(surfaces.len());
    for s in surfaces {
        match by_form.remove(&s.canonical()) {
            Some(id) => out.push((id, *s)),
            None => return Err(Error::Internal(format!("no reference entry matches {s}"))),
        }
    }
    out.sort_by_key(|(id, _)| *id);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(s: &str) -> SymbolicSurface {
        s.parse().unwrap()
    }

    #[test]
    fn affine_forms() {
        for s in ["n", "n-2", "n+1", "0", "3", "-2", "2n-1"] {
            let e: SymbolicExponent = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert_eq!("n-3".parse::<SymbolicExponent>().unwrap().eval(7), 4);
        assert!("x".parse::<SymbolicExponent>().is_err());
        assert!("n2".parse::<SymbolicExponent>().is_err());
    }

    #[test]
    fn slots_have_seven_monomials() {
        for i in 0..4 {
            let m = slot_monomials(i);
            assert_eq!(m.len(), 7);
            assert!(m.iter().all(|q| q.iter().sum::<i64>() == 2));
        }
    }

    #[test]
    fn pipeline_counts() {
        let c = classify_surfaces().unwrap();
        assert_eq!((c.candidates, c.pruned, c.survivors.len()), (2401, 90, 83));
        let fermat = SymbolicSurface::fermat().canonical();
        assert_eq!(c.survivors.iter().filter(|s| **s == fermat).count(), 1);
    }

    #[test]
    fn excluded_squares_never_generated() {
        for s in generate_candidates() {
            let q = s.quadratic_parts().unwrap();
            for (i, (_, m)) in q.iter().enumerate() {
                assert!((0..4).all(|j| j == i || m[j] < 2));
            }
        }
    }

    #[test]
    fn symbolic_determinant() {
        let f = SymbolicSurface::fermat();
        assert_eq!(f.determinant().coeffs(), &[0, 0, 0, 0, 1]);
        let s = surface("n,0,0,0; 0,n,0,0; 0,0,n-1,1; 1,1,0,n-2");
        for n in 6..12 {
            assert_eq!(s.determinant().eval(n), s.instantiate(n).unwrap().determinant().try_into().unwrap());
        }
    }

    #[test]
    fn invalid_surfaces() {
        assert!(matches!(
            "n-1,1,0,0; 0,n-1,1,0; 0,1,n-1,0; 0,1,0,n-1".parse::<SymbolicSurface>(),
            Err(Error::InvalidMatrix(_))
        ));
        assert!("n-1,1,0,0; 0,n,0,0".parse::<SymbolicSurface>().is_err());
        assert!("n-1,2,0,0; 0,n,0,0; 0,0,n,0; 0,0,0,n".parse::<SymbolicSurface>().is_err());
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let s = surface("n-2,1,1,0; 0,n-2,1,1; 1,0,n-2,1; 1,1,0,n-2");
        for p in permutations4() {
            assert_eq!(s.permute_columns(p).canonical(), s.canonical());
        }
    }

    #[test]
    fn singular_points_of_examples() {
        let pts = |s: &str| -> Vec<String> {
            surface(s).singular_points().unwrap().iter().map(|p| p.normalized().to_string()).collect()
        };
        assert_eq!(
            pts("n-2,1,0,1; 0,n-2,1,1; 0,0,n,0; 0,1,0,n-1"),
            ["1:0:0:0", "0:1:0:0", "r:0:0:1 n-2"]
        );
        assert!(pts("n,0,0,0; 0,n,0,0; 0,0,n-1,1; 1,0,0,n-1").is_empty());
        assert_eq!(
            pts("n-2,1,1,0; 0,n-2,1,1; 1,0,n-2,1; 1,1,0,n-2"),
            ["1:0:0:0", "0:1:0:0", "0:0:1:0", "0:0:0:1"]
        );
        let e = surface("n-2,1,0,1; 1,n-2,0,1; 0,0,n,0; 1,0,0,n-1").singular_points().unwrap();
        assert!(e.contains(&"r:1:0:0 n-3".parse().unwrap()));
        assert!(e.contains(&"0:r:0:1 n-2".parse().unwrap()));
    }

    #[test]
    fn edge_normalization_keeps_k() {
        let p: SingularPoint = "1:0:0:r n-2".parse().unwrap();
        assert_eq!(p.normalized().to_string(), "r:0:0:1 n-2");
        assert_eq!(p.zero_coordinates(), [false, true, true, false]);
        assert!("1:1:0:0".parse::<SingularPoint>().is_err());
        assert!("r:0:0:1".parse::<SingularPoint>().is_err());
    }

    #[test]
    fn non_ade_corner_detected() {
        // M_u = XY and M_z = XY
        let s = surface("n,0,0,0; 0,n,0,0; 1,1,n-2,0; 1,1,0,n-2");
        assert!(!corners_are_ade(&s).unwrap());
    }

    #[test]
    fn equation_text() {
        let s = surface("n-2,1,1,0; 0,n-2,1,1; 1,0,n-2,1; 1,1,0,n-2");
        assert_eq!(s.equation(), "X^(n-2)YZ + Y^(n-2)ZU + XZ^(n-2)U + XYU^(n-2)");
    }
}
